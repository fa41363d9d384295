#include "sentinf/parameters.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace sentinf {

ParameterStore::ParameterStore(std::size_t users, std::size_t classes, std::size_t dim)
    : users_(users), classes_(classes), dim_(dim), values_(2 * users * classes * dim, 0.0) {
  if (classes == 0 || dim == 0) throw ConfigError("parameter store needs K >= 1 and D >= 1");
}

ParameterStore ParameterStore::random(std::size_t users, std::size_t classes, std::size_t dim,
                                      std::uint64_t seed, double scale) {
  ParameterStore store(users, classes, dim);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, scale / static_cast<double>(dim));
  for (auto& v : store.values_) v = uniform(rng);
  return store;
}

double ParameterStore::min_entry() const {
  if (values_.empty()) return std::numeric_limits<double>::infinity();
  return *std::min_element(values_.begin(), values_.end());
}

}  // namespace sentinf
