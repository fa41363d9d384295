#ifndef SENTINF_TESTS_FIXTURES_HPP
#define SENTINF_TESTS_FIXTURES_HPP

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "sentinf/cascade.hpp"
#include "sentinf/parameters.hpp"
#include "sentinf/sampler.hpp"

namespace fixtures {

using sentinf::Cascade;
using sentinf::UserIndex;

inline sentinf::ParameterStore random_params(std::size_t users, std::size_t classes,
                                             std::size_t dim, sentinf::Rng& rng,
                                             double lo = 0.05, double hi = 1.0) {
  sentinf::ParameterStore p(users, classes, dim);
  std::uniform_real_distribution<double> u(lo, hi);
  for (auto& x : p.values()) x = u(rng);
  return p;
}

/// `n` distinct users with strictly increasing times, horizon after the last.
inline Cascade random_cascade(std::size_t users, std::size_t classes, std::size_t n,
                              sentinf::Rng& rng, const std::string& id = "c") {
  std::vector<UserIndex> all(users);
  std::iota(all.begin(), all.end(), UserIndex{0});
  std::shuffle(all.begin(), all.end(), rng);
  std::uniform_real_distribution<double> gap(0.1, 2.0);
  Cascade c;
  c.id = id;
  c.sentiment = static_cast<sentinf::SentimentClass>(
      std::uniform_int_distribution<std::size_t>(0, classes - 1)(rng));
  double t = gap(rng);
  for (std::size_t i = 0; i < n; ++i) {
    c.events.push_back({all[i], t});
    t += gap(rng);
  }
  c.horizon = t;
  return c;
}

/// `count` distinct users not infected in `c`.
inline std::vector<UserIndex> outside(const Cascade& c, std::size_t users, std::size_t count,
                                      sentinf::Rng& rng) {
  std::vector<UserIndex> free;
  for (UserIndex u = 0; u < users; ++u) {
    if (!c.contains(u)) free.push_back(u);
  }
  std::shuffle(free.begin(), free.end(), rng);
  free.resize(std::min(count, free.size()));
  return free;
}

inline Cascade make_cascade(std::string id, std::vector<sentinf::Event> events, double horizon,
                            sentinf::SentimentClass sentiment = 0) {
  Cascade c;
  c.id = std::move(id);
  c.sentiment = sentiment;
  c.events = std::move(events);
  c.horizon = horizon;
  return c;
}

}  // namespace fixtures

#endif  // SENTINF_TESTS_FIXTURES_HPP
