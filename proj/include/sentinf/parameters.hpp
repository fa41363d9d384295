#ifndef SENTINF_PARAMETERS_HPP
#define SENTINF_PARAMETERS_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "sentinf/cascade.hpp"

namespace sentinf {

/// Sparse gradient or update, keyed by parameter row index.
using SparseRows = std::map<std::size_t, std::vector<double>>;

/// Per-user non-negative K x D influence and susceptibility matrices.
///
/// All values live in one flat buffer: the influence block (M*K rows of
/// width D) followed by the susceptibility block. A "row" is one user's
/// representation for one sentiment class, which is the unit the optimizer
/// updates. The store is a plain value; training mutates a private copy, so
/// concurrent readers of a given instance never observe partial updates.
class ParameterStore {
 public:
  ParameterStore() = default;
  ParameterStore(std::size_t users, std::size_t classes, std::size_t dim);

  /// Entries i.i.d. uniform on [0, scale/D].
  static ParameterStore random(std::size_t users, std::size_t classes, std::size_t dim,
                               std::uint64_t seed, double scale = 0.1);

  std::size_t users() const { return users_; }
  std::size_t classes() const { return classes_; }
  std::size_t dim() const { return dim_; }

  std::span<const double> influence(UserIndex user, SentimentClass k) const {
    return {values_.data() + influence_row(user, k) * dim_, dim_};
  }
  std::span<double> influence(UserIndex user, SentimentClass k) {
    return {values_.data() + influence_row(user, k) * dim_, dim_};
  }
  std::span<const double> susceptibility(UserIndex user, SentimentClass k) const {
    return {values_.data() + susceptibility_row(user, k) * dim_, dim_};
  }
  std::span<double> susceptibility(UserIndex user, SentimentClass k) {
    return {values_.data() + susceptibility_row(user, k) * dim_, dim_};
  }

  std::size_t influence_row(UserIndex user, SentimentClass k) const {
    return std::size_t{user} * classes_ + k;
  }
  std::size_t susceptibility_row(UserIndex user, SentimentClass k) const {
    return users_ * classes_ + std::size_t{user} * classes_ + k;
  }
  std::size_t row_count() const { return 2 * users_ * classes_; }

  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  double min_entry() const;

  bool operator==(const ParameterStore&) const = default;

 private:
  std::size_t users_ = 0;
  std::size_t classes_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> values_;
};

}  // namespace sentinf

#endif  // SENTINF_PARAMETERS_HPP
