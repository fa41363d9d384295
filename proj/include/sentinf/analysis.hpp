#ifndef SENTINF_ANALYSIS_HPP
#define SENTINF_ANALYSIS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "sentinf/baselines.hpp"
#include "sentinf/parameters.hpp"

namespace sentinf {

struct NormRow {
  UserIndex user;
  SentimentClass sentiment;
  double influence_l1;
  double susceptibility_l1;
};

/// One row per (user, sentiment class), users outer.
std::vector<NormRow> export_norms(const ParameterStore& params);

struct RateRow {
  UserIndex src;
  UserIndex dst;
  double phi;
  double baseline;
};

/// Rates for all ordered pairs (src != dst), or for `sample` pairs drawn
/// uniformly without replacement with `seed`. Rows sorted by (src, dst).
std::vector<RateRow> export_rates(const ParameterStore& params, const PairwiseRates& baseline,
                                  SentimentClass sentiment,
                                  std::optional<std::size_t> sample = std::nullopt,
                                  std::uint64_t seed = 1);

/// CSV with header `user,sentiment,influence_l1,susceptibility_l1`.
void write_norms_csv(std::ostream& out, const std::vector<NormRow>& rows);
/// CSV with header `src,dst,phi,baseline_rate`.
void write_rates_csv(std::ostream& out, const std::vector<RateRow>& rows);

}  // namespace sentinf

#endif  // SENTINF_ANALYSIS_HPP
