#ifndef SENTINF_BASELINES_HPP
#define SENTINF_BASELINES_HPP

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sentinf/cascade.hpp"
#include "sentinf/optimizer.hpp"
#include "sentinf/survival.hpp"
#include "sentinf/trainer.hpp"

namespace sentinf {

/// Sparse pairwise rates (src, dst) -> value; unobserved pairs read as 0.
class PairwiseRates {
 public:
  double get(UserIndex src, UserIndex dst) const;
  void set(UserIndex src, UserIndex dst, double value) { rates_[key(src, dst)] = value; }
  bool contains(UserIndex src, UserIndex dst) const { return rates_.count(key(src, dst)) != 0; }
  std::size_t size() const { return rates_.size(); }

  struct Entry {
    UserIndex src;
    UserIndex dst;
    double rate;
    bool operator==(const Entry&) const = default;
  };
  /// Entries sorted by (src, dst).
  std::vector<Entry> entries() const;

  bool operator==(const PairwiseRates&) const = default;

 private:
  static std::uint64_t key(UserIndex src, UserIndex dst) {
    return (static_cast<std::uint64_t>(src) << 32) | dst;
  }
  std::unordered_map<std::uint64_t, double> rates_;
};

/// Denominator used for CT Bernoulli trials.
enum class BernoulliTrials {
  kInfluencerCascades,  // cascades in which the source is infected
  kCoOccurrence,        // cascades in which both source and target are infected
};

/// P0(j, i) = #cascades with j strictly before i / #trials of j.
PairwiseRates fit_ct_bernoulli(const std::vector<Cascade>& cascades,
                               BernoulliTrials trials = BernoulliTrials::kInfluencerCascades);

/// P0(j, i) = #cascades with j strictly before i / #cascades containing j or i.
PairwiseRates fit_ct_jaccard(const std::vector<Cascade>& cascades);

/// Survival likelihood with a free parameter a >= 0 per ordered pair and
/// phi = 1 - exp(-a). Row r of theta (width 1) belongs to pairs()[r]; pairs
/// not listed have rate 0.
class NetRateObjective : public BatchObjective {
 public:
  explicit NetRateObjective(std::vector<std::pair<UserIndex, UserIndex>> pairs);

  const std::vector<std::pair<UserIndex, UserIndex>>& pairs() const { return pairs_; }
  std::size_t row_width() const override { return 1; }
  double cascade_value(const Cascade& cascade, std::span<const UserIndex> negatives,
                       std::span<const double> theta, SparseRows* grad) const override;

 private:
  std::vector<std::pair<UserIndex, UserIndex>> pairs_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

struct NetRateResult {
  PairwiseRates rates;
  std::vector<EpochLog> log;
};

/// Free per-pair transmission rates phi = 1 - exp(-a), a >= 0, fitted on the
/// survival likelihood with the projected Adadelta trainer. Only pairs that
/// appear in `init` or in a strict j-before-i order in training stay
/// trainable; all others remain 0.
NetRateResult fit_netrate(const Dataset& dataset, const PairwiseRates& init,
                          const TrainerConfig& config);

/// Hazard-equivalent score P0 / (t - t_src + 1).
double score_pairwise(const PairwiseRates& rates, UserIndex src, UserIndex dst, double t,
                      double t_src);

/// Sentiment-blind rate source backed by PairwiseRates.
class PairwiseModel : public TransmissionModel {
 public:
  PairwiseModel(PairwiseRates rates, std::size_t users)
      : rates_(std::move(rates)), users_(users) {}

  std::size_t users() const override { return users_; }
  double rate(UserIndex src, UserIndex dst, SentimentClass) const override {
    return rates_.get(src, dst);
  }
  const PairwiseRates& rates() const { return rates_; }

 private:
  PairwiseRates rates_;
  std::size_t users_;
};

}  // namespace sentinf

#endif  // SENTINF_BASELINES_HPP
