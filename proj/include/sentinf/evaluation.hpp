#ifndef SENTINF_EVALUATION_HPP
#define SENTINF_EVALUATION_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sentinf/cascade.hpp"
#include "sentinf/survival.hpp"

namespace sentinf {

// --- rank metrics ---------------------------------------------------------

/// Probability that a random positive outscores a random negative, ties 1/2.
double auc(std::span<const double> positives, std::span<const double> negatives);

/// 1-based rank of `truth` among `truth` and `others`, counting every other
/// score >= truth ahead of it (worst-rank tie breaking).
std::size_t worst_rank(double truth, std::span<const double> others);

double mean_reciprocal_rank(std::span<const std::size_t> ranks);

/// Mean of |predicted - truth| / truth.
double mape(std::span<const double> truth, std::span<const double> predicted);

// --- tasks ----------------------------------------------------------------

struct PcdOptions {
  double epsilon = 1e-6;  // negatives are scored at t_N + epsilon
  bool pooled_auc = false;
  std::size_t threads = 1;
};

struct PcdResult {
  double auc = 0.0;
  double mrr = 0.0;
  std::size_t auc_cascades = 0;
  std::size_t skipped_cascades = 0;  // no negatives or no positives
  std::size_t ranked_events = 0;
};

/// Predicting cascade dynamics: AUC of infected vs never-infected users and
/// MRR of the infected user among all not-yet-infected users at each event.
PcdResult evaluate_pcd(std::span<const Cascade> cascades, const TransmissionModel& model,
                       const PcdOptions& options = {});

struct WbrResult {
  double accuracy = 0.0;
  double mrr = 0.0;
  std::size_t scored = 0;
  std::size_t missing_parent = 0;   // no ground truth for the event
  std::size_t invalid_parent = 0;   // parent not infected strictly earlier
  std::size_t no_candidates = 0;
};

/// Who will be retweeted: rank earlier-infected users by f(t_i | t_j).
WbrResult evaluate_wbr(std::span<const Cascade> cascades, const ParentMap& parents,
                       const TransmissionModel& model);

struct CspOptions {
  std::size_t seeds = 10;        // P, initially observed users
  std::size_t simulations = 100;
  std::size_t scales = 50;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
};

struct CspResult {
  double mape = 0.0;
  std::size_t evaluated = 0;
  std::size_t excluded = 0;  // N <= P or t_N <= t_P
  std::vector<double> truth;
  std::vector<double> predicted;
};

/// Cascade size prediction by Monte-Carlo simulation from the first P users.
CspResult evaluate_csp(std::span<const Cascade> cascades, const TransmissionModel& model,
                       const CspOptions& options = {});

/// Mean simulated final size of one cascade seeded with its first P events.
double predict_cascade_size(const Cascade& cascade, const TransmissionModel& model,
                            const CspOptions& options);

// --- cross validation -----------------------------------------------------

struct Fold {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Deterministic shuffled partition of [0, n) into k near-equal test groups.
std::vector<Fold> kfold_split(std::size_t n, std::size_t k, std::uint64_t seed);

struct MetricSummary {
  std::vector<double> per_fold;
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation, 0 for fewer than two folds
};

MetricSummary summarize(std::vector<double> per_fold);

struct EvalReport {
  std::string task;
  std::string model;
  std::vector<std::pair<std::string, MetricSummary>> metrics;
  std::map<std::string, std::size_t> counters;  // exclusions and sizes
};

}  // namespace sentinf

#endif  // SENTINF_EVALUATION_HPP
