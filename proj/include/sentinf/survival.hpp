#ifndef SENTINF_SURVIVAL_HPP
#define SENTINF_SURVIVAL_HPP

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sentinf/cascade.hpp"
#include "sentinf/parameters.hpp"

namespace sentinf {

/// Lower bound applied to the summed hazard before taking its logarithm.
inline constexpr double kHazardFloor = 1e-12;

/// phi = 1 - exp(-<influence_row, susceptibility_row>), in [0, 1) for
/// non-negative rows.
double transmission_rate(std::span<const double> influence_row,
                         std::span<const double> susceptibility_row);

/// Rate from `src` to `dst` for sentiment class `k`.
double transmission_rate(const ParameterStore& params, UserIndex src, UserIndex dst,
                         SentimentClass k);

/// phi / (t - t_src + 1) once the source is infected, 0 before.
double hazard(double phi, double t, double t_src);

/// ln S(t | t_src) = -phi * ln(t - t_src + 1). Requires t >= t_src.
double log_survivor(double phi, double t, double t_src);

/// Density f(t | t_src) = hazard * survivor for a single source.
double infection_density(double phi, double t, double t_src);

/// Source of pairwise transmission rates. The latent model, the pairwise
/// baselines and NetRate all plug into the same likelihood and evaluation
/// formulas through this interface.
class TransmissionModel {
 public:
  virtual ~TransmissionModel() = default;
  virtual std::size_t users() const = 0;
  virtual double rate(UserIndex src, UserIndex dst, SentimentClass k) const = 0;
};

/// Non-owning view of a ParameterStore, optionally restricted to the pairs
/// of an adjacency mask (rate 0 elsewhere).
class LatentModel : public TransmissionModel {
 public:
  explicit LatentModel(const ParameterStore& params, const AdjacencyMask* mask = nullptr)
      : params_(&params), mask_(mask) {}

  std::size_t users() const override { return params_->users(); }
  double rate(UserIndex src, UserIndex dst, SentimentClass k) const override;

  const ParameterStore& params() const { return *params_; }
  const AdjacencyMask* mask() const { return mask_; }

 private:
  const ParameterStore* params_;
  const AdjacencyMask* mask_;
};

/// Likelihood of the event at (0-based) index `i` given all strictly earlier
/// events: [sum_j hazard_ji] * prod_k S_ki, with the hazard sum floored.
double event_likelihood(const Cascade& cascade, std::size_t i, const TransmissionModel& model);
double event_likelihood(const Cascade& cascade, std::size_t i, const ParameterStore& params);

/// Unfloored counterpart used for ranking: the density of `dst` becoming
/// infected at time `t` given every event of `cascade` strictly before `t`.
double infection_likelihood_at(const Cascade& cascade, UserIndex dst, double t,
                               const TransmissionModel& model);

/// Log-likelihood of one cascade including the survival of `negatives` to the
/// horizon. Negatives may repeat but must not be infected in the cascade.
double cascade_log_likelihood(const Cascade& cascade, const TransmissionModel& model,
                              std::span<const UserIndex> negatives);
double cascade_log_likelihood(const Cascade& cascade, const ParameterStore& params,
                              std::span<const UserIndex> negatives);

/// Sampled negative users keyed by cascade id.
using NegativeSets = std::map<std::string, std::vector<UserIndex>>;

struct ObjectiveValue {
  double total = 0.0;
  std::vector<double> contributions;
};

/// -sum of cascade log-likelihoods over the trainable cascades of `dataset`.
ObjectiveValue objective(const Dataset& dataset, const TransmissionModel& model,
                         const NegativeSets& negatives);
ObjectiveValue objective(const Dataset& dataset, const ParameterStore& params,
                         const NegativeSets& negatives);

/// Gradient of the negative log-likelihood of one cascade. Only row
/// `sentiment` of a user's matrices can be non-zero, so rows are stored
/// sparsely by user.
struct CascadeGradient {
  SentimentClass sentiment = 0;
  std::size_t dim = 0;
  std::map<UserIndex, std::vector<double>> influence;
  std::map<UserIndex, std::vector<double>> susceptibility;

  /// Dense K x D matrices (row-major), zero when the user was not touched.
  std::vector<double> influence_matrix(UserIndex user, std::size_t classes) const;
  std::vector<double> susceptibility_matrix(UserIndex user, std::size_t classes) const;
};

CascadeGradient gradients(const Cascade& cascade, const ParameterStore& params,
                          std::span<const UserIndex> negatives,
                          const AdjacencyMask* mask = nullptr);

/// Negative log-likelihood of one cascade (the quantity the trainer
/// minimizes) and, when `grad` is non-null, its gradient accumulated into
/// `grad` by row index of `params`.
double cascade_negative_log_likelihood(const Cascade& cascade, const ParameterStore& params,
                                       std::span<const UserIndex> negatives,
                                       const AdjacencyMask* mask,
                                       SparseRows* grad);

}  // namespace sentinf

#endif  // SENTINF_SURVIVAL_HPP
