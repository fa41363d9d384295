#ifndef SENTINF_TRAINER_HPP
#define SENTINF_TRAINER_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sentinf/cascade.hpp"
#include "sentinf/optimizer.hpp"
#include "sentinf/parameters.hpp"
#include "sentinf/sampler.hpp"

namespace sentinf {

struct TrainerConfig {
  std::size_t batch_size = 12;
  double rho = 0.95;
  double epsilon = 1e-6;
  double sigma = 0.01;
  double beta = 0.5;
  std::size_t negatives = 5;  // L, resampled per cascade every iteration
  std::size_t max_epochs = 50;
  std::size_t max_backtracks = 20;
  double tolerance = 1e-5;  // relative change of the epoch objective
  std::uint64_t seed = 1;

  /// Throws ConfigError when a field is out of range.
  void validate() const;
};

struct EpochLog {
  std::size_t epoch = 0;
  double objective = 0.0;
  std::size_t backtracks = 0;
  std::int64_t wall_ms = 0;
};

/// Everything needed to re-check one accepted (or rejected) update.
struct StepRecord {
  std::size_t iteration = 0;
  const Batch* batch = nullptr;
  const SparseRows* gradient = nullptr;
  const std::vector<double>* theta_before = nullptr;
  const std::vector<double>* theta_after = nullptr;
  BacktrackResult result;
};

using StepObserver = std::function<void(const StepRecord&)>;

/// Shuffled mini-batch projected SGD with Adadelta steps and per-iteration
/// negative resampling, over any BatchObjective. `theta` is updated in place.
/// Epoch 0 of the returned log is the starting objective; every later entry
/// is the full objective after that epoch with a fixed evaluation negative
/// set.
std::vector<EpochLog> run_projected_sgd(const BatchObjective& objective,
                                        std::vector<double>& theta,
                                        const std::vector<const Cascade*>& cascades,
                                        const NegativeSampler& sampler,
                                        const TrainerConfig& config,
                                        const StepObserver& observer = {});

/// Latent influence/susceptibility objective on a ParameterStore layout.
class LatentObjective : public BatchObjective {
 public:
  LatentObjective(std::size_t users, std::size_t classes, std::size_t dim,
                  const AdjacencyMask* mask = nullptr);

  std::size_t row_width() const override { return dim_; }
  double cascade_value(const Cascade& cascade, std::span<const UserIndex> negatives,
                       std::span<const double> theta, SparseRows* grad) const override;

 private:
  std::size_t users_;
  std::size_t classes_;
  std::size_t dim_;
  const AdjacencyMask* mask_;
};

struct TrainingResult {
  ParameterStore params;
  std::vector<EpochLog> log;
};

/// Learns influence and susceptibility from the cascades of `dataset`.
/// K = 1 gives the sentiment-blind variant through the same code path.
TrainingResult train(const Dataset& dataset, const TrainerConfig& config,
                     const ParameterStore& initial, const StepObserver& observer = {});

/// As above, starting from ParameterStore::random(M, K, dim, seed).
TrainingResult train(const Dataset& dataset, const TrainerConfig& config, std::size_t dim,
                     const StepObserver& observer = {});

}  // namespace sentinf

#endif  // SENTINF_TRAINER_HPP
