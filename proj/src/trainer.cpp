#include "sentinf/trainer.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>

#include "likelihood_kernel.hpp"

namespace sentinf {

void TrainerConfig::validate() const {
  if (batch_size == 0) throw ConfigError("batch size must be positive");
  if (!(rho > 0.0 && rho < 1.0)) throw ConfigError("rho must lie in (0, 1)");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (!(sigma > 0.0 && sigma < 1.0)) throw ConfigError("sigma must lie in (0, 1)");
  if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("beta must lie in (0, 1)");
  if (max_backtracks == 0) throw ConfigError("max backtracks must be positive");
  if (!(tolerance >= 0.0)) throw ConfigError("tolerance must be non-negative");
}

std::vector<EpochLog> run_projected_sgd(const BatchObjective& objective,
                                        std::vector<double>& theta,
                                        const std::vector<const Cascade*>& cascades,
                                        const NegativeSampler& sampler,
                                        const TrainerConfig& config,
                                        const StepObserver& observer) {
  config.validate();
  if (cascades.empty()) throw ConfigError("no trainable cascades");
  const std::size_t width = objective.row_width();

  Rng rng(config.seed);
  Rng eval_rng(derive_seed(config.seed, 0x6576616cULL));

  Batch full;
  full.cascades = cascades;
  for (const Cascade* c : cascades) full.negatives.push_back(sampler.sample(*c, config.negatives, eval_rng));

  std::vector<EpochLog> log;
  double previous = batch_value(objective, full, theta);
  log.push_back({0, previous, 0, 0});
  if (config.max_epochs == 0) return log;

  const BacktrackConfig bt{config.sigma, config.beta, config.max_backtracks};
  AdadeltaState state;
  std::vector<const Cascade*> order = cascades;
  std::vector<double> theta_before;
  std::size_t iteration = 0;

  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    const auto start = std::chrono::steady_clock::now();
    std::size_t backtracks = 0;
    std::shuffle(order.begin(), order.end(), rng);

    for (std::size_t first = 0; first < order.size(); first += config.batch_size) {
      const std::size_t last = std::min(order.size(), first + config.batch_size);
      Batch batch;
      for (std::size_t c = first; c < last; ++c) {
        batch.cascades.push_back(order[c]);
        batch.negatives.push_back(sampler.sample(*order[c], config.negatives, rng));
      }

      SparseRows gradient;
      const double before = batch_value(objective, batch, theta, &gradient);

      SparseRows updates;
      for (const auto& [row, g] : gradient) {
        updates.emplace(row, adadelta_step(g, state.row(row, width), config.rho, config.epsilon));
      }

      if (observer) theta_before = theta;
      const auto result =
          projected_backtracking_update(objective, theta, gradient, updates, batch, before, bt);
      assert(!result.accepted ||
             result.objective_after - result.objective_before <=
                 config.sigma * result.directional);
      backtracks += result.backtracks;
      if (observer) {
        StepRecord record;
        record.iteration = iteration;
        record.batch = &batch;
        record.gradient = &gradient;
        record.theta_before = &theta_before;
        record.theta_after = &theta;
        record.result = result;
        observer(record);
      }
      ++iteration;
    }

    const double value = batch_value(objective, full, theta);
    const auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    log.push_back({epoch, value, backtracks, static_cast<std::int64_t>(wall.count())});
    const double scale = std::max(std::abs(previous), 1e-300);
    if (std::abs(previous - value) / scale < config.tolerance) break;
    previous = value;
  }
  return log;
}

LatentObjective::LatentObjective(std::size_t users, std::size_t classes, std::size_t dim,
                                 const AdjacencyMask* mask)
    : users_(users), classes_(classes), dim_(dim), mask_(mask) {}

double LatentObjective::cascade_value(const Cascade& cascade,
                                      std::span<const UserIndex> negatives,
                                      std::span<const double> theta, SparseRows* grad) const {
  return detail::latent_nll(cascade, negatives, theta, users_, classes_, dim_, mask_, grad);
}

TrainingResult train(const Dataset& dataset, const TrainerConfig& config,
                     const ParameterStore& initial, const StepObserver& observer) {
  config.validate();
  if (initial.users() != dataset.users || initial.classes() != dataset.classes) {
    throw ConfigError("initial parameters do not match the dataset's (M, K)");
  }
  TrainingResult out{initial, {}};
  const auto cascades = trainable_cascades(dataset.cascades);
  if (cascades.empty()) throw ConfigError("dataset has no trainable cascade");

  const auto sampler = NegativeSampler::from_cascades(dataset.cascades, dataset.users);
  const AdjacencyMask* mask = dataset.adjacency ? &*dataset.adjacency : nullptr;
  LatentObjective objective(dataset.users, dataset.classes, initial.dim(), mask);
  out.log = run_projected_sgd(objective, out.params.values(), cascades, sampler, config, observer);
  return out;
}

TrainingResult train(const Dataset& dataset, const TrainerConfig& config, std::size_t dim,
                     const StepObserver& observer) {
  return train(dataset, config,
               ParameterStore::random(dataset.users, dataset.classes, dim,
                                      derive_seed(config.seed, 0x696e6974ULL)),
               observer);
}

}  // namespace sentinf
