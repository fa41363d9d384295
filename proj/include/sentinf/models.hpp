#ifndef SENTINF_MODELS_HPP
#define SENTINF_MODELS_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sentinf/baselines.hpp"
#include "sentinf/evaluation.hpp"
#include "sentinf/parameters.hpp"
#include "sentinf/survival.hpp"
#include "sentinf/trainer.hpp"

namespace sentinf {

enum class ModelKind { kSentLis, kCtLis, kCtBernoulli, kCtJaccard, kNetRate };

ModelKind parse_model_kind(std::string_view name);
std::string_view to_string(ModelKind kind);

struct ModelConfig {
  ModelKind kind = ModelKind::kSentLis;
  std::size_t dim = 8;
  TrainerConfig trainer;
  BernoulliTrials bernoulli_trials = BernoulliTrials::kInfluencerCascades;
  std::optional<ParameterStore> initial;  // latent models only
};

/// A trained model of any kind, owning its parameters.
class FittedModel : public TransmissionModel {
 public:
  FittedModel(ModelKind kind, ParameterStore params, std::shared_ptr<const AdjacencyMask> mask);
  FittedModel(ModelKind kind, PairwiseRates rates, std::size_t users);

  ModelKind kind() const { return kind_; }
  std::size_t users() const override { return users_; }
  double rate(UserIndex src, UserIndex dst, SentimentClass k) const override;

  const ParameterStore* params() const { return std::get_if<ParameterStore>(&state_); }
  const PairwiseRates* rates() const { return std::get_if<PairwiseRates>(&state_); }

 private:
  ModelKind kind_;
  std::size_t users_;
  std::variant<ParameterStore, PairwiseRates> state_;
  std::shared_ptr<const AdjacencyMask> mask_;
};

/// Same dataset with every sentiment collapsed into class 0 (K = 1).
Dataset collapse_sentiments(const Dataset& dataset);

/// Cascades at `indices`, keeping M, K, adjacency and parents.
Dataset subset(const Dataset& dataset, std::span<const std::size_t> indices);

FittedModel fit_model(const Dataset& train, const ModelConfig& config,
                      std::vector<EpochLog>* log = nullptr);

enum class Task { kPcd, kWbr, kCsp };

Task parse_task(std::string_view name);
std::string_view to_string(Task task);

struct CrossValidationConfig {
  Task task = Task::kPcd;
  std::size_t folds = 10;
  std::uint64_t fold_seed = 1;
  PcdOptions pcd;
  CspOptions csp;
};

/// k-fold protocol: fit on k-1 groups, score the held-out group, report
/// mean and SD of each metric over folds.
EvalReport cross_validate(const Dataset& dataset, const ModelConfig& model,
                          const CrossValidationConfig& config);

/// Scores one task on `test` with an already fitted model. Metric names
/// follow the task: PCD {AUC, MRR}, WBR {Acc, MRR}, CSP {MAPE}.
std::vector<std::pair<std::string, double>> score_task(Task task, const Dataset& test,
                                                       const TransmissionModel& model,
                                                       const CrossValidationConfig& config,
                                                       std::map<std::string, std::size_t>* counters = nullptr);

}  // namespace sentinf

#endif  // SENTINF_MODELS_HPP
