#include "sentinf/models.hpp"

#include <stdexcept>

namespace sentinf {

ModelKind parse_model_kind(std::string_view name) {
  if (name == "sent-lis") return ModelKind::kSentLis;
  if (name == "ct-lis") return ModelKind::kCtLis;
  if (name == "ct-bernoulli") return ModelKind::kCtBernoulli;
  if (name == "ct-jaccard") return ModelKind::kCtJaccard;
  if (name == "netrate") return ModelKind::kNetRate;
  throw ConfigError("unknown model '" + std::string(name) + "'");
}

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kSentLis: return "sent-lis";
    case ModelKind::kCtLis: return "ct-lis";
    case ModelKind::kCtBernoulli: return "ct-bernoulli";
    case ModelKind::kCtJaccard: return "ct-jaccard";
    case ModelKind::kNetRate: return "netrate";
  }
  return "unknown";
}

Task parse_task(std::string_view name) {
  if (name == "pcd") return Task::kPcd;
  if (name == "wbr") return Task::kWbr;
  if (name == "csp") return Task::kCsp;
  throw ConfigError("unknown task '" + std::string(name) + "'");
}

std::string_view to_string(Task task) {
  switch (task) {
    case Task::kPcd: return "pcd";
    case Task::kWbr: return "wbr";
    case Task::kCsp: return "csp";
  }
  return "unknown";
}

FittedModel::FittedModel(ModelKind kind, ParameterStore params,
                         std::shared_ptr<const AdjacencyMask> mask)
    : kind_(kind), users_(params.users()), state_(std::move(params)), mask_(std::move(mask)) {}

FittedModel::FittedModel(ModelKind kind, PairwiseRates rates, std::size_t users)
    : kind_(kind), users_(users), state_(std::move(rates)) {}

double FittedModel::rate(UserIndex src, UserIndex dst, SentimentClass k) const {
  if (const auto* p = params()) {
    if (mask_ && !mask_->allows(src, dst)) return 0.0;
    // the sentiment-blind model has a single class
    return transmission_rate(*p, src, dst, p->classes() == 1 ? 0 : k);
  }
  return std::get<PairwiseRates>(state_).get(src, dst);
}

Dataset collapse_sentiments(const Dataset& dataset) {
  Dataset out = dataset;
  out.classes = 1;
  for (auto& c : out.cascades) c.sentiment = 0;
  return out;
}

Dataset subset(const Dataset& dataset, std::span<const std::size_t> indices) {
  Dataset out;
  out.users = dataset.users;
  out.classes = dataset.classes;
  out.adjacency = dataset.adjacency;
  out.parents = dataset.parents;
  out.cascades.reserve(indices.size());
  for (auto i : indices) out.cascades.push_back(dataset.cascades.at(i));
  return out;
}

FittedModel fit_model(const Dataset& train, const ModelConfig& config,
                      std::vector<EpochLog>* log) {
  std::shared_ptr<const AdjacencyMask> mask;
  if (train.adjacency) mask = std::make_shared<AdjacencyMask>(*train.adjacency);

  switch (config.kind) {
    case ModelKind::kSentLis:
    case ModelKind::kCtLis: {
      const Dataset data =
          config.kind == ModelKind::kCtLis ? collapse_sentiments(train) : train;
      auto result = config.initial ? sentinf::train(data, config.trainer, *config.initial)
                                   : sentinf::train(data, config.trainer, config.dim);
      if (log) *log = result.log;
      return FittedModel(config.kind, std::move(result.params), mask);
    }
    case ModelKind::kCtBernoulli:
      return FittedModel(config.kind, fit_ct_bernoulli(train.cascades, config.bernoulli_trials),
                         train.users);
    case ModelKind::kCtJaccard:
      return FittedModel(config.kind, fit_ct_jaccard(train.cascades), train.users);
    case ModelKind::kNetRate: {
      auto result = fit_netrate(train, fit_ct_jaccard(train.cascades), config.trainer);
      if (log) *log = result.log;
      return FittedModel(config.kind, std::move(result.rates), train.users);
    }
  }
  throw ConfigError("unsupported model kind");
}

std::vector<std::pair<std::string, double>> score_task(Task task, const Dataset& test,
                                                       const TransmissionModel& model,
                                                       const CrossValidationConfig& config,
                                                       std::map<std::string, std::size_t>* counters) {
  std::map<std::string, std::size_t> sink;
  auto& count = counters ? *counters : sink;
  switch (task) {
    case Task::kPcd: {
      const auto r = evaluate_pcd(test.cascades, model, config.pcd);
      count["pcd_auc_cascades"] += r.auc_cascades;
      count["pcd_skipped_cascades"] += r.skipped_cascades;
      count["pcd_ranked_events"] += r.ranked_events;
      return {{"AUC", r.auc}, {"MRR", r.mrr}};
    }
    case Task::kWbr: {
      const auto r = evaluate_wbr(test.cascades, test.parents, model);
      count["wbr_scored"] += r.scored;
      count["wbr_missing_parent"] += r.missing_parent;
      count["wbr_invalid_parent"] += r.invalid_parent;
      count["wbr_no_candidates"] += r.no_candidates;
      return {{"Acc", r.accuracy}, {"MRR", r.mrr}};
    }
    case Task::kCsp: {
      const auto r = evaluate_csp(test.cascades, model, config.csp);
      count["csp_evaluated"] += r.evaluated;
      count["csp_excluded"] += r.excluded;
      return {{"MAPE", r.mape}};
    }
  }
  throw ConfigError("unsupported task");
}

EvalReport cross_validate(const Dataset& dataset, const ModelConfig& model,
                          const CrossValidationConfig& config) {
  EvalReport report;
  report.task = std::string(to_string(config.task));
  report.model = std::string(to_string(model.kind));

  std::vector<std::string> names;
  std::vector<std::vector<double>> values;
  for (const auto& fold : kfold_split(dataset.cascades.size(), config.folds, config.fold_seed)) {
    const Dataset train = subset(dataset, fold.train);
    const Dataset test = subset(dataset, fold.test);
    const FittedModel fitted = fit_model(train, model);
    const auto scores = score_task(config.task, test, fitted, config, &report.counters);
    if (names.empty()) {
      for (const auto& [name, v] : scores) names.push_back(name);
      values.resize(names.size());
    }
    for (std::size_t m = 0; m < scores.size(); ++m) values[m].push_back(scores[m].second);
  }
  for (std::size_t m = 0; m < names.size(); ++m) {
    report.metrics.emplace_back(names[m], summarize(std::move(values[m])));
  }
  return report;
}

}  // namespace sentinf
