#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <memory>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "sentinf/analysis.hpp"
#include "sentinf/generator.hpp"
#include "sentinf/io.hpp"
#include "sentinf/models.hpp"
#include "sentinf/pipeline.hpp"

namespace sentinf::cli {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr const char* kVersion = "1.0.0";
constexpr const char* kManifestName = "manifest.json";

class Logger {
 public:
  explicit Logger(std::ostream& fallback) : sink_(&fallback) {}

  void open(const std::string& path) {
    if (path.empty()) return;
    file_ = open_output(path);
    sink_ = &file_;
  }

  void event(std::string_view name, const json& fields = json::object()) {
    const auto now = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::system_clock::now().time_since_epoch())
                         .count();
    json line;
    line["ts_ms"] = now;
    line["event"] = name;
    for (const auto& [k, v] : fields.items()) line[k] = v;
    *sink_ << line.dump() << '\n';
    sink_->flush();
  }

 private:
  std::ostream* sink_;
  std::ofstream file_;
};

// Declared flags of one subcommand with accessors for their final values, in
// declaration order. The manifest and the canonical argv are built from it.
class Flags {
 public:
  explicit Flags(CLI::App* app) : app_(app) {}

  template <typename T>
  CLI::Option* value(const std::string& name, T& var, const std::string& help) {
    record_.emplace_back(name, [&var] { return json(var); });
    return app_->add_option("--" + name, var, help)->capture_default_str();
  }

  CLI::Option* flag(const std::string& name, bool& var, const std::string& help) {
    record_.emplace_back(name, [&var] { return json(var); });
    return app_->add_flag("--" + name, var, help);
  }

  // Paths are recorded absolute so a manifest replays from any directory.
  CLI::Option* path(const std::string& name, std::string& var, const std::string& help) {
    record_.emplace_back(name, [&var] {
      return var.empty() ? json("") : json(fs::absolute(var).lexically_normal().string());
    });
    return app_->add_option("--" + name, var, help);
  }

  json resolved() const {
    json j = json::object();
    for (const auto& [name, get] : record_) j[name] = get();
    return j;
  }

  CLI::App* app() const { return app_; }

 private:
  CLI::App* app_;
  std::vector<std::pair<std::string, std::function<json()>>> record_;
};

std::string token(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::vector<std::string> canonical_argv(const std::vector<std::string>& command,
                                        const json& options) {
  std::vector<std::string> args = command;
  for (const auto& [name, v] : options.items()) {
    if (v.is_boolean()) {
      if (v.get<bool>()) args.push_back("--" + name);
      continue;
    }
    if (v.is_string() && v.get<std::string>().empty()) continue;
    args.push_back("--" + name);
    if (v.is_array()) {
      std::string joined;
      for (const auto& item : v) joined += (joined.empty() ? "" : ",") + token(item);
      args.push_back(joined);
    } else {
      args.push_back(token(v));
    }
  }
  return args;
}

struct Context {
  Logger& log;
  std::ostream& out;
  fs::path dir;
  json resolved = json::object();
  json seeds = json::object();
  std::vector<std::string> outputs;

  std::ofstream create(const std::string& name) {
    outputs.push_back(name);
    return open_output(dir / name);
  }
};

struct Command {
  std::vector<std::string> path;
  std::unique_ptr<Flags> flags;
  std::string out_dir;
  std::size_t threads = 0;
  bool uses_threads = false;
  std::function<void(Context&)> body;
};

std::size_t resolve_threads(std::size_t requested) {
  if (requested > 0) return requested;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

// ---------------------------------------------------------------------------
// Shared option groups

struct DataOptions {
  std::string cascades;
  std::string parents;
  std::string adjacency;
  std::size_t users = 0;
  std::size_t classes = 0;
};

void add_data_options(Flags& f, DataOptions& o) {
  f.path("cascades", o.cascades, "Cascade file (JSON lines)")->required();
  f.path("parents", o.parents, "Ground-truth parent file (JSON lines)");
  f.path("adjacency", o.adjacency,
         "Allowed influence pairs (JSON lines); other pairs get rate 0");
  f.value("users", o.users, "User count M; 0 infers it from the cascades");
  f.value("classes", o.classes, "Sentiment class count K; 0 infers it from the cascades");
}

Dataset load(const DataOptions& o, Context& ctx) {
  DatasetPaths paths{o.cascades, std::nullopt, std::nullopt};
  if (!o.parents.empty()) paths.parents = o.parents;
  if (!o.adjacency.empty()) paths.adjacency = o.adjacency;
  Dataset d = load_dataset(paths, o.users ? std::optional(o.users) : std::nullopt,
                           o.classes ? std::optional(o.classes) : std::nullopt);
  ctx.resolved["M"] = d.users;
  ctx.resolved["K"] = d.classes;
  ctx.resolved["cascades"] = d.cascades.size();
  ctx.log.event("dataset_loaded", {{"users", d.users},
                                   {"classes", d.classes},
                                   {"cascades", d.cascades.size()},
                                   {"parents", d.parents.size()}});
  return d;
}

struct ModelOptions {
  std::size_t dim = 8;
  TrainerConfig trainer;
  std::string init;
  std::string bernoulli_trials = "influencer";
};

void add_model_options(Flags& f, ModelOptions& o) {
  f.value("dim", o.dim, "Latent dimension D per sentiment class")
      ->check(CLI::PositiveNumber);
  f.value("batch", o.trainer.batch_size, "Cascades per mini-batch")->check(CLI::PositiveNumber);
  f.value("neg-samples", o.trainer.negatives, "Negative users L sampled per cascade");
  f.value("rho", o.trainer.rho, "Adadelta decay rate");
  f.value("eps", o.trainer.epsilon, "Adadelta conditioning constant");
  f.value("sigma", o.trainer.sigma, "Sufficient-decrease constant of the backtracking search");
  f.value("beta", o.trainer.beta, "Backtracking shrink factor");
  f.value("max-epochs", o.trainer.max_epochs, "Epoch limit; 0 returns the initialization");
  f.value("max-backtracks", o.trainer.max_backtracks, "Backtracking steps before a batch is skipped");
  f.value("tolerance", o.trainer.tolerance, "Stop when the epoch objective changes less than this, relatively");
  f.value("seed", o.trainer.seed, "Seed for initialization, shuffling and negative sampling");
  f.path("init", o.init, "Initial parameter checkpoint for sent-lis / ct-lis");
  f.value("bernoulli-trials", o.bernoulli_trials,
          "CT Bernoulli denominator: influencer (cascades with the source) or co-occurrence")
      ->check(CLI::IsMember({"influencer", "co-occurrence"}));
}

ModelConfig make_model_config(ModelKind kind, const ModelOptions& o, const Dataset& data,
                              Context& ctx) {
  ModelConfig mc;
  mc.kind = kind;
  mc.dim = o.dim;
  mc.trainer = o.trainer;
  mc.trainer.validate();
  mc.bernoulli_trials = o.bernoulli_trials == "co-occurrence" ? BernoulliTrials::kCoOccurrence
                                                             : BernoulliTrials::kInfluencerCascades;
  if (!o.init.empty()) {
    if (kind != ModelKind::kSentLis && kind != ModelKind::kCtLis) {
      throw ConfigError("--init applies only to sent-lis and ct-lis");
    }
    auto in = open_input(o.init);
    ParameterStore init = read_checkpoint(in);
    const std::size_t k = kind == ModelKind::kCtLis ? 1 : data.classes;
    if (init.users() != data.users || init.classes() != k || init.dim() != o.dim) {
      throw ConfigError("--init checkpoint has shape M=" + std::to_string(init.users()) +
                        " K=" + std::to_string(init.classes()) + " D=" +
                        std::to_string(init.dim()) + ", expected M=" +
                        std::to_string(data.users) + " K=" + std::to_string(k) + " D=" +
                        std::to_string(o.dim));
    }
    mc.initial = std::move(init);
  }
  ctx.seeds["trainer"] = o.trainer.seed;
  return mc;
}

json epoch_json(const EpochLog& e) {
  return {{"epoch", e.epoch},
          {"objective", e.objective},
          {"backtracks", e.backtracks},
          {"wall_ms", e.wall_ms}};
}

// ---------------------------------------------------------------------------
// Subcommands

void setup_generate(CLI::App& app, std::vector<std::unique_ptr<Command>>& commands) {
  auto* sub = app.add_subcommand("generate", "Draw synthetic cascades from planted parameters");
  auto cmd = std::make_unique<Command>();
  cmd->path = {"generate"};
  cmd->flags = std::make_unique<Flags>(sub);
  auto config = std::make_shared<GeneratorConfig>();
  auto& f = *cmd->flags;
  f.value("users", config->users, "User count M")->check(CLI::PositiveNumber);
  f.value("classes", config->plan.classes, "Sentiment class count K")->check(CLI::PositiveNumber);
  f.value("dim", config->dim, "Planted latent dimension")->check(CLI::PositiveNumber);
  f.value("cascades-per-class", config->plan.cascades_per_class, "Cascades drawn per class");
  f.value("horizon", config->plan.horizon, "Observation horizon t_E");
  f.value("scales", config->plan.scales, "Time scales used by the simulator");
  f.value("influential-fraction", config->influential_fraction,
          "Share of users with large influence");
  f.value("influential-scale", config->influential_scale, "Influence L1 scale of influential users");
  f.value("base-scale", config->base_scale, "Influence L1 scale of the other users");
  f.value("susceptibility-scale", config->susceptibility_scale, "Susceptibility scale");
  f.value("norm-spread", config->norm_spread,
          "Log-uniform spread s of row norms around their scale; 0 uses fixed uniform ranges");
  f.flag("differentiated", config->sentiment_differentiated,
         "Draw every class independently per user");
  f.value("seed", config->plan.seed, "Generator seed");
  cmd->uses_threads = true;
  cmd->body = [config, c = cmd.get()](Context& ctx) {
    config->plan.threads = c->threads;
    ctx.seeds["generator"] = config->plan.seed;
    const GeneratedData g = generate(*config);
    {
      auto out = ctx.create("cascades.jsonl");
      write_cascades(out, g.dataset.cascades);
    }
    {
      auto out = ctx.create("parents.jsonl");
      write_parents(out, g.dataset.parents);
    }
    {
      auto out = ctx.create("planted.json");
      write_checkpoint(out, g.planted);
    }
    ctx.resolved["kept_cascades"] = g.dataset.cascades.size();
    ctx.out << summarize_dataset(g.dataset);
  };
  commands.push_back(std::move(cmd));
}

void setup_preprocess(CLI::App& app, std::vector<std::unique_ptr<Command>>& commands) {
  auto* sub = app.add_subcommand(
      "preprocess", "Assign sentiments from an emoticon lexicon and apply onion peeling");
  auto cmd = std::make_unique<Command>();
  cmd->path = {"preprocess"};
  cmd->flags = std::make_unique<Flags>(sub);
  struct Options {
    std::string cascades, parents, texts, lexicon;
    PeelConfig peel;
  };
  auto o = std::make_shared<Options>();
  auto& f = *cmd->flags;
  f.path("cascades", o->cascades, "Raw cascade file (JSON lines)")->required();
  f.path("parents", o->parents, "Parent file; enables A_out and transitive removal");
  auto* texts = f.path("texts", o->texts, "Message texts {\"id\", \"text\"} (JSON lines)");
  auto* lexicon = f.path("lexicon", o->lexicon, "Emoticon lexicon, token<TAB>polarity per line");
  texts->needs(lexicon);
  lexicon->needs(texts);
  f.value("min-activeness", o->peel.min_activeness, "Users below this activeness are removed");
  f.value("min-cascade-size", o->peel.min_cascade_size, "Cascades below this size are removed");
  cmd->body = [o](Context& ctx) {
    std::vector<Cascade> cascades;
    {
      auto in = open_input(o->cascades);
      cascades = read_cascades(in);
    }
    ParentMap parents;
    if (!o->parents.empty()) {
      auto in = open_input(o->parents);
      parents = read_parents(in);
    }
    std::size_t unlabeled = 0;
    if (!o->lexicon.empty()) {
      auto lex_in = open_input(o->lexicon);
      const Lexicon lexicon = Lexicon::parse(lex_in);
      auto text_in = open_input(o->texts);
      const auto texts = read_texts(text_in);
      std::vector<Cascade> labeled;
      for (auto& c : cascades) {
        auto it = texts.find(c.id);
        const auto label = it == texts.end() ? std::nullopt : assign_sentiment(it->second, lexicon);
        if (!label) {
          ++unlabeled;
          continue;
        }
        c.sentiment = *label;
        labeled.push_back(std::move(c));
      }
      cascades = std::move(labeled);
      ctx.log.event("sentiment_assigned",
                    {{"labeled", cascades.size()}, {"unlabeled_dropped", unlabeled}});
    }
    Dataset check{cascades, infer_user_count(cascades), infer_class_count(cascades), {}, {}};
    if (const auto problems = validate_dataset(check); !problems.empty()) {
      throw FormatError(o->cascades + ": " + problems.front());
    }

    const PeelResult peeled = onion_peel(cascades, parents, o->peel);
    Dataset result{peeled.cascades, infer_user_count(peeled.cascades),
                   infer_class_count(peeled.cascades), {}, peeled.parents};
    {
      auto out = ctx.create("cascades.jsonl");
      write_cascades(out, peeled.cascades);
    }
    if (!o->parents.empty()) {
      auto out = ctx.create("parents.jsonl");
      write_parents(out, peeled.parents);
    }
    std::set<UserIndex> users;
    for (const auto& c : peeled.cascades) {
      for (const auto& e : c.events) users.insert(e.user);
    }
    const json summary = {{"users", users.size()},
                          {"cascades", peeled.cascades.size()},
                          {"passes", peeled.passes},
                          {"dropped_users", peeled.dropped_users},
                          {"dropped_cascades", peeled.dropped_cascades},
                          {"dropped_records", peeled.dropped_records},
                          {"unlabeled_cascades", unlabeled}};
    {
      auto out = ctx.create("summary.json");
      out << summary.dump(2) << '\n';
    }
    if (peeled.cascades.empty()) ctx.log.event("empty_output");
    ctx.log.event("onion_peel", summary);
    ctx.out << summary.dump(2) << '\n';
  };
  commands.push_back(std::move(cmd));
}

void setup_train(CLI::App& app, std::vector<std::unique_ptr<Command>>& commands) {
  auto* sub = app.add_subcommand("train", "Fit one model and write its parameters");
  auto cmd = std::make_unique<Command>();
  cmd->path = {"train"};
  cmd->flags = std::make_unique<Flags>(sub);
  struct Options {
    DataOptions data;
    ModelOptions model;
    std::string kind = "sent-lis";
  };
  auto o = std::make_shared<Options>();
  auto& f = *cmd->flags;
  add_data_options(f, o->data);
  f.value("model", o->kind, "sent-lis | ct-lis | ct-bernoulli | ct-jaccard | netrate")
      ->check(CLI::IsMember({"sent-lis", "ct-lis", "ct-bernoulli", "ct-jaccard", "netrate"}));
  add_model_options(f, o->model);
  cmd->body = [o](Context& ctx) {
    const Dataset data = load(o->data, ctx);
    const ModelConfig mc = make_model_config(parse_model_kind(o->kind), o->model, data, ctx);
    std::vector<EpochLog> log;
    const auto start = std::chrono::steady_clock::now();
    const FittedModel model = fit_model(data, mc, &log);
    for (const auto& e : log) ctx.log.event("epoch", epoch_json(e));
    ctx.log.event("trained", {{"model", o->kind},
                              {"epochs", log.empty() ? 0 : log.size() - 1},
                              {"wall_ms", std::chrono::duration_cast<std::chrono::milliseconds>(
                                              std::chrono::steady_clock::now() - start)
                                              .count()}});
    if (const auto* p = model.params()) {
      auto out = ctx.create("params.json");
      write_checkpoint(out, *p);
      ctx.out << "wrote " << (ctx.dir / "params.json").string() << " (M=" << p->users()
              << " K=" << p->classes() << " D=" << p->dim() << ")\n";
    } else {
      auto out = ctx.create("rates.jsonl");
      write_rates(out, *model.rates());
      ctx.out << "wrote " << (ctx.dir / "rates.jsonl").string() << " ("
              << model.rates()->size() << " pairs)\n";
    }
    if (!log.empty()) ctx.resolved["final_objective"] = log.back().objective;
  };
  commands.push_back(std::move(cmd));
}

std::string format_table(const std::vector<EvalReport>& reports) {
  std::vector<std::string> metrics;
  for (const auto& r : reports) {
    for (const auto& [name, s] : r.metrics) {
      if (std::find(metrics.begin(), metrics.end(), name) == metrics.end()) metrics.push_back(name);
    }
  }
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"model"});
  for (const auto& m : metrics) rows.back().push_back(m);
  for (const auto& r : reports) {
    rows.push_back({r.model});
    for (const auto& m : metrics) {
      std::string cell = "-";
      for (const auto& [name, s] : r.metrics) {
        if (name != m) continue;
        std::ostringstream os;
        os << std::fixed << std::setprecision(4) << s.mean << " +/- " << s.sd;
        cell = os.str();
      }
      rows.back().push_back(cell);
    }
  }
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::ostringstream os;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i + 1 == row.size()) {
        os << row[i] << '\n';
      } else {
        os << std::left << std::setw(static_cast<int>(width[i])) << row[i] << "  ";
      }
    }
  }
  return os.str();
}

json report_json(const EvalReport& r) {
  json metrics = json::object();
  for (const auto& [name, s] : r.metrics) {
    metrics[name] = {{"mean", s.mean}, {"sd", s.sd}, {"per_fold", s.per_fold}};
  }
  json counters = json::object();
  for (const auto& [name, n] : r.counters) counters[name] = n;
  return {{"model", r.model}, {"metrics", metrics}, {"counters", counters}};
}

void setup_evaluate(CLI::App& app, std::vector<std::unique_ptr<Command>>& commands) {
  auto* sub = app.add_subcommand("evaluate", "Cross-validate models on one prediction task");
  auto cmd = std::make_unique<Command>();
  cmd->path = {"evaluate"};
  cmd->flags = std::make_unique<Flags>(sub);
  struct Options {
    DataOptions data;
    ModelOptions model;
    std::vector<std::string> kinds{"sent-lis"};
    std::string task = "pcd";
    CrossValidationConfig cv;
  };
  auto o = std::make_shared<Options>();
  auto& f = *cmd->flags;
  add_data_options(f, o->data);
  f.value("task", o->task, "pcd | wbr | csp")->check(CLI::IsMember({"pcd", "wbr", "csp"}));
  f.value("model", o->kinds, "Comma-separated models, one table row each")
      ->delimiter(',')
      ->check(CLI::IsMember({"sent-lis", "ct-lis", "ct-bernoulli", "ct-jaccard", "netrate"}));
  add_model_options(f, o->model);
  f.value("folds", o->cv.folds, "Cross-validation folds");
  f.value("fold-seed", o->cv.fold_seed, "Seed of the fold assignment");
  f.value("csp-seeds", o->cv.csp.seeds, "Initially observed users P per cascade");
  f.value("csp-sims", o->cv.csp.simulations, "Simulations per cascade");
  f.value("csp-scales", o->cv.csp.scales, "Time scales per simulation window");
  f.value("csp-seed", o->cv.csp.seed, "Seed of the cascade simulations");
  f.value("pcd-epsilon", o->cv.pcd.epsilon, "Offset after t_N at which negatives are scored");
  f.flag("pcd-pooled", o->cv.pcd.pooled_auc, "Pool all cascades into one AUC");
  cmd->uses_threads = true;
  cmd->body = [o, c = cmd.get()](Context& ctx) {
    const Dataset data = load(o->data, ctx);
    o->cv.task = parse_task(o->task);
    o->cv.pcd.threads = c->threads;
    o->cv.csp.threads = c->threads;
    if (o->cv.task == Task::kWbr && data.parents.empty()) {
      throw ConfigError("--task wbr needs --parents");
    }
    ctx.seeds["folds"] = o->cv.fold_seed;
    ctx.seeds["csp"] = o->cv.csp.seed;
    std::vector<EvalReport> reports;
    json models = json::array();
    for (const auto& name : o->kinds) {
      const ModelConfig mc = make_model_config(parse_model_kind(name), o->model, data, ctx);
      const auto start = std::chrono::steady_clock::now();
      reports.push_back(cross_validate(data, mc, o->cv));
      json event = report_json(reports.back());
      event["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();
      ctx.log.event("evaluated", event);
      models.push_back(report_json(reports.back()));
    }
    const json report = {{"task", o->task}, {"folds", o->cv.folds}, {"models", models}};
    const std::string table = format_table(reports);
    {
      auto out = ctx.create("report.json");
      out << report.dump(2) << '\n';
    }
    {
      auto out = ctx.create("report.txt");
      out << table;
    }
    ctx.out << "task " << o->task << ", " << o->cv.folds << " folds\n" << table;
  };
  commands.push_back(std::move(cmd));
}

void setup_export(CLI::App& app, std::vector<std::unique_ptr<Command>>& commands) {
  auto* sub = app.add_subcommand("export", "Write analysis tables as CSV");
  sub->require_subcommand(1);

  {
    auto* norms = sub->add_subcommand(
        "norms", "norms.csv columns: user,sentiment,influence_l1,susceptibility_l1");
    auto cmd = std::make_unique<Command>();
    cmd->path = {"export", "norms"};
    cmd->flags = std::make_unique<Flags>(norms);
    auto params = std::make_shared<std::string>();
    cmd->flags->path("params", *params, "Parameter checkpoint")->required();
    cmd->body = [params](Context& ctx) {
      auto in = open_input(*params);
      const ParameterStore p = read_checkpoint(in);
      auto out = ctx.create("norms.csv");
      write_norms_csv(out, export_norms(p));
      ctx.resolved["rows"] = p.users() * p.classes();
    };
    commands.push_back(std::move(cmd));
  }
  {
    auto* rates = sub->add_subcommand(
        "rates", "rates.csv columns: src,dst,phi,baseline_rate (baseline 0 when absent)");
    auto cmd = std::make_unique<Command>();
    cmd->path = {"export", "rates"};
    cmd->flags = std::make_unique<Flags>(rates);
    struct Options {
      std::string params, baseline;
      SentimentClass sentiment = 0;
      std::size_t sample = 0;
      std::uint64_t seed = 1;
    };
    auto o = std::make_shared<Options>();
    auto& f = *cmd->flags;
    f.path("params", o->params, "Parameter checkpoint")->required();
    f.path("baseline", o->baseline, "Pairwise rates file (JSON lines)");
    f.value("sentiment", o->sentiment, "Sentiment class whose rates are exported");
    f.value("sample", o->sample, "Uniformly sampled pair count; 0 exports every ordered pair");
    f.value("seed", o->seed, "Seed of the pair sample");
    cmd->body = [o](Context& ctx) {
      auto in = open_input(o->params);
      const ParameterStore p = read_checkpoint(in);
      PairwiseRates baseline;
      if (!o->baseline.empty()) {
        auto bin = open_input(o->baseline);
        baseline = read_rates(bin);
      }
      ctx.seeds["sample"] = o->seed;
      const auto rows = export_rates(p, baseline, o->sentiment,
                                     o->sample ? std::optional(o->sample) : std::nullopt, o->seed);
      auto out = ctx.create("rates.csv");
      write_rates_csv(out, rows);
      ctx.resolved["rows"] = rows.size();
    };
    commands.push_back(std::move(cmd));
  }
}

json read_manifest(const std::string& path) {
  auto in = open_input(path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sentiment-specific influence and susceptibility learning from cascades", "sentinf"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  std::string log_file;
  app.add_option("--log-file", log_file, "Write JSON-lines logs here instead of stderr");

  std::vector<std::unique_ptr<Command>> commands;
  setup_preprocess(app, commands);
  setup_generate(app, commands);
  setup_train(app, commands);
  setup_evaluate(app, commands);
  setup_export(app, commands);
  for (auto& cmd : commands) {
    auto* sub = cmd->flags->app();
    sub->add_option("--out", cmd->out_dir, "Output directory (created if missing)")->required();
    if (cmd->uses_threads) {
      sub->add_option("--threads", cmd->threads, "Worker threads; 0 uses every core")
          ->capture_default_str();
    }
  }

  auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  std::string manifest_path;
  std::string replay_out;
  replay->add_option("manifest", manifest_path, "manifest.json of an earlier run")->required();
  replay->add_option("--out", replay_out, "Write outputs here instead of the recorded directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  Logger logger(err);
  try {
    logger.open(log_file);

    if (replay->parsed()) {
      const json manifest = read_manifest(manifest_path);
      auto argv = manifest.at("argv").get<std::vector<std::string>>();
      if (!replay_out.empty()) {
        auto it = std::find(argv.begin(), argv.end(), "--out");
        if (it == argv.end() || std::next(it) == argv.end()) {
          throw FormatError(manifest_path + ": argv has no --out");
        }
        *std::next(it) = fs::absolute(replay_out).lexically_normal().string();
      }
      if (!log_file.empty()) {
        argv.insert(argv.begin(), {"--log-file", log_file});
      }
      logger.event("replay", {{"manifest", manifest_path}});
      return run(argv, out, err);
    }

    Command* cmd = nullptr;
    for (auto& c : commands) {
      if (c->flags->app()->parsed()) cmd = c.get();
    }
    if (!cmd) throw ConfigError("no command given");

    cmd->threads = resolve_threads(cmd->threads);
    Context ctx{logger, out, fs::absolute(cmd->out_dir).lexically_normal(), json::object(),
                json::object(), {}};
    fs::create_directories(ctx.dir);

    json options = cmd->flags->resolved();
    options["out"] = ctx.dir.string();
    if (cmd->uses_threads) options["threads"] = cmd->threads;

    std::string joined;
    for (const auto& p : cmd->path) joined += (joined.empty() ? "" : " ") + p;
    logger.event("start", {{"command", joined}, {"options", options}});

    cmd->body(ctx);

    json manifest;
    manifest["tool"] = "sentinf";
    manifest["version"] = kVersion;
    manifest["command"] = cmd->path;
    manifest["options"] = options;
    manifest["seeds"] = ctx.seeds;
    manifest["resolved"] = ctx.resolved;
    manifest["outputs"] = ctx.outputs;
    manifest["argv"] = canonical_argv(cmd->path, options);
    {
      auto file = open_output(ctx.dir / kManifestName);
      file << manifest.dump(2) << '\n';
    }
    logger.event("done", {{"command", joined}, {"outputs", ctx.outputs}});
    return kOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace sentinf::cli
