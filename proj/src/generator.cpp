#include "sentinf/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "parallel.hpp"
#include "sentinf/sampler.hpp"
#include "sentinf/simulation.hpp"

namespace sentinf {

ParameterStore plant_parameters(const GeneratorConfig& config) {
  const auto& plan = config.plan;
  if (config.users == 0 || config.dim == 0 || plan.classes == 0) {
    throw ConfigError("generator: users, dim and classes must be positive");
  }
  ParameterStore params(config.users, plan.classes, config.dim);
  Rng rng(derive_seed(plan.seed, 0x706c616eULL));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double d = static_cast<double>(config.dim);

  // Multiplier on a scale: uniform on [lo, hi], or log-uniform on
  // [e^-s, e^s] when norm_spread s is positive.
  auto spread = [&](double lo, double hi) {
    if (config.norm_spread > 0.0) return std::exp(config.norm_spread * (2.0 * unit(rng) - 1.0));
    return lo + (hi - lo) * unit(rng);
  };

  auto fill = [&](std::span<double> row, double l1) {
    double sum = 0.0;
    for (auto& x : row) sum += (x = 0.5 + unit(rng));
    for (auto& x : row) x *= l1 / sum;
  };

  for (std::size_t u = 0; u < config.users; ++u) {
    const auto user = static_cast<UserIndex>(u);
    for (std::size_t k = 0; k < plan.classes; ++k) {
      const auto cls = static_cast<SentimentClass>(k);
      if (k > 0 && !config.sentiment_differentiated) {
        std::ranges::copy(params.influence(user, 0), params.influence(user, cls).begin());
        std::ranges::copy(params.susceptibility(user, 0), params.susceptibility(user, cls).begin());
        continue;
      }
      const bool influential = unit(rng) < config.influential_fraction;
      const double influence =
          (influential ? config.influential_scale : config.base_scale) * spread(0.5, 1.5);
      const double susceptibility = config.susceptibility_scale * spread(0.2, 1.0);
      fill(params.influence(user, cls), influence);
      fill(params.susceptibility(user, cls), susceptibility * d);
    }
  }
  return params;
}

Dataset generate_from_model(const TransmissionModel& model, const GenerationPlan& plan) {
  if (!(plan.horizon > 0.0)) throw ConfigError("generator: horizon must be positive");
  if (plan.classes == 0) throw ConfigError("generator: classes must be positive");
  const std::size_t users = model.users();
  const std::size_t total = plan.classes * plan.cascades_per_class;

  std::vector<std::vector<Infection>> drawn(total);
  detail::parallel_for(total, plan.threads, [&](std::size_t n) {
    Rng rng(derive_seed(plan.seed, n));
    std::uniform_int_distribution<std::size_t> pick(0, users - 1);
    SimulationWindow window;
    window.start = 0.0;
    window.end = plan.horizon;
    window.scales = plan.scales;
    window.sentiment = static_cast<SentimentClass>(n / plan.cascades_per_class);
    window.sample_parents = true;
    const std::vector<Infection> seed{{static_cast<UserIndex>(pick(rng)), 0.0, std::nullopt}};
    drawn[n] = simulate_cascade(model, seed, window, rng);
  });

  Dataset out;
  out.users = users;
  out.classes = plan.classes;
  for (std::size_t n = 0; n < total; ++n) {
    if (drawn[n].size() < 2) continue;
    const auto k = static_cast<SentimentClass>(n / plan.cascades_per_class);
    Cascade c;
    c.id = "syn-" + std::to_string(k) + "-" + std::to_string(n % plan.cascades_per_class);
    c.sentiment = k;
    c.horizon = plan.horizon;
    for (const auto& inf : drawn[n]) {
      c.events.push_back({inf.user, inf.time});
      if (inf.parent) out.parents[{c.id, inf.user}] = *inf.parent;
    }
    out.cascades.push_back(std::move(c));
  }
  return out;
}

GeneratedData generate(const GeneratorConfig& config) {
  GeneratedData out{Dataset{}, plant_parameters(config)};
  out.dataset = generate_from_model(LatentModel(out.planted), config.plan);
  return out;
}

}  // namespace sentinf
