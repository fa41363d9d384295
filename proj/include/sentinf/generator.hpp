#ifndef SENTINF_GENERATOR_HPP
#define SENTINF_GENERATOR_HPP

#include <cstddef>
#include <cstdint>

#include "sentinf/cascade.hpp"
#include "sentinf/parameters.hpp"
#include "sentinf/survival.hpp"

namespace sentinf {

/// How cascades are drawn from a rate source.
struct GenerationPlan {
  std::size_t classes = 1;
  std::size_t cascades_per_class = 100;
  double horizon = 10.0;
  std::size_t scales = 20;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
};

/// Planted-parameter recipe. Influential users get influence rows with L1
/// norm `influential_scale` times a random multiplier, the rest
/// `base_scale` times one. Susceptibility draws b are `susceptibility_scale`
/// times a multiplier, and rows are scaled so an influence row of norm a
/// gives an inner product of about a * b. See `norm_spread` for the
/// multiplier distribution.
struct GeneratorConfig {
  std::size_t users = 50;
  std::size_t dim = 2;
  double influential_fraction = 0.2;
  double influential_scale = 0.4;
  double base_scale = 0.03;
  double susceptibility_scale = 0.3;
  /// Multipliers are log-uniform on [e^-s, e^s] for s > 0. With s = 0 they
  /// are uniform on [0.5, 1.5] (influence) and [0.2, 1] (susceptibility).
  double norm_spread = 1.0;
  /// Draw each class's influence and susceptibility independently per user,
  /// so a sentiment-blind model cannot represent the planted rates.
  bool sentiment_differentiated = false;
  GenerationPlan plan;
};

/// Planted parameters with rows drawn per GeneratorConfig.
ParameterStore plant_parameters(const GeneratorConfig& config);

/// One cascade per draw: a uniformly chosen seed user at t = 0, then the
/// scale simulation up to the horizon. Cascades with fewer than two events
/// are discarded. Sampled infectors become the parent map.
Dataset generate_from_model(const TransmissionModel& model, const GenerationPlan& plan);

struct GeneratedData {
  Dataset dataset;
  ParameterStore planted;
};

GeneratedData generate(const GeneratorConfig& config);

}  // namespace sentinf

#endif  // SENTINF_GENERATOR_HPP
