#ifndef SENTINF_SIMULATION_HPP
#define SENTINF_SIMULATION_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "sentinf/cascade.hpp"
#include "sentinf/sampler.hpp"
#include "sentinf/survival.hpp"

namespace sentinf {

/// Probability that a source infected at t_src infects a susceptible user
/// within (tau_prev, tau_next], given no infection up to tau_prev:
/// 1 - [(tau_prev - t_src + 1) / (tau_next - t_src + 1)]^phi.
double scale_infection_probability(double phi, double t_src, double tau_prev, double tau_next);

struct Infection {
  UserIndex user = 0;
  double time = 0.0;
  std::optional<UserIndex> parent;  // sampled infector; empty for initial users
};

struct SimulationWindow {
  double start = 0.0;    // tau_0
  double end = 0.0;      // tau_n
  std::size_t scales = 1;
  SentimentClass sentiment = 0;
  bool sample_parents = false;
};

/// Discrete-scale forward simulation. Starting from `initial`, the window is
/// split into equal scales; at each scale every infected user whose time is
/// at most the scale start independently attempts every susceptible user
/// with scale_infection_probability. Users infected at a scale get the
/// scale midpoint as their time and become infective from the next scale.
/// Returns `initial` followed by new infections in order.
std::vector<Infection> simulate_cascade(const TransmissionModel& model,
                                        const std::vector<Infection>& initial,
                                        const SimulationWindow& window, Rng& rng);

}  // namespace sentinf

#endif  // SENTINF_SIMULATION_HPP
