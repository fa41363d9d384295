#ifndef SENTINF_LIKELIHOOD_KERNEL_HPP
#define SENTINF_LIKELIHOOD_KERNEL_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "sentinf/cascade.hpp"
#include "sentinf/survival.hpp"

namespace sentinf::detail {

/// Negative log-likelihood of one cascade for an arbitrary rate source.
///
/// `rate(src, dst)` returns phi for the pair. For every pair that enters the
/// objective, `on_pair(src, dst, phi, w)` receives w = dNLL/dphi, which the
/// caller chains into its own parameterization. Events tied with the first
/// timestamp have no eligible influencer and are skipped.
template <class Rate, class OnPair>
double cascade_nll(const Cascade& c, std::span<const UserIndex> negatives, Rate&& rate,
                   OnPair&& on_pair) {
  const auto& ev = c.events;
  const std::size_t n = ev.size();
  double nll = 0.0;

  std::size_t group_start = 0;  // first event sharing the current timestamp
  std::vector<double> phis;
  for (std::size_t i = 1; i < n; ++i) {
    if (ev[i].time != ev[group_start].time) group_start = i;
    if (group_start == 0) continue;

    const double ti = ev[i].time;
    phis.resize(group_start);
    double hazard_sum = 0.0;
    for (std::size_t j = 0; j < group_start; ++j) {
      const double phi = rate(ev[j].user, ev[i].user);
      phis[j] = phi;
      const double elapsed = ti - ev[j].time + 1.0;
      hazard_sum += phi / elapsed;
      nll += phi * std::log(elapsed);
    }
    const bool floored = hazard_sum < kHazardFloor;
    nll -= std::log(floored ? kHazardFloor : hazard_sum);
    for (std::size_t j = 0; j < group_start; ++j) {
      const double elapsed = ti - ev[j].time + 1.0;
      double w = std::log(elapsed);
      if (!floored) w -= 1.0 / (elapsed * hazard_sum);
      on_pair(ev[j].user, ev[i].user, phis[j], w);
    }
  }

  for (UserIndex l : negatives) {
    for (std::size_t j = 0; j < n; ++j) {
      const double phi = rate(ev[j].user, l);
      const double w = std::log(c.horizon - ev[j].time + 1.0);
      nll += phi * w;
      on_pair(ev[j].user, l, phi, w);
    }
  }
  return nll;
}

/// Latent-model NLL on a raw parameter buffer laid out like ParameterStore.
double latent_nll(const Cascade& cascade, std::span<const UserIndex> negatives,
                  std::span<const double> theta, std::size_t users, std::size_t classes,
                  std::size_t dim, const AdjacencyMask* mask, SparseRows* grad);

inline void check_negatives(const Cascade& c, std::span<const UserIndex> negatives) {
  if (negatives.empty()) return;
  const auto infected = infected_users(c);
  for (UserIndex l : negatives) {
    if (std::binary_search(infected.begin(), infected.end(), l)) {
      throw ContractViolation("negative user " + std::to_string(l) + " is infected in cascade '" +
                              c.id + "'");
    }
  }
}

}  // namespace sentinf::detail

#endif  // SENTINF_LIKELIHOOD_KERNEL_HPP
