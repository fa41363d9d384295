#include "sentinf/simulation.hpp"

#include <cmath>
#include <stdexcept>

namespace sentinf {

double scale_infection_probability(double phi, double t_src, double tau_prev, double tau_next) {
  if (tau_next <= tau_prev || t_src > tau_prev) return 0.0;
  const double ratio = (tau_prev - t_src + 1.0) / (tau_next - t_src + 1.0);
  return -std::expm1(phi * std::log(ratio));
}

std::vector<Infection> simulate_cascade(const TransmissionModel& model,
                                        const std::vector<Infection>& initial,
                                        const SimulationWindow& window, Rng& rng) {
  if (window.scales == 0) throw ConfigError("simulation needs at least one time scale");
  const std::size_t users = model.users();
  std::vector<Infection> out = initial;
  std::vector<char> infected(users, 0);
  for (const auto& inf : initial) {
    if (inf.user >= users) throw ConfigError("simulation: initial user outside universe");
    infected[inf.user] = 1;
  }

  // Rates from each infective user to every user, filled when it becomes infective.
  std::vector<std::vector<double>> rates;
  std::vector<std::size_t> infective;  // indices into `out`
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> log_ratio;
  std::vector<double> attempt_p;

  const double width = (window.end - window.start) / static_cast<double>(window.scales);
  for (std::size_t s = 1; s <= window.scales; ++s) {
    const double tau_prev = window.start + width * static_cast<double>(s - 1);
    const double tau_next = s == window.scales ? window.end
                                               : window.start + width * static_cast<double>(s);
    for (std::size_t idx = infective.size(); idx < out.size(); ++idx) {
      if (out[idx].time > tau_prev) break;
      infective.push_back(idx);
      auto& row = rates.emplace_back(users, 0.0);
      for (std::size_t v = 0; v < users; ++v) {
        if (v != out[idx].user) {
          row[v] = model.rate(out[idx].user, static_cast<UserIndex>(v), window.sentiment);
        }
      }
    }
    if (infective.empty()) continue;

    log_ratio.resize(infective.size());
    for (std::size_t a = 0; a < infective.size(); ++a) {
      const double t_u = out[infective[a]].time;
      log_ratio[a] = std::log((tau_prev - t_u + 1.0) / (tau_next - t_u + 1.0));
    }

    const double midpoint = 0.5 * (tau_prev + tau_next);
    const std::size_t before = out.size();
    for (std::size_t v = 0; v < users; ++v) {
      if (infected[v]) continue;
      double log_stay = 0.0;
      for (std::size_t a = 0; a < infective.size(); ++a) log_stay += rates[a][v] * log_ratio[a];
      const double p_any = -std::expm1(log_stay);
      if (!(uniform(rng) < p_any)) continue;

      Infection inf{static_cast<UserIndex>(v), midpoint, std::nullopt};
      if (window.sample_parents) {
        // Exact draw of the success pattern conditioned on at least one
        // success: pick the first success, then the rest independently.
        attempt_p.resize(infective.size());
        for (std::size_t a = 0; a < infective.size(); ++a) {
          attempt_p[a] = -std::expm1(rates[a][v] * log_ratio[a]);
        }
        double target = uniform(rng) * p_any;
        double none_so_far = 1.0;
        std::size_t first = infective.size() - 1;
        for (std::size_t a = 0; a < infective.size(); ++a) {
          const double mass = none_so_far * attempt_p[a];
          if (target < mass && attempt_p[a] > 0.0) {
            first = a;
            break;
          }
          target -= mass;
          none_so_far *= 1.0 - attempt_p[a];
        }
        while (first > 0 && attempt_p[first] <= 0.0) --first;
        std::vector<std::size_t> successes{first};
        for (std::size_t a = first + 1; a < infective.size(); ++a) {
          if (uniform(rng) < attempt_p[a]) successes.push_back(a);
        }
        std::uniform_int_distribution<std::size_t> choose(0, successes.size() - 1);
        inf.parent = out[infective[successes[choose(rng)]]].user;
      }
      out.push_back(inf);
    }
    for (std::size_t idx = before; idx < out.size(); ++idx) infected[out[idx].user] = 1;
  }
  return out;
}

}  // namespace sentinf
