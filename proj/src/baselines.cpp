#include "sentinf/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "likelihood_kernel.hpp"

namespace sentinf {

double PairwiseRates::get(UserIndex src, UserIndex dst) const {
  auto it = rates_.find(key(src, dst));
  return it == rates_.end() ? 0.0 : it->second;
}

std::vector<PairwiseRates::Entry> PairwiseRates::entries() const {
  std::vector<Entry> out;
  out.reserve(rates_.size());
  for (const auto& [k, v] : rates_) {
    out.push_back({static_cast<UserIndex>(k >> 32), static_cast<UserIndex>(k & 0xffffffffu), v});
  }
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });
  return out;
}

namespace {

std::uint64_t pair_key(UserIndex a, UserIndex b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

struct PairCounts {
  std::unordered_map<UserIndex, std::uint32_t> cascades_with;      // per user
  std::unordered_map<std::uint64_t, std::uint32_t> successes;      // j strictly before i
  std::unordered_map<std::uint64_t, std::uint32_t> co_occurrences;  // both infected, ordered key
};

PairCounts count_pairs(const std::vector<Cascade>& cascades) {
  PairCounts counts;
  for (const auto& c : cascades) {
    const auto& ev = c.events;
    for (const auto& e : ev) ++counts.cascades_with[e.user];
    for (std::size_t a = 0; a < ev.size(); ++a) {
      for (std::size_t b = 0; b < ev.size(); ++b) {
        if (a == b) continue;
        ++counts.co_occurrences[pair_key(ev[a].user, ev[b].user)];
        if (ev[a].time < ev[b].time) ++counts.successes[pair_key(ev[a].user, ev[b].user)];
      }
    }
  }
  return counts;
}

}  // namespace

PairwiseRates fit_ct_bernoulli(const std::vector<Cascade>& cascades, BernoulliTrials trials) {
  const auto counts = count_pairs(cascades);
  PairwiseRates rates;
  for (const auto& [k, succ] : counts.successes) {
    const auto src = static_cast<UserIndex>(k >> 32);
    const auto dst = static_cast<UserIndex>(k & 0xffffffffu);
    const double denom = trials == BernoulliTrials::kInfluencerCascades
                             ? counts.cascades_with.at(src)
                             : counts.co_occurrences.at(k);
    rates.set(src, dst, succ / denom);
  }
  return rates;
}

PairwiseRates fit_ct_jaccard(const std::vector<Cascade>& cascades) {
  const auto counts = count_pairs(cascades);
  PairwiseRates rates;
  for (const auto& [k, succ] : counts.successes) {
    const auto src = static_cast<UserIndex>(k >> 32);
    const auto dst = static_cast<UserIndex>(k & 0xffffffffu);
    const double either = static_cast<double>(counts.cascades_with.at(src)) +
                          counts.cascades_with.at(dst) - counts.co_occurrences.at(k);
    rates.set(src, dst, succ / either);
  }
  return rates;
}

NetRateObjective::NetRateObjective(std::vector<std::pair<UserIndex, UserIndex>> pairs)
    : pairs_(std::move(pairs)) {
  for (std::size_t r = 0; r < pairs_.size(); ++r) {
    if (!index_.emplace(pair_key(pairs_[r].first, pairs_[r].second), r).second) {
      throw ContractViolation("NetRateObjective: duplicate pair");
    }
  }
}

double NetRateObjective::cascade_value(const Cascade& cascade,
                                       std::span<const UserIndex> negatives,
                                       std::span<const double> theta, SparseRows* grad) const {
  auto rate = [&](UserIndex s, UserIndex d) {
    auto it = index_.find(pair_key(s, d));
    return it == index_.end() ? 0.0 : -std::expm1(-theta[it->second]);
  };
  auto on_pair = [&](UserIndex s, UserIndex d, double phi, double w) {
    if (!grad) return;
    auto it = index_.find(pair_key(s, d));
    if (it == index_.end()) return;
    auto& g = (*grad)[it->second];
    g.resize(1, 0.0);
    g[0] += w * (1.0 - phi);  // dphi/da = exp(-a) = 1 - phi
  };
  return detail::cascade_nll(cascade, negatives, rate, on_pair);
}

NetRateResult fit_netrate(const Dataset& dataset, const PairwiseRates& init,
                          const TrainerConfig& config) {
  config.validate();
  NetRateResult out;
  if (config.max_epochs == 0) {
    out.rates = init;
    return out;
  }

  std::unordered_map<std::uint64_t, std::size_t> seen;
  std::vector<std::pair<UserIndex, UserIndex>> pairs;
  std::vector<double> theta;
  auto add_pair = [&](UserIndex s, UserIndex d, double p0) {
    if (!seen.emplace(pair_key(s, d), pairs.size()).second) return;
    constexpr double kMaxRate = 1.0 - 1e-12;
    pairs.emplace_back(s, d);
    theta.push_back(-std::log1p(-std::clamp(p0, 0.0, kMaxRate)));
  };
  for (const auto& e : init.entries()) add_pair(e.src, e.dst, e.rate);
  for (const auto& c : dataset.cascades) {
    for (std::size_t a = 0; a < c.events.size(); ++a) {
      for (std::size_t b = a + 1; b < c.events.size(); ++b) {
        if (c.events[a].time < c.events[b].time) add_pair(c.events[a].user, c.events[b].user, 0.0);
      }
    }
  }

  const auto cascades = trainable_cascades(dataset.cascades);
  if (cascades.empty()) throw ConfigError("dataset has no trainable cascade");
  const auto sampler = NegativeSampler::from_cascades(dataset.cascades, dataset.users);
  const NetRateObjective objective(pairs);
  out.log = run_projected_sgd(objective, theta, cascades, sampler, config);

  for (std::size_t r = 0; r < pairs.size(); ++r) {
    const double phi = -std::expm1(-theta[r]);
    if (phi > 0.0) out.rates.set(pairs[r].first, pairs[r].second, phi);
  }
  return out;
}

double score_pairwise(const PairwiseRates& rates, UserIndex src, UserIndex dst, double t,
                      double t_src) {
  return hazard(rates.get(src, dst), t, t_src);
}

}  // namespace sentinf
