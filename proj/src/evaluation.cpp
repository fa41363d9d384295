#include "sentinf/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "parallel.hpp"
#include "sentinf/sampler.hpp"
#include "sentinf/simulation.hpp"

namespace sentinf {

double auc(std::span<const double> positives, std::span<const double> negatives) {
  if (positives.empty() || negatives.empty()) return std::numeric_limits<double>::quiet_NaN();
  // Mann-Whitney statistic with mid-ranks for ties.
  std::vector<std::pair<double, bool>> all;
  all.reserve(positives.size() + negatives.size());
  for (double p : positives) all.emplace_back(p, true);
  for (double n : negatives) all.emplace_back(n, false);
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  double rank_sum = 0.0;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    std::size_t pos_in_group = 0;
    while (j < all.size() && all[j].first == all[i].first) {
      if (all[j].second) ++pos_in_group;
      ++j;
    }
    const double mid_rank = 0.5 * static_cast<double>(i + 1 + j);
    rank_sum += mid_rank * static_cast<double>(pos_in_group);
    i = j;
  }
  const double np = static_cast<double>(positives.size());
  const double nn = static_cast<double>(negatives.size());
  return (rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

std::size_t worst_rank(double truth, std::span<const double> others) {
  std::size_t ahead = 0;
  for (double s : others) {
    if (s >= truth) ++ahead;
  }
  return ahead + 1;
}

double mean_reciprocal_rank(std::span<const std::size_t> ranks) {
  if (ranks.empty()) return std::numeric_limits<double>::quiet_NaN();
  double sum = 0.0;
  for (auto r : ranks) sum += 1.0 / static_cast<double>(r);
  return sum / static_cast<double>(ranks.size());
}

double mape(std::span<const double> truth, std::span<const double> predicted) {
  if (truth.size() != predicted.size()) throw ContractViolation("mape: size mismatch");
  if (truth.empty()) return std::numeric_limits<double>::quiet_NaN();
  double sum = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    sum += std::abs(predicted[i] - truth[i]) / truth[i];
  }
  return sum / static_cast<double>(truth.size());
}

namespace {

struct PcdCascade {
  std::vector<double> positives;
  std::vector<double> negatives;
  std::vector<std::size_t> ranks;
};

PcdCascade score_pcd_cascade(const Cascade& c, const TransmissionModel& model, double epsilon) {
  PcdCascade out;
  const std::size_t users = model.users();
  std::vector<char> in_cascade(users, 0);
  for (const auto& e : c.events) in_cascade[e.user] = 1;

  const double t_after = c.last_time() + epsilon;
  for (std::size_t v = 0; v < users; ++v) {
    if (!in_cascade[v]) {
      out.negatives.push_back(
          infection_likelihood_at(c, static_cast<UserIndex>(v), t_after, model));
    }
  }

  std::vector<char> infected_before(users, 0);
  std::size_t done = 0;  // events strictly before the current timestamp
  std::vector<double> others;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double ti = c.events[i].time;
    while (done < i && c.events[done].time < ti) infected_before[c.events[done++].user] = 1;
    if (done == 0) continue;  // no strictly earlier event

    const double truth = infection_likelihood_at(c, c.events[i].user, ti, model);
    out.positives.push_back(truth);
    others.clear();
    for (std::size_t v = 0; v < users; ++v) {
      if (v == c.events[i].user || infected_before[v]) continue;
      others.push_back(infection_likelihood_at(c, static_cast<UserIndex>(v), ti, model));
    }
    out.ranks.push_back(worst_rank(truth, others));
  }
  return out;
}

}  // namespace

PcdResult evaluate_pcd(std::span<const Cascade> cascades, const TransmissionModel& model,
                       const PcdOptions& options) {
  std::vector<PcdCascade> scored(cascades.size());
  detail::parallel_for(cascades.size(), options.threads, [&](std::size_t i) {
    scored[i] = score_pcd_cascade(cascades[i], model, options.epsilon);
  });

  PcdResult result;
  std::vector<std::size_t> ranks;
  std::vector<double> pooled_pos;
  std::vector<double> pooled_neg;
  double auc_sum = 0.0;
  for (const auto& s : scored) {
    ranks.insert(ranks.end(), s.ranks.begin(), s.ranks.end());
    if (s.positives.empty() || s.negatives.empty()) {
      ++result.skipped_cascades;
      continue;
    }
    if (options.pooled_auc) {
      pooled_pos.insert(pooled_pos.end(), s.positives.begin(), s.positives.end());
      pooled_neg.insert(pooled_neg.end(), s.negatives.begin(), s.negatives.end());
    } else {
      auc_sum += auc(s.positives, s.negatives);
    }
    ++result.auc_cascades;
  }
  if (options.pooled_auc) {
    result.auc = auc(pooled_pos, pooled_neg);
  } else {
    result.auc = result.auc_cascades ? auc_sum / static_cast<double>(result.auc_cascades)
                                     : std::numeric_limits<double>::quiet_NaN();
  }
  result.mrr = mean_reciprocal_rank(ranks);
  result.ranked_events = ranks.size();
  return result;
}

WbrResult evaluate_wbr(std::span<const Cascade> cascades, const ParentMap& parents,
                       const TransmissionModel& model) {
  WbrResult result;
  std::vector<std::size_t> ranks;
  std::vector<double> others;
  for (const auto& c : cascades) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      const auto& target = c.events[i];
      auto it = parents.find({c.id, target.user});
      std::size_t earlier = 0;
      while (earlier < c.size() && c.events[earlier].time < target.time) ++earlier;
      if (earlier == 0) {
        if (it != parents.end()) ++result.no_candidates;
        continue;
      }
      if (it == parents.end()) {
        ++result.missing_parent;
        continue;
      }
      const UserIndex parent = it->second;
      double truth = -1.0;
      others.clear();
      for (std::size_t j = 0; j < earlier; ++j) {
        const auto& src = c.events[j];
        const double score = infection_density(model.rate(src.user, target.user, c.sentiment),
                                               target.time, src.time);
        if (src.user == parent) {
          truth = score;
        } else {
          others.push_back(score);
        }
      }
      if (truth < 0.0) {
        ++result.invalid_parent;
        continue;
      }
      ranks.push_back(worst_rank(truth, others));
    }
  }
  result.scored = ranks.size();
  if (ranks.empty()) {
    result.accuracy = result.mrr = std::numeric_limits<double>::quiet_NaN();
    return result;
  }
  result.accuracy = static_cast<double>(std::count(ranks.begin(), ranks.end(), std::size_t{1})) /
                    static_cast<double>(ranks.size());
  result.mrr = mean_reciprocal_rank(ranks);
  return result;
}

double predict_cascade_size(const Cascade& cascade, const TransmissionModel& model,
                            const CspOptions& options) {
  const std::size_t p = options.seeds;
  if (cascade.size() <= p || p == 0) {
    throw ContractViolation("predict_cascade_size: cascade '" + cascade.id +
                            "' has no events beyond the seeds");
  }
  std::vector<Infection> initial;
  for (std::size_t i = 0; i < p; ++i) {
    initial.push_back({cascade.events[i].user, cascade.events[i].time, std::nullopt});
  }
  SimulationWindow window;
  window.start = cascade.events[p - 1].time;
  window.end = cascade.last_time();
  window.scales = options.scales;
  window.sentiment = cascade.sentiment;

  const std::uint64_t cascade_key = stable_hash(cascade.id);
  double total = 0.0;
  for (std::size_t sim = 0; sim < options.simulations; ++sim) {
    Rng rng(derive_seed(options.seed, cascade_key, sim));
    total += static_cast<double>(simulate_cascade(model, initial, window, rng).size());
  }
  return total / static_cast<double>(options.simulations);
}

CspResult evaluate_csp(std::span<const Cascade> cascades, const TransmissionModel& model,
                       const CspOptions& options) {
  if (options.simulations == 0 || options.scales == 0 || options.seeds == 0) {
    throw ConfigError("csp: seeds, simulations and scales must be positive");
  }
  CspResult result;
  std::vector<const Cascade*> eligible;
  for (const auto& c : cascades) {
    if (c.size() > options.seeds && c.last_time() > c.events[options.seeds - 1].time) {
      eligible.push_back(&c);
    } else {
      ++result.excluded;
    }
  }
  result.predicted.resize(eligible.size());
  detail::parallel_for(eligible.size(), options.threads, [&](std::size_t i) {
    result.predicted[i] = predict_cascade_size(*eligible[i], model, options);
  });
  for (const Cascade* c : eligible) result.truth.push_back(static_cast<double>(c->size()));
  result.evaluated = eligible.size();
  result.mape = mape(result.truth, result.predicted);
  return result;
}

std::vector<Fold> kfold_split(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw ConfigError("kfold: need at least two folds");
  if (n < k) throw ConfigError("kfold: fewer cascades than folds");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<Fold> folds(k);
  for (std::size_t pos = 0; pos < n; ++pos) folds[pos % k].test.push_back(order[pos]);
  for (auto& f : folds) {
    std::sort(f.test.begin(), f.test.end());
    std::vector<char> in_test(n, 0);
    for (auto i : f.test) in_test[i] = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (!in_test[i]) f.train.push_back(i);
    }
  }
  return folds;
}

MetricSummary summarize(std::vector<double> per_fold) {
  MetricSummary s;
  s.per_fold = std::move(per_fold);
  const auto n = static_cast<double>(s.per_fold.size());
  if (s.per_fold.empty()) {
    s.mean = s.sd = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  s.mean = std::accumulate(s.per_fold.begin(), s.per_fold.end(), 0.0) / n;
  if (s.per_fold.size() > 1) {
    double ss = 0.0;
    for (double v : s.per_fold) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

}  // namespace sentinf
