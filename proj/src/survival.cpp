#include "sentinf/survival.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "likelihood_kernel.hpp"

namespace sentinf {

double transmission_rate(std::span<const double> influence_row,
                         std::span<const double> susceptibility_row) {
  if (influence_row.size() != susceptibility_row.size()) {
    throw ContractViolation("transmission_rate: dimension mismatch");
  }
  const double inner = std::inner_product(influence_row.begin(), influence_row.end(),
                                          susceptibility_row.begin(), 0.0);
  return -std::expm1(-inner);
}

double transmission_rate(const ParameterStore& params, UserIndex src, UserIndex dst,
                         SentimentClass k) {
  return transmission_rate(params.influence(src, k), params.susceptibility(dst, k));
}

double hazard(double phi, double t, double t_src) {
  if (t < t_src) return 0.0;
  return phi / (t - t_src + 1.0);
}

double log_survivor(double phi, double t, double t_src) {
  if (t < t_src) throw ContractViolation("log_survivor: t precedes source infection");
  return -phi * std::log(t - t_src + 1.0);
}

double infection_density(double phi, double t, double t_src) {
  if (t < t_src) return 0.0;
  return hazard(phi, t, t_src) * std::exp(log_survivor(phi, t, t_src));
}

double LatentModel::rate(UserIndex src, UserIndex dst, SentimentClass k) const {
  if (mask_ && !mask_->allows(src, dst)) return 0.0;
  return transmission_rate(*params_, src, dst, k);
}

double event_likelihood(const Cascade& cascade, std::size_t i, const TransmissionModel& model) {
  if (i >= cascade.size()) throw ContractViolation("event_likelihood: index out of range");
  const auto& ev = cascade.events;
  const double ti = ev[i].time;
  double hazard_sum = 0.0;
  double log_surv = 0.0;
  std::size_t earlier = 0;
  for (std::size_t j = 0; j < ev.size() && ev[j].time < ti; ++j) {
    const double phi = model.rate(ev[j].user, ev[i].user, cascade.sentiment);
    hazard_sum += hazard(phi, ti, ev[j].time);
    log_surv += log_survivor(phi, ti, ev[j].time);
    ++earlier;
  }
  if (earlier == 0) {
    throw ContractViolation("event_likelihood: event has no strictly earlier event");
  }
  return std::max(hazard_sum, kHazardFloor) * std::exp(log_surv);
}

double event_likelihood(const Cascade& cascade, std::size_t i, const ParameterStore& params) {
  return event_likelihood(cascade, i, LatentModel(params));
}

double infection_likelihood_at(const Cascade& cascade, UserIndex dst, double t,
                               const TransmissionModel& model) {
  double hazard_sum = 0.0;
  double log_surv = 0.0;
  for (const auto& e : cascade.events) {
    if (!(e.time < t)) break;
    const double phi = model.rate(e.user, dst, cascade.sentiment);
    hazard_sum += hazard(phi, t, e.time);
    log_surv += log_survivor(phi, t, e.time);
  }
  return hazard_sum * std::exp(log_surv);
}

double cascade_log_likelihood(const Cascade& cascade, const TransmissionModel& model,
                              std::span<const UserIndex> negatives) {
  if (cascade.size() < 2) {
    throw ContractViolation("cascade_log_likelihood: cascade '" + cascade.id +
                            "' has fewer than two events");
  }
  detail::check_negatives(cascade, negatives);
  const SentimentClass k = cascade.sentiment;
  return -detail::cascade_nll(
      cascade, negatives, [&](UserIndex s, UserIndex d) { return model.rate(s, d, k); },
      [](UserIndex, UserIndex, double, double) {});
}

double cascade_log_likelihood(const Cascade& cascade, const ParameterStore& params,
                              std::span<const UserIndex> negatives) {
  return cascade_log_likelihood(cascade, LatentModel(params), negatives);
}

ObjectiveValue objective(const Dataset& dataset, const TransmissionModel& model,
                         const NegativeSets& negatives) {
  ObjectiveValue out;
  static const std::vector<UserIndex> kNone;
  for (const Cascade* c : trainable_cascades(dataset.cascades)) {
    auto it = negatives.find(c->id);
    const auto& negs = it == negatives.end() ? kNone : it->second;
    const double contribution = -cascade_log_likelihood(*c, model, negs);
    out.contributions.push_back(contribution);
    out.total += contribution;
  }
  return out;
}

ObjectiveValue objective(const Dataset& dataset, const ParameterStore& params,
                         const NegativeSets& negatives) {
  const AdjacencyMask* mask = dataset.adjacency ? &*dataset.adjacency : nullptr;
  return objective(dataset, LatentModel(params, mask), negatives);
}

std::vector<double> CascadeGradient::influence_matrix(UserIndex user, std::size_t classes) const {
  std::vector<double> m(classes * dim, 0.0);
  if (auto it = influence.find(user); it != influence.end()) {
    std::copy(it->second.begin(), it->second.end(), m.begin() + sentiment * dim);
  }
  return m;
}

std::vector<double> CascadeGradient::susceptibility_matrix(UserIndex user,
                                                           std::size_t classes) const {
  std::vector<double> m(classes * dim, 0.0);
  if (auto it = susceptibility.find(user); it != susceptibility.end()) {
    std::copy(it->second.begin(), it->second.end(), m.begin() + sentiment * dim);
  }
  return m;
}

namespace detail {

double latent_nll(const Cascade& cascade, std::span<const UserIndex> negatives,
                  std::span<const double> theta, std::size_t users, std::size_t classes,
                  std::size_t dim, const AdjacencyMask* mask, SparseRows* grad) {
  const SentimentClass k = cascade.sentiment;
  const std::size_t sus_offset = users * classes;
  auto in_row = [&](UserIndex u) { return std::size_t{u} * classes + k; };
  auto sus_row = [&](UserIndex u) { return sus_offset + std::size_t{u} * classes + k; };
  auto row = [&](std::size_t r) { return theta.subspan(r * dim, dim); };

  auto rate = [&](UserIndex s, UserIndex d) {
    if (mask && !mask->allows(s, d)) return 0.0;
    return transmission_rate(row(in_row(s)), row(sus_row(d)));
  };
  auto on_pair = [&](UserIndex s, UserIndex d, double phi, double w) {
    if (!grad) return;
    if (mask && !mask->allows(s, d)) return;
    // dphi/dI_s = (1 - phi) S_d and dphi/dS_d = (1 - phi) I_s, row k only.
    const double scale = w * (1.0 - phi);
    auto in = row(in_row(s));
    auto sus = row(sus_row(d));
    auto& gi = (*grad)[in_row(s)];
    auto& gs = (*grad)[sus_row(d)];
    gi.resize(dim, 0.0);
    gs.resize(dim, 0.0);
    for (std::size_t x = 0; x < dim; ++x) {
      gi[x] += scale * sus[x];
      gs[x] += scale * in[x];
    }
  };
  return cascade_nll(cascade, negatives, rate, on_pair);
}

}  // namespace detail

double cascade_negative_log_likelihood(const Cascade& cascade, const ParameterStore& params,
                                       std::span<const UserIndex> negatives,
                                       const AdjacencyMask* mask, SparseRows* grad) {
  return detail::latent_nll(cascade, negatives, params.values(), params.users(),
                            params.classes(), params.dim(), mask, grad);
}

CascadeGradient gradients(const Cascade& cascade, const ParameterStore& params,
                          std::span<const UserIndex> negatives, const AdjacencyMask* mask) {
  if (cascade.size() < 2) {
    throw ContractViolation("gradients: cascade '" + cascade.id + "' has fewer than two events");
  }
  detail::check_negatives(cascade, negatives);
  SparseRows rows;
  cascade_negative_log_likelihood(cascade, params, negatives, mask, &rows);

  CascadeGradient out;
  out.sentiment = cascade.sentiment;
  out.dim = params.dim();
  const std::size_t per_block = params.users() * params.classes();
  for (auto& [row, g] : rows) {
    const bool is_influence = row < per_block;
    const auto user = static_cast<UserIndex>((is_influence ? row : row - per_block) /
                                             params.classes());
    (is_influence ? out.influence : out.susceptibility)[user] = std::move(g);
  }
  return out;
}

}  // namespace sentinf
