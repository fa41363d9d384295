#include "sentinf/optimizer.hpp"

#include <cassert>
#include <cmath>

namespace sentinf {

double batch_value(const BatchObjective& objective, const Batch& batch,
                   std::span<const double> theta, SparseRows* grad) {
  double total = 0.0;
  for (std::size_t c = 0; c < batch.cascades.size(); ++c) {
    total += objective.cascade_value(*batch.cascades[c], batch.negatives[c], theta, grad);
  }
  return total;
}

AdadeltaRow& AdadeltaState::row(std::size_t index, std::size_t width) {
  auto& r = rows_[index];
  if (r.grad_sq.empty()) {
    r.grad_sq.assign(width, 0.0);
    r.update_sq.assign(width, 0.0);
  }
  return r;
}

const AdadeltaRow* AdadeltaState::find(std::size_t index) const {
  auto it = rows_.find(index);
  return it == rows_.end() ? nullptr : &it->second;
}

std::vector<double> adadelta_step(std::span<const double> g, AdadeltaRow& state, double rho,
                                  double epsilon) {
  std::vector<double> delta(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) {
    state.grad_sq[x] = rho * state.grad_sq[x] + (1.0 - rho) * g[x] * g[x];
    delta[x] = -std::sqrt(state.update_sq[x] + epsilon) / std::sqrt(state.grad_sq[x] + epsilon) *
               g[x];
    state.update_sq[x] = rho * state.update_sq[x] + (1.0 - rho) * delta[x] * delta[x];
  }
  return delta;
}

BacktrackResult projected_backtracking_update(const BatchObjective& objective,
                                              std::vector<double>& theta,
                                              const SparseRows& gradient,
                                              const SparseRows& updates, const Batch& batch,
                                              double objective_before,
                                              const BacktrackConfig& config) {
  const std::size_t width = objective.row_width();
  BacktrackResult result;
  result.objective_before = objective_before;
  result.objective_after = objective_before;

  // Saved rows so a rejected step can be undone exactly.
  std::vector<std::pair<std::size_t, std::vector<double>>> saved;
  saved.reserve(updates.size());
  for (const auto& [row, delta] : updates) {
    saved.emplace_back(row, std::vector<double>(theta.begin() + row * width,
                                                theta.begin() + (row + 1) * width));
  }

  double scale = 1.0;
  for (std::size_t attempt = 0; attempt <= config.max_backtracks; ++attempt) {
    double directional = 0.0;
    std::size_t s = 0;
    for (const auto& [row, delta] : updates) {
      const auto& old = saved[s++].second;
      auto git = gradient.find(row);
      for (std::size_t x = 0; x < width; ++x) {
        const double next = project(old[x] + scale * delta[x]);
        theta[row * width + x] = next;
        if (git != gradient.end()) directional += git->second[x] * (next - old[x]);
      }
    }
    const double after = batch_value(objective, batch, theta);
    if (after - objective_before <= config.sigma * directional) {
      result.accepted = true;
      result.objective_after = after;
      result.directional = directional;
      return result;
    }
    if (attempt < config.max_backtracks) {
      scale *= config.beta;
      ++result.backtracks;
    }
  }

  for (const auto& [row, old] : saved) {
    std::copy(old.begin(), old.end(), theta.begin() + row * width);
  }
  return result;
}

}  // namespace sentinf
