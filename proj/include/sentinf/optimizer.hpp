#ifndef SENTINF_OPTIMIZER_HPP
#define SENTINF_OPTIMIZER_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "sentinf/cascade.hpp"
#include "sentinf/parameters.hpp"

namespace sentinf {

/// A sum-over-cascades objective on a flat, row-structured parameter vector.
/// Implemented by the latent model and by NetRate so both share the
/// projected Adadelta machinery.
class BatchObjective {
 public:
  virtual ~BatchObjective() = default;
  virtual std::size_t row_width() const = 0;
  /// Contribution of one cascade; adds its gradient into `grad` when non-null.
  virtual double cascade_value(const Cascade& cascade, std::span<const UserIndex> negatives,
                               std::span<const double> theta, SparseRows* grad) const = 0;
};

struct Batch {
  std::vector<const Cascade*> cascades;
  std::vector<std::vector<UserIndex>> negatives;  // aligned with cascades
};

double batch_value(const BatchObjective& objective, const Batch& batch,
                   std::span<const double> theta, SparseRows* grad = nullptr);

/// Decayed accumulators of one parameter row. Zero on first touch.
struct AdadeltaRow {
  std::vector<double> grad_sq;
  std::vector<double> update_sq;
};

class AdadeltaState {
 public:
  AdadeltaRow& row(std::size_t index, std::size_t width);
  const AdadeltaRow* find(std::size_t index) const;
  std::size_t touched_rows() const { return rows_.size(); }

 private:
  std::unordered_map<std::size_t, AdadeltaRow> rows_;
};

/// E[g^2] <- rho E[g^2] + (1-rho) g^2; delta = -RMS[dx]_{prev} / RMS[g] * g;
/// E[dx^2] <- rho E[dx^2] + (1-rho) delta^2, where RMS[x] = sqrt(E[x^2] + eps).
std::vector<double> adadelta_step(std::span<const double> g, AdadeltaRow& state, double rho,
                                  double epsilon);

/// psi(x) = max(x, 0).
inline double project(double x) { return x < 0.0 ? 0.0 : x; }

struct BacktrackConfig {
  double sigma = 0.01;
  double beta = 0.5;
  std::size_t max_backtracks = 20;
};

struct BacktrackResult {
  bool accepted = false;
  std::size_t backtracks = 0;          // number of times the update was scaled by beta
  double objective_before = 0.0;
  double objective_after = 0.0;        // equals objective_before when rejected
  double directional = 0.0;            // Tr(grad^T (E_next - E)) of the accepted step
};

/// Applies E_next = psi(E + delta) to the rows of `updates`, shrinking delta by
/// beta while O(E_next) - O(E) > sigma * Tr(grad^T (E_next - E)). The batch and
/// its negatives stay fixed throughout. If no step is accepted within
/// max_backtracks reductions, `theta` is left unchanged.
BacktrackResult projected_backtracking_update(const BatchObjective& objective,
                                              std::vector<double>& theta,
                                              const SparseRows& gradient,
                                              const SparseRows& updates, const Batch& batch,
                                              double objective_before,
                                              const BacktrackConfig& config);

}  // namespace sentinf

#endif  // SENTINF_OPTIMIZER_HPP
