#pragma once

#include <optional>
#include <vector>

#include "spturn/scheme.hpp"

namespace spturn {

enum class Damping { None, ArmijoHalving };

struct SolverConfig {
  /// Convergence threshold on ||Tw||_H; negative means the scale-aware
  /// default 1e-14 * (1 + |U_+ - U_-|).
  double residual_tol = -1.0;
  /// Stagnation threshold on the max-norm of the accepted Newton update.
  double step_tol = 1e-12;
  int max_iters = 50;
  Damping damping = Damping::ArmijoHalving;
  /// Optional continuation ladder: strictly decreasing epsilons ending at the
  /// target problem's epsilon. Empty = direct solve.
  std::vector<double> continuation;

  void validate() const;
};

struct DiscreteSolution {
  std::vector<double> values;             // interior nodes, flat
  int iterations = 0;
  double residual_h = 0.0;
  double residual_max = 0.0;
  std::vector<double> residual_history;   // H-norm after each accepted step
  std::vector<int> clamped_per_iter;      // components clamped per accepted step
  SchemeLayout layout;
  double u_minus = 0.0, u_plus = 0.0;

  /// Value at a mesh node index, including the pinned boundary values.
  double value_at(int node) const;
};

/// Thomas elimination. Throws SingularMatrixError if a pivot magnitude falls
/// below 1e-300.
std::vector<double> tridiagonal_solve(const TridiagonalMatrix& m, std::vector<double> rhs);

/// Damped Newton iteration on T w = 0 with iterates clamped to
/// [U_-, U_+]. Throws NonConvergenceError carrying the best iterate.
DiscreteSolution solve(const SchemeLayout& layout, const Problem& p,
                       const SolverConfig& cfg = {},
                       const std::optional<std::vector<double>>& initial = std::nullopt);

}  // namespace spturn
