#pragma once

#include <cmath>
#include <vector>

#include "spturn/analysis.hpp"
#include "spturn/experiment.hpp"

namespace spturn::testing {

inline MeshConfig make_config(double epsilon, int ell, LambdaMode mode, double alpha,
                              int n_steps, TurningPoint nu) {
  MeshConfig cfg;
  cfg.epsilon = epsilon;
  cfg.ell = ell;
  cfg.lambda_mode = mode;
  cfg.alpha = alpha;
  cfg.n_steps = n_steps;
  cfg.ratios = default_ratios(ell);
  cfg.nu = nu;
  return cfg;
}

/// b(u) = u on [1,3], zero source; the source-free sibling of the tanh problem.
inline Problem linear_b_problem(double epsilon, TurningPoint nu) {
  return Problem(epsilon, nu, Polynomial({0.0, 1.0}), nullptr, 1.0, 3.0);
}

/// b(u) = (u-2)^2 + 1 on [1,3]: even about the solution midpoint, range [1,2].
inline Problem quadratic_b_problem(double epsilon, TurningPoint nu) {
  return Problem(epsilon, nu, Polynomial({5.0, -4.0, 1.0}), nullptr, 1.0, 3.0);
}

/// Constant b = beta0 on [1,3].
inline Problem constant_b_problem(double epsilon, TurningPoint nu, double beta0) {
  return Problem(epsilon, nu, Polynomial({beta0}), nullptr, 1.0, 3.0);
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}

}  // namespace spturn::testing
