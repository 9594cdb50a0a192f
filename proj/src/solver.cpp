#include "spturn/solver.hpp"

#include <algorithm>
#include <cmath>

#include "spturn/analysis.hpp"

namespace spturn {

void SolverConfig::validate() const {
  if (residual_tol >= 0.0 && !(residual_tol > 0.0))
    throw ConfigError("solver config: residual_tol must be positive");
  if (!(step_tol > 0.0)) throw ConfigError("solver config: step_tol must be positive");
  if (max_iters < 1) throw ConfigError("solver config: max_iters must be positive");
  for (size_t k = 1; k < continuation.size(); ++k)
    if (!(continuation[k] < continuation[k - 1]))
      throw ConfigError("solver config: continuation ladder must strictly decrease");
}

double DiscreteSolution::value_at(int node) const {
  const Mesh& mesh = layout.mesh;
  if (node == mesh.lo()) return u_minus;
  if (node == mesh.hi()) return u_plus;
  return values[static_cast<size_t>(layout.flat_of_node(node))];
}

std::vector<double> tridiagonal_solve(const TridiagonalMatrix& m, std::vector<double> rhs) {
  const int n = m.size();
  if (static_cast<int>(rhs.size()) != n)
    throw DimensionError("tridiagonal_solve: size mismatch");
  constexpr double kPivotFloor = 1e-300;

  std::vector<double> diag(static_cast<size_t>(n));
  std::vector<double> sup(n > 1 ? static_cast<size_t>(n - 1) : 0);
  for (int k = 0; k < n; ++k) diag[static_cast<size_t>(k)] = m.diag(k);
  for (int k = 0; k + 1 < n; ++k) sup[static_cast<size_t>(k)] = m.sup(k);

  for (int k = 1; k < n; ++k) {
    const double pivot = diag[static_cast<size_t>(k - 1)];
    if (std::abs(pivot) < kPivotFloor)
      throw SingularMatrixError("tridiagonal_solve: pivot underflow at row " +
                                std::to_string(k - 1));
    const double factor = m.sub(k) / pivot;
    diag[static_cast<size_t>(k)] -= factor * sup[static_cast<size_t>(k - 1)];
    rhs[static_cast<size_t>(k)] -= factor * rhs[static_cast<size_t>(k - 1)];
  }
  if (std::abs(diag[static_cast<size_t>(n - 1)]) < kPivotFloor)
    throw SingularMatrixError("tridiagonal_solve: pivot underflow at the last row");

  rhs[static_cast<size_t>(n - 1)] /= diag[static_cast<size_t>(n - 1)];
  for (int k = n - 2; k >= 0; --k)
    rhs[static_cast<size_t>(k)] = (rhs[static_cast<size_t>(k)] -
                                   sup[static_cast<size_t>(k)] * rhs[static_cast<size_t>(k + 1)]) /
                                  diag[static_cast<size_t>(k)];
  return rhs;
}

namespace {

// Reduced step profile: the eps -> 0 limit of the solution, interior to W.
std::vector<double> default_initial_guess(const SchemeLayout& layout, const Problem& p) {
  const Mesh& mesh = layout.mesh;
  std::vector<double> w(static_cast<size_t>(mesh.interior_count()), 0.0);
  for (int i = mesh.lo() + 1; i <= mesh.hi() - 1; ++i) {
    double v = p.u_plus();
    if (p.turning() == TurningPoint::Interior) {
      const double x = mesh.x(i);
      if (x < 0.0)
        v = p.u_minus();
      else if (x == 0.0)
        v = 0.5 * (p.u_minus() + p.u_plus());
    }
    w[static_cast<size_t>(layout.flat_of_node(i))] = v;
  }
  return w;
}

struct NewtonResult {
  std::vector<double> w;
  int iterations = 0;
  double residual_h = 0.0;
  double residual_max = 0.0;
  std::vector<double> history;
  std::vector<int> clamped_per_iter;
  bool converged = false;
};

NewtonResult newton(const SchemeLayout& layout, const Problem& p, const SolverConfig& cfg,
                    std::vector<double> w) {
  const double tol = cfg.residual_tol > 0.0
                         ? cfg.residual_tol
                         : 1e-14 * (1.0 + std::abs(p.u_plus() - p.u_minus()));
  constexpr double kArmijoSigma = 1e-4;
  constexpr double kMinStep = 9.313225746154785e-10;  // 2^-30

  auto clamp_to_w = [&](std::vector<double>& v) {
    int clamped = 0;
    for (double& value : v) {
      const double c = std::clamp(value, p.u_minus(), p.u_plus());
      if (c != value) ++clamped;
      value = c;
    }
    return clamped;
  };

  NewtonResult res;
  clamp_to_w(w);
  std::vector<double> r = residual(layout, p, w);
  double rnorm = h_norm(layout, r);
  res.history.push_back(rnorm);

  std::vector<double> best_w = w;
  double best_rnorm = rnorm;
  int stalled = 0;

  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    if (rnorm <= tol) break;

    TridiagonalMatrix g = jacobian(layout, p, w);
    std::vector<double> d(r.size());
    for (size_t k = 0; k < r.size(); ++k) d[k] = -r[k];
    d = tridiagonal_solve(g, std::move(d));

    double lambda = 1.0;
    std::vector<double> trial;
    std::vector<double> trial_r;
    double trial_norm = 0.0;
    int clamped = 0;
    double chosen_lambda = lambda;
    bool have_fallback = false;
    std::vector<double> fb_w, fb_r;
    double fb_norm = 0.0;
    int fb_clamped = 0;
    double fb_lambda = 1.0;

    while (true) {
      trial = w;
      for (size_t k = 0; k < trial.size(); ++k) trial[k] += lambda * d[k];
      clamped = clamp_to_w(trial);
      trial_r = residual(layout, p, trial);
      trial_norm = h_norm(layout, trial_r);
      if (cfg.damping == Damping::None || trial_norm <= (1.0 - kArmijoSigma * lambda) * rnorm ||
          trial_norm <= tol) {
        chosen_lambda = lambda;
        break;
      }
      if (!have_fallback || trial_norm < fb_norm) {
        have_fallback = true;
        fb_w = trial;
        fb_r = trial_r;
        fb_norm = trial_norm;
        fb_clamped = clamped;
        fb_lambda = lambda;
      }
      lambda *= 0.5;
      if (lambda < kMinStep) {
        trial = fb_w;
        trial_r = fb_r;
        trial_norm = fb_norm;
        clamped = fb_clamped;
        chosen_lambda = fb_lambda;
        break;
      }
    }

    double step_size = 0.0;
    for (size_t k = 0; k < trial.size(); ++k)
      step_size = std::max(step_size, std::abs(trial[k] - w[k]));

    const bool improved = trial_norm < rnorm;
    w = std::move(trial);
    r = std::move(trial_r);
    rnorm = trial_norm;
    res.history.push_back(rnorm);
    res.clamped_per_iter.push_back(clamped);
    ++res.iterations;

    if (rnorm < best_rnorm) {
      best_rnorm = rnorm;
      best_w = w;
    }
    if (!improved || step_size <= cfg.step_tol) {
      if (rnorm > tol) ++stalled;
    } else {
      stalled = 0;
    }
    (void)chosen_lambda;
    if (stalled >= 3) break;
  }

  res.converged = rnorm <= tol;
  res.w = res.converged ? std::move(w) : std::move(best_w);
  const std::vector<double> final_r = residual(layout, p, res.w);
  res.residual_h = h_norm(layout, final_r);
  res.residual_max = max_norm(final_r);
  return res;
}

}  // namespace

DiscreteSolution solve(const SchemeLayout& layout, const Problem& p, const SolverConfig& cfg,
                       const std::optional<std::vector<double>>& initial) {
  cfg.validate();
  if (!cfg.continuation.empty()) {
    const double target = cfg.continuation.back();
    if (std::abs(target - p.epsilon()) > 1e-12 * (1.0 + p.epsilon()))
      throw ConfigError("solver config: continuation ladder must end at the problem's epsilon");
  }

  std::vector<double> start =
      initial ? *initial : default_initial_guess(layout, p);
  if (static_cast<int>(start.size()) != layout.interior_count())
    throw DimensionError("solve: initial guess has the wrong size");

  SolverConfig direct = cfg;
  direct.continuation.clear();

  // Walk the ladder on the same layout, warm-starting each stage. The layout's
  // switching was computed for the target epsilon; larger epsilons only shrink
  // rho, so the stability structure is preserved along the way.
  if (!cfg.continuation.empty()) {
    for (size_t k = 0; k + 1 < cfg.continuation.size(); ++k) {
      const Problem stage = p.with_epsilon(cfg.continuation[k]);
      NewtonResult stage_res = newton(layout, stage, direct, start);
      if (stage_res.converged) start = std::move(stage_res.w);
    }
  }

  NewtonResult res = newton(layout, p, direct, std::move(start));

  DiscreteSolution sol;
  sol.values = std::move(res.w);
  sol.iterations = res.iterations;
  sol.residual_h = res.residual_h;
  sol.residual_max = res.residual_max;
  sol.residual_history = std::move(res.history);
  sol.clamped_per_iter = std::move(res.clamped_per_iter);
  sol.layout = layout;
  sol.u_minus = p.u_minus();
  sol.u_plus = p.u_plus();
  if (!res.converged)
    throw NonConvergenceError("solve: no convergence after " + std::to_string(res.iterations) +
                                  " iterations (best H-norm residual " +
                                  std::to_string(sol.residual_h) + ")",
                              sol.values, sol.residual_h, sol.iterations);
  return sol;
}

}  // namespace spturn
