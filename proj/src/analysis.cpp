#include "spturn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace spturn {

double h_norm(const SchemeLayout& layout, const std::vector<double>& w) {
  if (w.size() != layout.chi.size())
    throw DimensionError("h_norm: expected " + std::to_string(layout.chi.size()) + " values");
  double s = 0.0;
  for (size_t k = 0; k < w.size(); ++k) s += layout.chi[k] * std::abs(w[k]);
  return s;
}

double max_norm(const std::vector<double>& w) {
  double s = 0.0;
  for (double v : w) s = std::max(s, std::abs(v));
  return s;
}

double order(double e_coarse, double e_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0))
    throw std::domain_error("order: errors must be positive");
  return (std::log(e_coarse) - std::log(e_fine)) / std::log(2.0);
}

double eps_order(double e1_at_4eps, double e1_at_eps) {
  if (!(e1_at_4eps > 0.0) || !(e1_at_eps > 0.0))
    throw std::domain_error("eps_order: errors must be positive");
  return (std::log(e1_at_4eps) - std::log(e1_at_eps)) / std::log(4.0);
}

double theoretical_delta(double epsilon, int ell, double lambda, int n_steps) {
  const double ratio = iterated_log(lambda, ell) / n_steps;
  return epsilon * ratio * ratio;
}

ErrorReport error_report(const DiscreteSolution& sol, const Problem& p) {
  if (!p.exact() || !p.exact()->value)
    throw MissingExactSolutionError("error_report: the problem has no exact solution");
  const SchemeLayout& layout = sol.layout;
  const Mesh& mesh = layout.mesh;

  std::vector<double> err(sol.values.size(), 0.0);
  for (int i = mesh.lo() + 1; i <= mesh.hi() - 1; ++i) {
    const size_t k = static_cast<size_t>(layout.flat_of_node(i));
    err[k] = sol.values[k] - p.exact()->value(mesh.x(i));
  }

  ErrorReport rep;
  rep.E = max_norm(err);
  rep.E1 = h_norm(layout, err);
  rep.epsilon = p.epsilon();
  rep.n_steps = mesh.half_steps();
  if (mesh.config()) {
    const MeshConfig& cfg = *mesh.config();
    rep.ell = cfg.ell;
    rep.lambda_mode = cfg.lambda_mode;
    rep.alpha = cfg.alpha;
    rep.delta = theoretical_delta(cfg.epsilon, cfg.ell, cfg.lambda(), cfg.n_steps);
  } else {
    rep.delta = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

LMatrixReport certify_l_matrix(const TridiagonalMatrix& m) {
  LMatrixReport rep;
  rep.pass = true;
  const int n = m.size();
  for (int k = 0; k < n; ++k) {
    if (!(m.diag(k) > 0.0)) {
      rep = {false, k, k, m.diag(k)};
      return rep;
    }
    if (k > 0 && m.sub(k) > 0.0) {
      rep = {false, k, k - 1, m.sub(k)};
      return rep;
    }
    if (k < n - 1 && m.sup(k) > 0.0) {
      rep = {false, k, k + 1, m.sup(k)};
      return rep;
    }
  }
  return rep;
}

RowSumReport certify_row_sums(const SchemeLayout& layout, const Problem& p,
                              const TridiagonalMatrix& m, const std::vector<double>& w) {
  const int n = m.size();
  if (n != layout.interior_count() || static_cast<int>(w.size()) != n)
    throw DimensionError("certify_row_sums: size mismatch");

  RowSumReport rep;
  rep.bound = 0.5 * p.b_lower();
  rep.row_sums.assign(static_cast<size_t>(n), 0.0);

  // s_i = (chi_{i-1} g_{i-1,i} + chi_i g_{ii} + chi_{i+1} g_{i+1,i}) / chi_i,
  // accumulated in extended precision; the formal boundary entries vanish.
  for (int k = 0; k < n; ++k) {
    long double s = static_cast<long double>(layout.chi[static_cast<size_t>(k)]) * m.diag(k);
    if (k > 0) s += static_cast<long double>(layout.chi[static_cast<size_t>(k - 1)]) * m.sup(k - 1);
    if (k < n - 1)
      s += static_cast<long double>(layout.chi[static_cast<size_t>(k + 1)]) * m.sub(k + 1);
    rep.row_sums[static_cast<size_t>(k)] =
        static_cast<double>(s / layout.chi[static_cast<size_t>(k)]);
  }

  rep.min_row_sum = rep.row_sums[0];
  for (double s : rep.row_sums) rep.min_row_sum = std::min(rep.min_row_sum, s);
  rep.pass = rep.min_row_sum >= rep.bound - 1e-12;

  const int nn = layout.switch_index;
  auto add_adjacent = [&](int node) {
    if (node <= layout.mesh.lo() || node >= layout.mesh.hi()) return;
    const int k = layout.flat_of_node(node);
    if (k < 0 || k >= n) return;
    RowSumReport::TransitionAdjacent t;
    t.node = node;
    t.sum = rep.row_sums[static_cast<size_t>(k)];
    t.expected = 0.5 * p.b_value(w[static_cast<size_t>(k)]);
    rep.transition_adjacent.push_back(t);
  };
  const bool degenerate = nn >= layout.mesh.half_steps() - 1;
  if (!degenerate && nn + 1 <= layout.mesh.hi() - 2) {
    add_adjacent(nn + 1);
    if (layout.mesh.turning() == TurningPoint::Interior) add_adjacent(-nn - 1);
  }
  return rep;
}

std::vector<double> random_mesh_function(const SchemeLayout& layout, const Problem& p,
                                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(p.u_minus(), p.u_plus());
  std::vector<double> w(static_cast<size_t>(layout.interior_count()));
  for (double& v : w) v = dist(rng);
  return w;
}

StabilityReport certify_stability(const SchemeLayout& layout, const Problem& p, int trials,
                                  std::uint64_t seed) {
  StabilityReport rep;
  rep.bound = 2.0 / p.b_lower() + 1e-9;
  rep.trials = trials;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(p.u_minus(), p.u_plus());
  const int m = layout.interior_count();
  std::vector<double> w(static_cast<size_t>(m)), v(static_cast<size_t>(m));
  std::vector<double> diff(static_cast<size_t>(m));

  for (int t = 0; t < trials; ++t) {
    for (double& value : w) value = dist(rng);
    for (double& value : v) value = dist(rng);
    const std::vector<double> tw = residual(layout, p, w);
    const std::vector<double> tv = residual(layout, p, v);
    for (size_t k = 0; k < diff.size(); ++k) diff[k] = tw[k] - tv[k];
    const double denom = h_norm(layout, diff);
    if (denom == 0.0) {
      ++rep.skipped;
      continue;
    }
    for (size_t k = 0; k < diff.size(); ++k) diff[k] = w[k] - v[k];
    const double ratio = h_norm(layout, diff) / denom;
    rep.max_ratio = std::max(rep.max_ratio, ratio);
  }
  rep.pass = rep.max_ratio <= rep.bound;
  return rep;
}

}  // namespace spturn
