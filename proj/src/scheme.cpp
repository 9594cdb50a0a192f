#include "spturn/scheme.hpp"

#include <cmath>
#include <ostream>

namespace spturn {

const char* to_string(SchemeTag tag) {
  switch (tag) {
    case SchemeTag::Central: return "central";
    case SchemeTag::Transition: return "transition";
    case SchemeTag::TransitionMirror: return "transition-";
    case SchemeTag::Midpoint: return "midpoint";
    case SchemeTag::MidpointMirror: return "midpoint-";
  }
  return "?";
}

std::vector<double> TridiagonalMatrix::multiply(const std::vector<double>& v) const {
  if (static_cast<int>(v.size()) != size())
    throw DimensionError("tridiagonal multiply: size mismatch");
  const int n = size();
  std::vector<double> out(static_cast<size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    double s = diag(k) * v[static_cast<size_t>(k)];
    if (k > 0) s += sub(k) * v[static_cast<size_t>(k - 1)];
    if (k < n - 1) s += sup(k) * v[static_cast<size_t>(k + 1)];
    out[static_cast<size_t>(k)] = s;
  }
  return out;
}

void SchemeLayout::dump(std::ostream& os) const {
  for (int i = mesh.lo() + 1; i <= mesh.hi() - 1; ++i) {
    const int a = std::abs(i);
    const double r = a >= 1 ? rho_at(a) : 0.0;
    os << i << " " << to_string(tag_at_node(i)) << " " << r << " " << chi_at_node(i) << "\n";
  }
}

SchemeLayout compute_layout(const Mesh& mesh, const Problem& p, bool use_transition_scheme) {
  if (mesh.turning() != p.turning())
    throw ConfigError("layout: mesh and problem disagree on the turning-point case");
  if (mesh.config() && std::abs(mesh.config()->epsilon - p.epsilon()) >
                           1e-12 * (1.0 + p.epsilon()))
    throw ConfigError("layout: mesh and problem disagree on epsilon");

  SchemeLayout lay;
  lay.mesh = mesh;
  lay.transition_as_central = !use_transition_scheme;

  const int N = mesh.half_steps();
  const double eps2 = p.epsilon() * p.epsilon();
  const double b_up = p.b_upper();

  // rho_i on the positive side; rho_1 = 0 because x_0 = 0.
  lay.rho.assign(static_cast<size_t>(N) + 1, 0.0);
  for (int i = 1; i <= N; ++i)
    lay.rho[static_cast<size_t>(i)] = b_up * mesh.x(i - 1) * mesh.step(i) / (2.0 * eps2);

  int n = 0;
  for (int i = 1; i <= N - 1; ++i)
    if (lay.rho[static_cast<size_t>(i)] <= 1.0) n = i;
  if (n < 1) throw ConfigError("layout: rho_1 > 1, the switching set is empty");
  for (int i = 1; i <= n && lay.switching_gap_index == 0; ++i)
    if (lay.rho[static_cast<size_t>(i)] > 1.0) lay.switching_gap_index = i;
  if (lay.switching_gap_index != 0 && mesh.steps_monotone())
    throw ConfigError("layout: switching set has a gap at i = " +
                      std::to_string(lay.switching_gap_index) +
                      " on a step-monotone mesh");
  lay.switch_index = n;

  const int m = mesh.interior_count();
  lay.chi.assign(static_cast<size_t>(m), 0.0);
  lay.tags.assign(static_cast<size_t>(m), SchemeTag::Central);

  auto set_node = [&](int i, SchemeTag tag, double chi) {
    lay.tags[static_cast<size_t>(lay.flat_of_node(i))] = tag;
    lay.chi[static_cast<size_t>(lay.flat_of_node(i))] = chi;
  };

  if (mesh.turning() == TurningPoint::Boundary) {
    for (int i = 1; i <= N - 1; ++i) {
      if (n == N - 1) {
        set_node(i, SchemeTag::Central, mesh.avg_step(i));
      } else if (n == 1) {
        set_node(i, SchemeTag::Midpoint, mesh.step(i + 1));
      } else if (i <= n - 1) {
        set_node(i, SchemeTag::Central, mesh.avg_step(i));
      } else if (i == n) {
        set_node(i, SchemeTag::Transition, 0.5 * mesh.step(i) + mesh.step(i + 1));
      } else {
        set_node(i, SchemeTag::Midpoint, mesh.step(i + 1));
      }
    }
  } else {
    for (int i = -N + 1; i <= N - 1; ++i) {
      if (n == N - 1) {
        // Degenerate switching: central everywhere, no transition nodes.
        set_node(i, SchemeTag::Central, mesh.avg_step(i));
      } else if (i <= -n - 1) {
        set_node(i, SchemeTag::MidpointMirror, mesh.step(i));
      } else if (i == -n) {
        set_node(i, SchemeTag::TransitionMirror, mesh.step(i) + 0.5 * mesh.step(i + 1));
      } else if (i <= n - 1) {
        set_node(i, SchemeTag::Central, mesh.avg_step(i));
      } else if (i == n) {
        set_node(i, SchemeTag::Transition, 0.5 * mesh.step(i) + mesh.step(i + 1));
      } else {
        set_node(i, SchemeTag::Midpoint, mesh.step(i + 1));
      }
    }
  }
  return lay;
}

namespace {

struct NodeEnv {
  double x_prev, x_cur, x_next;
  double h_lo, h_hi;     // h_i, h_{i+1}
  double w_prev, w_cur, w_next;
  double chi;
  double ref;
};

inline double second_difference(const NodeEnv& e, double chi) {
  return ((e.w_prev - e.w_cur) / e.h_lo + (e.w_next - e.w_cur) / e.h_hi) / chi;
}

}  // namespace

std::vector<double> residual(const SchemeLayout& layout, const Problem& p,
                             const std::vector<double>& w) {
  const Mesh& mesh = layout.mesh;
  const int m = mesh.interior_count();
  if (static_cast<int>(w.size()) != m)
    throw DimensionError("residual: expected " + std::to_string(m) + " interior values");

  const FluxContext flux(p);
  const double eps2 = p.epsilon() * p.epsilon();
  const bool has_c = p.has_source();
  std::vector<double> out(static_cast<size_t>(m), 0.0);

  auto value_at = [&](int i) -> double {
    if (i == mesh.lo()) return p.u_minus();
    if (i == mesh.hi()) return p.u_plus();
    return w[static_cast<size_t>(layout.flat_of_node(i))];
  };

  for (int i = mesh.lo() + 1; i <= mesh.hi() - 1; ++i) {
    NodeEnv e;
    e.x_prev = mesh.x(i - 1);
    e.x_cur = mesh.x(i);
    e.x_next = mesh.x(i + 1);
    e.h_lo = mesh.step(i);
    e.h_hi = mesh.step(i + 1);
    e.w_prev = value_at(i - 1);
    e.w_cur = value_at(i);
    e.w_next = value_at(i + 1);
    e.chi = layout.chi_at_node(i);
    e.ref = flux.ref(e.x_cur);

    SchemeTag tag = layout.tag_at_node(i);
    double chi_op = e.chi;
    if (layout.transition_as_central &&
        (tag == SchemeTag::Transition || tag == SchemeTag::TransitionMirror)) {
      tag = SchemeTag::Central;
      chi_op = 0.5 * (e.h_lo + e.h_hi);  // the weight central nodes carry
    }

    const double f_prev = f_value(p, e.ref, e.x_prev, e.w_prev);
    const double f_cur = f_value(p, e.ref, e.x_cur, e.w_cur);
    const double f_next = f_value(p, e.ref, e.x_next, e.w_next);
    const double fx_cur = f_x_value(p, e.ref, e.w_cur);

    double r = -eps2 * second_difference(e, chi_op);
    switch (tag) {
      case SchemeTag::Central:
        r += -(f_next - f_prev) / (e.h_lo + e.h_hi) + fx_cur;
        if (has_c) r += p.c(e.x_cur);
        break;
      case SchemeTag::Transition:
        r += -(2.0 * f_next - f_cur - f_prev) / (2.0 * chi_op) + fx_cur;
        if (has_c) r += p.c(e.x_cur);
        break;
      case SchemeTag::TransitionMirror:
        r += -(f_next + f_cur - 2.0 * f_prev) / (2.0 * chi_op) + fx_cur;
        if (has_c) r += p.c(e.x_cur);
        break;
      case SchemeTag::Midpoint:
        r += -(f_next - f_cur) / e.h_hi +
             0.5 * (f_x_value(p, e.ref, e.w_next) + fx_cur);
        if (has_c) r += 0.5 * (p.c(e.x_cur) + p.c(e.x_next));
        break;
      case SchemeTag::MidpointMirror:
        r += -(f_cur - f_prev) / e.h_lo +
             0.5 * (fx_cur + f_x_value(p, e.ref, e.w_prev));
        if (has_c) r += 0.5 * (p.c(e.x_cur) + p.c(e.x_prev));
        break;
    }
    out[static_cast<size_t>(layout.flat_of_node(i))] = r;
  }
  return out;
}

TridiagonalMatrix jacobian(const SchemeLayout& layout, const Problem& p,
                           const std::vector<double>& w) {
  const Mesh& mesh = layout.mesh;
  const int m = mesh.interior_count();
  if (static_cast<int>(w.size()) != m)
    throw DimensionError("jacobian: expected " + std::to_string(m) + " interior values");

  const FluxContext flux(p);
  const double eps2 = p.epsilon() * p.epsilon();
  TridiagonalMatrix g(m);

  auto value_at = [&](int i) -> double {
    if (i == mesh.lo()) return p.u_minus();
    if (i == mesh.hi()) return p.u_plus();
    return w[static_cast<size_t>(layout.flat_of_node(i))];
  };

  for (int i = mesh.lo() + 1; i <= mesh.hi() - 1; ++i) {
    const int k = layout.flat_of_node(i);
    const double x_prev = mesh.x(i - 1), x_cur = mesh.x(i), x_next = mesh.x(i + 1);
    const double h_lo = mesh.step(i), h_hi = mesh.step(i + 1);
    const double w_prev = value_at(i - 1), w_cur = value_at(i), w_next = value_at(i + 1);

    SchemeTag tag = layout.tag_at_node(i);
    double chi = layout.chi_at_node(i);
    if (layout.transition_as_central &&
        (tag == SchemeTag::Transition || tag == SchemeTag::TransitionMirror)) {
      tag = SchemeTag::Central;
      chi = 0.5 * (h_lo + h_hi);
    }

    // a_j = x_j b(w_j) = df/du at node j
    const double a_prev = x_prev * p.b_value(w_prev);
    const double a_cur = x_cur * p.b_value(w_cur);
    const double a_next = x_next * p.b_value(w_next);
    const double b_prev = p.b_value(w_prev);
    const double b_cur = p.b_value(w_cur);
    const double b_next = p.b_value(w_next);

    double dsub = -eps2 / (chi * h_lo);
    double ddiag = eps2 / chi * (1.0 / h_lo + 1.0 / h_hi);
    double dsup = -eps2 / (chi * h_hi);

    switch (tag) {
      case SchemeTag::Central:
        dsub += a_prev / (h_lo + h_hi);
        ddiag += b_cur;
        dsup += -a_next / (h_lo + h_hi);
        break;
      case SchemeTag::Transition:
        dsub += a_prev / (2.0 * chi);
        ddiag += a_cur / (2.0 * chi) + b_cur;
        dsup += -a_next / chi;
        break;
      case SchemeTag::TransitionMirror:
        dsub += a_prev / chi;
        ddiag += -a_cur / (2.0 * chi) + b_cur;
        dsup += -a_next / (2.0 * chi);
        break;
      case SchemeTag::Midpoint:
        ddiag += a_cur / h_hi + 0.5 * b_cur;
        dsup += -a_next / h_hi + 0.5 * b_next;
        break;
      case SchemeTag::MidpointMirror:
        dsub += a_prev / h_lo + 0.5 * b_prev;
        ddiag += -a_cur / h_lo + 0.5 * b_cur;
        break;
    }

    g.diag(k) = ddiag;
    if (k > 0) g.sub(k) = dsub;
    if (k < m - 1) g.sup(k) = dsup;
  }
  return g;
}

}  // namespace spturn
