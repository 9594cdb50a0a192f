#include "spturn/problem.hpp"

#include <cmath>
#include <utility>

namespace spturn {

Problem::Problem(double epsilon, TurningPoint nu, Polynomial b,
                 std::function<double(double)> source, double u_minus, double u_plus,
                 Options opts, std::optional<ExactSolution> exact, SourceKind source_kind)
    : epsilon_(epsilon),
      nu_(nu),
      b_(std::move(b)),
      b_antideriv_(b_.antiderivative()),
      source_(std::move(source)),
      source_kind_(source_ ? source_kind : SourceKind::Zero),
      u_minus_(u_minus),
      u_plus_(u_plus),
      opts_(opts),
      exact_(std::move(exact)) {
  if (!(epsilon_ > 0.0)) throw ConfigError("problem: epsilon must be positive");
  if (!(u_minus_ < u_plus_))
    throw ConfigError("problem: boundary values must satisfy U_- < U_+");
  const auto [mn, mx] = b_.range_on(u_minus_, u_plus_);
  b_lower_ = opts.b_lower.value_or(mn);
  b_upper_ = opts.b_upper.value_or(mx);
  if (opts.require_positive_b && !(b_lower_ > 0.0))
    throw ConfigError("problem: b must be positive on the solution range");
  if (b_upper_ < b_lower_) throw ConfigError("problem: b bounds are inverted");
}

Problem Problem::with_epsilon(double epsilon) const {
  if (source_kind_ == SourceKind::TanhManufactured) return manufactured_tanh_problem(epsilon);
  Problem p(*this);
  p.epsilon_ = epsilon;
  if (!(epsilon > 0.0)) throw ConfigError("problem: epsilon must be positive");
  return p;
}

double f_value(const Problem& p, double ref, double x, double u) {
  return x * (p.b_antiderivative(u) - p.b_antiderivative(ref));
}

double f_x_value(const Problem& p, double ref, double u) {
  return p.b_antiderivative(u) - p.b_antiderivative(ref);
}

namespace {

// tanh(s) saturates to +-1 well before |s| = 40; forcing the saturated value
// keeps intermediate expressions free of spurious underflow.
double saturated_tanh(double s) {
  if (s > 40.0) return 1.0;
  if (s < -40.0) return -1.0;
  return std::tanh(s);
}

}  // namespace

Problem manufactured_tanh_problem(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw ConfigError("manufactured problem: epsilon must lie in (0,1)");
  const double jump = std::tanh(1.0 / epsilon);
  const double u_minus = 2.0 - jump;
  const double u_plus = 2.0 + jump;

  auto source = [epsilon](double x) {
    const double s = x / epsilon;
    const double t = saturated_tanh(s);
    const double sech2 = 1.0 - t * t;
    return -2.0 * t * sech2 + s * (2.0 + t) * sech2;
  };

  ExactSolution exact;
  exact.value = [epsilon](double x) { return 2.0 + saturated_tanh(x / epsilon); };
  exact.first_derivative = [epsilon](double x) {
    const double t = saturated_tanh(x / epsilon);
    return (1.0 - t * t) / epsilon;
  };
  exact.second_derivative = [epsilon](double x) {
    const double t = saturated_tanh(x / epsilon);
    return -2.0 * t * (1.0 - t * t) / (epsilon * epsilon);
  };

  Problem::Options opts;
  opts.b_lower = u_minus;   // b(u) = u attains its bounds at the endpoints of U
  opts.b_upper = u_plus;
  return Problem(epsilon, TurningPoint::Interior, Polynomial({0.0, 1.0}), std::move(source),
                 u_minus, u_plus, opts, std::move(exact),
                 Problem::SourceKind::TanhManufactured);
}

}  // namespace spturn
