#pragma once

#include <utility>
#include <vector>

namespace spturn {

/// Dense univariate polynomial, coefficients stored in ascending degree.
class Polynomial {
 public:
  Polynomial() : coeffs_{0.0} {}
  explicit Polynomial(std::vector<double> coeffs);

  double operator()(double u) const;

  Polynomial derivative() const;
  /// Antiderivative with zero constant term.
  Polynomial antiderivative() const;

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }

  /// {min, max} over [lo, hi]: endpoint values plus bracketed roots of the
  /// derivative, refined by bisection.
  std::pair<double, double> range_on(double lo, double hi) const;

 private:
  std::vector<double> coeffs_;
};

}  // namespace spturn
