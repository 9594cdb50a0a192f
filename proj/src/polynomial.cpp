#include "spturn/polynomial.hpp"

#include <utility>

namespace spturn {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

double Polynomial::operator()(double u) const {
  double v = 0.0;
  for (size_t k = coeffs_.size(); k-- > 0;) v = v * u + coeffs_[k];
  return v;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial({0.0});
  std::vector<double> d(coeffs_.size() - 1);
  for (size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
  std::vector<double> a(coeffs_.size() + 1, 0.0);
  for (size_t k = 0; k < coeffs_.size(); ++k) a[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
  return Polynomial(std::move(a));
}

std::pair<double, double> Polynomial::range_on(double lo, double hi) const {
  if (lo > hi) std::swap(lo, hi);
  double mn = (*this)(lo), mx = mn;
  auto consider = [&](double u) {
    const double v = (*this)(u);
    if (v < mn) mn = v;
    if (v > mx) mx = v;
  };
  consider(hi);
  if (degree() >= 2 && hi > lo) {
    // Bracket the derivative's sign changes on a fine grid, refine by bisection.
    const Polynomial d = derivative();
    const int cells = 2048;
    double prev_u = lo, prev_v = d(lo);
    for (int j = 1; j <= cells; ++j) {
      const double u = lo + (hi - lo) * j / cells;
      const double v = d(u);
      if (v == 0.0) consider(u);
      if (prev_v == 0.0) consider(prev_u);
      if (prev_v * v < 0.0) {
        double a = prev_u, b = u, fa = prev_v;
        for (int it = 0; it < 200; ++it) {
          const double m = 0.5 * (a + b);
          const double fm = d(m);
          if (fm == 0.0) {
            a = b = m;
            break;
          }
          if (fa * fm < 0.0) {
            b = m;
          } else {
            a = m;
            fa = fm;
          }
        }
        consider(0.5 * (a + b));
      }
      prev_u = u;
      prev_v = v;
    }
  }
  return {mn, mx};
}

}  // namespace spturn
