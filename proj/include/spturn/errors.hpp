#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spturn {

/// Invalid mesh, problem, solver, or plan configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vector/matrix size disagreement.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A pivot underflowed during tridiagonal elimination.
class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Error measurement was requested for a problem with no exact solution attached.
class MissingExactSolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Newton iteration exhausted its budget; carries the best iterate seen.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, std::vector<double> best_iterate,
                      double residual_h_norm, int iterations)
      : std::runtime_error(what),
        best_iterate_(std::move(best_iterate)),
        residual_h_norm_(residual_h_norm),
        iterations_(iterations) {}

  const std::vector<double>& best_iterate() const { return best_iterate_; }
  double residual_h_norm() const { return residual_h_norm_; }
  int iterations() const { return iterations_; }

 private:
  std::vector<double> best_iterate_;
  double residual_h_norm_;
  int iterations_;
};

}  // namespace spturn
