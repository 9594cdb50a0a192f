#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spturn/solver.hpp"

namespace spturn {

struct ErrorReport {
  double E = 0.0;    // max-norm nodal error
  double E1 = 0.0;   // weighted discrete L1 (H-norm) error
  std::optional<double> ord;       // vs the half-resolution run
  std::optional<double> ord1;
  std::optional<double> ord_eps;   // vs the 4*eps run
  double delta = 0.0;              // eps * (ln^ell(lambda)/N)^2
  // configuration echo
  double epsilon = 0.0;
  int n_steps = 0;
  int ell = 0;
  LambdaMode lambda_mode = LambdaMode::InverseEpsilon;
  double alpha = 0.0;
};

/// ||w||_H = sum_i chi_i |w_i| over interior nodes.
double h_norm(const SchemeLayout& layout, const std::vector<double>& w);
double max_norm(const std::vector<double>& w);

/// (ln e_coarse - ln e_fine) / ln 2; both inputs must be positive.
double order(double e_coarse, double e_fine);

/// (ln e1_at_4eps - ln e1_at_eps) / ln 4; both inputs must be positive.
double eps_order(double e1_at_4eps, double e1_at_eps);

/// Theoretical bound scale eps * (ln^ell(lambda) / n_steps)^2.
double theoretical_delta(double epsilon, int ell, double lambda, int n_steps);

/// Nodal errors of a converged solution against the problem's exact solution.
ErrorReport error_report(const DiscreteSolution& sol, const Problem& p);

struct LMatrixReport {
  bool pass = false;
  int row = -1;           // first offending entry, if any
  int col = -1;
  double value = 0.0;
};

/// Positive diagonal, nonpositive off-diagonals.
LMatrixReport certify_l_matrix(const TridiagonalMatrix& m);

struct RowSumReport {
  bool pass = false;
  double min_row_sum = 0.0;
  double bound = 0.0;               // b_*/2
  // weighted column sums s_i at the rows just outside the transition nodes,
  // where the exact value is b_i/2
  struct TransitionAdjacent {
    int node = 0;
    double sum = 0.0;
    double expected = 0.0;
  };
  std::vector<TransitionAdjacent> transition_adjacent;
  std::vector<double> row_sums;     // flat, all rows
};

/// s = (H G H^{-1})^T e with G = jacobian; certifies min_i s_i >= b_*/2 - 1e-12
/// and reports the transition-adjacent identities.
RowSumReport certify_row_sums(const SchemeLayout& layout, const Problem& p,
                              const TridiagonalMatrix& m, const std::vector<double>& w);

struct StabilityReport {
  bool pass = false;
  double max_ratio = 0.0;
  double bound = 0.0;      // 2/b_* + 1e-9
  int trials = 0;
  int skipped = 0;         // pairs with Tw == Tv
};

/// Random pairs w, v in W must satisfy ||w-v||_H <= (2/b_*) ||Tw-Tv||_H.
StabilityReport certify_stability(const SchemeLayout& layout, const Problem& p,
                                  int trials, std::uint64_t seed);

/// Uniform sample of W = [U_-, U_+]^m, deterministic per seed.
std::vector<double> random_mesh_function(const SchemeLayout& layout, const Problem& p,
                                         std::uint64_t seed);

}  // namespace spturn
