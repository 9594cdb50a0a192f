#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spturn/analysis.hpp"

namespace spturn {

/// Custom problem description as read from a config file.
struct ProblemSpec {
  std::vector<double> b_coeffs{0.0, 1.0};
  double u_minus = 1.0;
  double u_plus = 3.0;
  TurningPoint nu = TurningPoint::Interior;
  std::string source = "zero";   // zero | tanh-mms
  std::optional<double> b_lower, b_upper;

  Problem instantiate(double epsilon) const;
};

struct ExperimentPlan {
  std::string problem = "tanh-mms";        // built-in name or config path tag
  std::optional<ProblemSpec> custom;       // set when problem is a config file
  std::vector<double> eps_list;
  std::vector<int> n_list;
  std::vector<int> ell_list{3};
  LambdaMode lambda_mode = LambdaMode::InverseEpsilon;
  double alpha = 1.0;
  std::vector<double> ratios;              // empty -> defaults per ell
  TurningPoint nu = TurningPoint::Interior;
  bool use_transition_scheme = true;
  bool compute_ord = true;
  bool compute_ord_eps = false;
  SolverConfig solver;
  enum class Format { Csv, Markdown };
  Format format = Format::Csv;

  void validate() const;
};

struct PlanRow {
  double epsilon = 0.0;
  int n_steps = 0;
  int ell = 0;
  LambdaMode lambda_mode = LambdaMode::InverseEpsilon;
  double alpha = 0.0;
  bool converged = false;
  std::string error;               // failure note for unconverged cells
  double E = 0.0;
  double E1 = 0.0;
  double delta = 0.0;
  std::optional<double> ord, ord1, ord_eps;
};

/// Run every (ell, eps, N) cell of the plan; a failed solve marks its row and
/// the sweep continues. Row order follows the plan, so output is deterministic.
std::vector<PlanRow> run_plan(const ExperimentPlan& plan);

/// csv or markdown rendering; errors in 3-significant-digit scientific
/// notation, orders to two decimals, absent orders as empty cells. An OrdEps
/// column appears only when some row carries one.
std::string emit_table(const std::vector<PlanRow>& rows, ExperimentPlan::Format format);

/// Preset plans for the standard verification sweeps (2..6).
ExperimentPlan table_preset(int table_no);

/// Accepts "2^-14" style dyadic powers as well as plain decimal literals.
double parse_real(const std::string& text);

/// Flat key-value config with [sections]; recognizes [problem] and [plan].
struct ConfigFile {
  std::optional<ProblemSpec> problem;
  bool has_plan = false;
  void apply_plan(ExperimentPlan& plan) const;

  std::vector<std::pair<std::string, std::string>> plan_entries;
};

ConfigFile parse_config_file(const std::string& path);

const char* to_string(LambdaMode mode);

}  // namespace spturn
