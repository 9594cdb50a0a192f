#include "spturn/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace spturn {

const char* to_string(LambdaMode mode) {
  return mode == LambdaMode::InverseEpsilon ? "inv-eps" : "N";
}

Problem ProblemSpec::instantiate(double epsilon) const {
  if (source == "tanh-mms") {
    // The manufactured problem fixes b, U_-, U_+ by construction; honor the
    // registry name rather than mixing it with custom coefficients.
    return manufactured_tanh_problem(epsilon);
  }
  if (source != "zero")
    throw ConfigError("problem config: unknown source '" + source + "'");
  Problem::Options opts;
  opts.b_lower = b_lower;
  opts.b_upper = b_upper;
  return Problem(epsilon, nu, Polynomial(b_coeffs), nullptr, u_minus, u_plus, opts);
}

void ExperimentPlan::validate() const {
  if (eps_list.empty()) throw ConfigError("plan: empty epsilon list");
  for (double e : eps_list)
    if (!(e > 0.0)) throw ConfigError("plan: epsilons must be positive");
  if (ell_list.empty()) throw ConfigError("plan: empty ell list");
  if (!ratios.empty() && ell_list.size() != 1)
    throw ConfigError("plan: explicit ratios require a single ell");
  if (compute_ord)
    for (int n : n_list)
      if (n % 2 != 0) throw ConfigError("plan: N values must be even when Ord is requested");
  if (compute_ord_eps) {
    for (size_t k = 1; k < eps_list.size(); ++k) {
      const double ratio = eps_list[k - 1] / eps_list[k];
      if (std::abs(ratio - 4.0) > 1e-9)
        throw ConfigError("plan: epsilon list must descend by factor 4 when Ord_eps is requested");
    }
  }
}

std::vector<PlanRow> run_plan(const ExperimentPlan& plan) {
  plan.validate();
  std::vector<PlanRow> rows;

  for (int ell : plan.ell_list) {
    const std::vector<double> ratios =
        plan.ratios.empty() ? default_ratios(ell) : plan.ratios;
    for (double eps : plan.eps_list) {
      Problem p = plan.custom ? plan.custom->instantiate(eps) : manufactured_tanh_problem(eps);
      for (int n_steps : plan.n_list) {
        PlanRow row;
        row.epsilon = eps;
        row.n_steps = n_steps;
        row.ell = ell;
        row.lambda_mode = plan.lambda_mode;
        row.alpha = plan.alpha;
        try {
          MeshConfig cfg;
          cfg.epsilon = eps;
          cfg.ell = ell;
          cfg.lambda_mode = plan.lambda_mode;
          cfg.alpha = plan.alpha;
          cfg.n_steps = n_steps;
          cfg.ratios = ratios;
          cfg.nu = plan.nu;
          const Mesh mesh = build_mesh(cfg);
          const SchemeLayout layout = compute_layout(mesh, p, plan.use_transition_scheme);
          const DiscreteSolution sol = solve(layout, p, plan.solver);
          const ErrorReport rep = error_report(sol, p);
          row.converged = true;
          row.E = rep.E;
          row.E1 = rep.E1;
          row.delta = rep.delta;
        } catch (const std::exception& e) {
          row.converged = false;
          row.error = e.what();
        }
        rows.push_back(std::move(row));
      }
    }
  }

  auto find_row = [&](int ell, double eps, int n_steps) -> const PlanRow* {
    for (const PlanRow& r : rows)
      if (r.ell == ell && r.n_steps == n_steps &&
          std::abs(r.epsilon - eps) <= 1e-9 * eps && r.converged)
        return &r;
    return nullptr;
  };

  for (PlanRow& r : rows) {
    if (!r.converged) continue;
    if (plan.compute_ord && r.n_steps % 2 == 0) {
      if (const PlanRow* coarse = find_row(r.ell, r.epsilon, r.n_steps / 2)) {
        if (coarse->E > 0.0 && r.E > 0.0) r.ord = order(coarse->E, r.E);
        if (coarse->E1 > 0.0 && r.E1 > 0.0) r.ord1 = order(coarse->E1, r.E1);
      }
    }
    if (plan.compute_ord_eps) {
      if (const PlanRow* courser = find_row(r.ell, 4.0 * r.epsilon, r.n_steps)) {
        if (courser->E1 > 0.0 && r.E1 > 0.0) r.ord_eps = eps_order(courser->E1, r.E1);
      }
    }
  }
  return rows;
}

namespace {

std::string sci3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string general(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::string emit_table(const std::vector<PlanRow>& rows, ExperimentPlan::Format format) {
  bool with_ord_eps = false;
  for (const PlanRow& r : rows) with_ord_eps = with_ord_eps || r.ord_eps.has_value();

  std::vector<std::string> header = {"epsilon", "N",    "ell",  "lambda_mode", "alpha",
                                     "E",       "E1",   "Ord",  "Ord1",        "delta"};
  if (with_ord_eps) header.push_back("OrdEps");

  std::vector<std::vector<std::string>> cells;
  cells.reserve(rows.size());
  for (const PlanRow& r : rows) {
    std::vector<std::string> c;
    c.push_back(general(r.epsilon));
    c.push_back(std::to_string(r.n_steps));
    c.push_back(std::to_string(r.ell));
    c.push_back(to_string(r.lambda_mode));
    c.push_back(general(r.alpha));
    c.push_back(r.converged ? sci3(r.E) : "");
    c.push_back(r.converged ? sci3(r.E1) : "");
    c.push_back(r.ord ? fixed2(*r.ord) : "");
    c.push_back(r.ord1 ? fixed2(*r.ord1) : "");
    c.push_back(r.converged ? sci3(r.delta) : "");
    if (with_ord_eps) c.push_back(r.ord_eps ? fixed2(*r.ord_eps) : "");
    cells.push_back(std::move(c));
  }

  std::ostringstream os;
  if (format == ExperimentPlan::Format::Csv) {
    for (size_t k = 0; k < header.size(); ++k) os << (k ? "," : "") << header[k];
    os << "\n";
    for (const auto& row : cells) {
      for (size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << row[k];
      os << "\n";
    }
  } else {
    std::vector<size_t> width(header.size());
    for (size_t k = 0; k < header.size(); ++k) width[k] = header[k].size();
    for (const auto& row : cells)
      for (size_t k = 0; k < row.size(); ++k) width[k] = std::max(width[k], row[k].size());
    auto emit_row = [&](const std::vector<std::string>& row) {
      os << "|";
      for (size_t k = 0; k < row.size(); ++k) {
        os << " " << row[k] << std::string(width[k] - row[k].size(), ' ') << " |";
      }
      os << "\n";
    };
    emit_row(header);
    os << "|";
    for (size_t k = 0; k < header.size(); ++k) os << std::string(width[k] + 2, '-') << "|";
    os << "\n";
    for (const auto& row : cells) emit_row(row);
  }
  return os.str();
}

ExperimentPlan table_preset(int table_no) {
  ExperimentPlan plan;
  const std::vector<double> eps3 = {std::ldexp(1.0, -14), std::ldexp(1.0, -18),
                                    std::ldexp(1.0, -22)};
  switch (table_no) {
    case 2:
      plan.ell_list = {1, 2, 3};
      plan.eps_list = eps3;
      plan.n_list = {256, 512};
      plan.lambda_mode = LambdaMode::InverseEpsilon;
      plan.alpha = 1.0;
      break;
    case 3:
      plan.ell_list = {3};
      plan.eps_list = eps3;
      plan.n_list = {64, 128, 256, 512};
      plan.lambda_mode = LambdaMode::InverseEpsilon;
      plan.alpha = 1.0;
      break;
    case 4:
      plan.ell_list = {3};
      plan.eps_list = eps3;
      plan.n_list = {64, 128, 256, 512};
      plan.lambda_mode = LambdaMode::StepCount;
      plan.alpha = 1.0;
      break;
    case 5:
      plan.ell_list = {3};
      plan.eps_list = eps3;
      plan.n_list = {64, 128, 256, 512};
      plan.lambda_mode = LambdaMode::StepCount;
      plan.alpha = 2.0;
      break;
    case 6: {
      plan.ell_list = {3};
      plan.eps_list.clear();
      for (int e = 12; e <= 22; e += 2) plan.eps_list.push_back(std::ldexp(1.0, -e));
      plan.n_list = {512};
      plan.lambda_mode = LambdaMode::InverseEpsilon;
      plan.alpha = 1.0;
      plan.compute_ord = false;
      plan.compute_ord_eps = true;
      break;
    }
    default:
      throw ConfigError("no preset for table " + std::to_string(table_no));
  }
  return plan;
}

double parse_real(const std::string& text) {
  const size_t caret = text.find('^');
  if (caret != std::string::npos) {
    size_t pos1 = 0, pos2 = 0;
    const std::string base_s = text.substr(0, caret);
    const std::string exp_s = text.substr(caret + 1);
    const double base = std::stod(base_s, &pos1);
    const double expo = std::stod(exp_s, &pos2);
    if (pos1 != base_s.size() || pos2 != exp_s.size())
      throw ConfigError("cannot parse number '" + text + "'");
    return std::pow(base, expo);
  }
  size_t pos = 0;
  const double v = std::stod(text, &pos);
  if (pos != text.size()) throw ConfigError("cannot parse number '" + text + "'");
  return v;
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',' || ch == ' ' || ch == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

TurningPoint parse_nu(const std::string& v) {
  if (v == "0") return TurningPoint::Boundary;
  if (v == "-1") return TurningPoint::Interior;
  throw ConfigError("nu must be 0 or -1, got '" + v + "'");
}

LambdaMode parse_lambda_mode(const std::string& v) {
  if (v == "inv-eps") return LambdaMode::InverseEpsilon;
  if (v == "N") return LambdaMode::StepCount;
  throw ConfigError("lambda must be inv-eps or N, got '" + v + "'");
}

}  // namespace

ConfigFile parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");

  ConfigFile cfg;
  ProblemSpec spec;
  bool have_problem = false;
  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[' && s.back() == ']') {
      section = trim(s.substr(1, s.size() - 2));
      if (section != "problem" && section != "plan")
        throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown section [" + section +
                          "]");
      continue;
    }
    const size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (section == "problem") {
      have_problem = true;
      if (key == "b_coeffs") {
        spec.b_coeffs.clear();
        for (const std::string& t : split_list(value)) spec.b_coeffs.push_back(parse_real(t));
      } else if (key == "u_minus") {
        spec.u_minus = parse_real(value);
      } else if (key == "u_plus") {
        spec.u_plus = parse_real(value);
      } else if (key == "nu") {
        spec.nu = parse_nu(value);
      } else if (key == "source" || key == "c") {
        spec.source = value;
      } else if (key == "b_lower") {
        spec.b_lower = parse_real(value);
      } else if (key == "b_upper") {
        spec.b_upper = parse_real(value);
      } else {
        throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown problem key '" + key +
                          "'");
      }
    } else if (section == "plan") {
      cfg.has_plan = true;
      cfg.plan_entries.emplace_back(key, value);
    } else {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": key outside any section");
    }
  }
  if (have_problem) cfg.problem = spec;
  return cfg;
}

void ConfigFile::apply_plan(ExperimentPlan& plan) const {
  for (const auto& [key, value] : plan_entries) {
    if (key == "eps") {
      plan.eps_list.clear();
      for (const std::string& t : split_list(value)) plan.eps_list.push_back(parse_real(t));
    } else if (key == "N") {
      plan.n_list.clear();
      for (const std::string& t : split_list(value))
        plan.n_list.push_back(static_cast<int>(parse_real(t)));
    } else if (key == "ell") {
      plan.ell_list.clear();
      for (const std::string& t : split_list(value))
        plan.ell_list.push_back(static_cast<int>(parse_real(t)));
    } else if (key == "lambda") {
      plan.lambda_mode = parse_lambda_mode(value);
    } else if (key == "alpha") {
      plan.alpha = parse_real(value);
    } else if (key == "ratios") {
      plan.ratios.clear();
      for (const std::string& t : split_list(value)) plan.ratios.push_back(parse_real(t));
    } else if (key == "nu") {
      plan.nu = parse_nu(value);
    } else if (key == "format") {
      if (value == "csv")
        plan.format = ExperimentPlan::Format::Csv;
      else if (value == "md")
        plan.format = ExperimentPlan::Format::Markdown;
      else
        throw ConfigError("format must be csv or md, got '" + value + "'");
    } else if (key == "ord_eps") {
      plan.compute_ord_eps = (value == "1" || value == "true");
    } else {
      throw ConfigError("unknown plan key '" + key + "'");
    }
  }
}

}  // namespace spturn
