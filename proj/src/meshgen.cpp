#include "spturn/meshgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace spturn {

namespace {
constexpr double kEulerE = 2.718281828459045235;
}

double iterated_log(double lambda, int k) {
  if (k < 0) throw std::domain_error("iterated_log: negative depth");
  double v = lambda;
  for (int j = 0; j < k; ++j) {
    if (v <= 0.0) {
      std::ostringstream os;
      os << "iterated_log: ln^" << j << "(" << lambda << ") = " << v
         << " is not positive, cannot reach depth " << k;
      throw std::domain_error(os.str());
    }
    v = std::log(v);
  }
  return v;
}

int max_iterated_depth(double lambda) {
  if (!(lambda > kEulerE))
    throw std::domain_error("max_iterated_depth: lambda must exceed e");
  double v = lambda;
  int k = 0;
  while (true) {
    v = std::log(v);
    ++k;
    if (v <= 0.0)
      throw std::domain_error(
          "max_iterated_depth: iterate hit a nonpositive value before entering (0,1)");
    if (v < 1.0) return k;
    // v == 1 exactly falls through: the next log is 0 and errors out, which is
    // what the strict inequality demands.
  }
}

std::vector<double> default_ratios(int ell) {
  switch (ell) {
    case 1:
      return {3.0 / 4.0, 1.0 / 4.0};
    case 2:
      return {1.0 / 4.0, 1.0 / 2.0, 1.0 / 4.0};
    case 3:
      return {1.0 / 8.0, 1.0 / 8.0, 1.0 / 2.0, 1.0 / 4.0};
    default:
      throw ConfigError("default_ratios: no built-in ratios for ell = " + std::to_string(ell));
  }
}

double MeshConfig::lambda() const {
  if (lambda_mode == LambdaMode::InverseEpsilon) return 1.0 / epsilon;
  // Step-count mode counts the steps over the whole domain: N on [0,1],
  // 2N on [-1,1]. The published interior-case results resolve lambda this
  // way (the per-half count misses them by several multiples).
  const int total = nu == TurningPoint::Interior ? 2 * n_steps : n_steps;
  return static_cast<double>(total);
}

void MeshConfig::validate() const {
  if (!(epsilon > 0.0)) throw ConfigError("mesh config: epsilon must be positive");
  if (ell < 1) throw ConfigError("mesh config: ell must be at least 1");
  if (!(alpha > 0.0)) throw ConfigError("mesh config: alpha must be positive");
  if (n_steps < 1) throw ConfigError("mesh config: n_steps must be positive");
  if (ratios.size() != static_cast<size_t>(ell) + 1)
    throw ConfigError("mesh config: expected ell+1 ratios, got " +
                      std::to_string(ratios.size()));
  double sum = 0.0;
  for (double q : ratios) {
    if (!(q > 0.0)) throw ConfigError("mesh config: every ratio must be positive");
    sum += q;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw ConfigError("mesh config: ratios must sum to 1");

  int depth;
  try {
    depth = max_iterated_depth(lambda());
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("mesh config: ") + e.what());
  }
  if (ell > depth)
    throw ConfigError("mesh config: ell = " + std::to_string(ell) +
                      " exceeds the maximal iterated-log depth K = " + std::to_string(depth));
  const double tau_ell = alpha * epsilon * std::log(lambda());
  if (!(tau_ell < 1.0))
    throw ConfigError("mesh config: outermost transition point is not below 1");
}

std::vector<double> transition_points(const MeshConfig& cfg) {
  cfg.validate();
  const double lam = cfg.lambda();
  std::vector<double> taus(static_cast<size_t>(cfg.ell));
  for (int k = 1; k <= cfg.ell; ++k)
    taus[static_cast<size_t>(k - 1)] = cfg.alpha * cfg.epsilon * iterated_log(lam, cfg.ell - k + 1);
  for (size_t k = 1; k < taus.size(); ++k)
    if (!(taus[k - 1] < taus[k]))
      throw ConfigError("mesh config: transition points are not strictly increasing");
  return taus;
}

void Mesh::rebuild_steps() {
  steps_.resize(points_.size() - 1);
  for (size_t k = 0; k + 1 < points_.size(); ++k) steps_[k] = points_[k + 1] - points_[k];
}

double Mesh::min_step() const { return *std::min_element(steps_.begin(), steps_.end()); }
double Mesh::max_step() const { return *std::max_element(steps_.begin(), steps_.end()); }

void Mesh::dump(std::ostream& os) const {
  for (int i = lo(); i <= hi(); ++i) os << i << " " << x(i) << "\n";
}

namespace {

// First positive-side step index with h_i > h_{i+1}, allowing ulp-scale
// jitter from equidistant-run rounding. Returns 0 when the steps are
// nondecreasing.
int find_step_decrease(const Mesh& m) {
  const double tol = 4.0 * std::numeric_limits<double>::epsilon();
  for (int i = 1; i <= m.hi() - 1; ++i) {
    if (i <= m.lo()) continue;
    if (m.step(i) > m.step(i + 1) + tol) return i;
  }
  return 0;
}

}  // namespace

Mesh Mesh::from_points(std::vector<double> points) {
  if (points.size() < 3) throw ConfigError("mesh: need at least two steps");
  for (size_t k = 1; k < points.size(); ++k)
    if (!(points[k - 1] < points[k]))
      throw ConfigError("mesh: points must be strictly increasing");
  Mesh m;
  if (points.front() == 0.0) {
    m.turning_ = TurningPoint::Boundary;
    m.lo_ = 0;
    m.half_steps_ = static_cast<int>(points.size()) - 1;
  } else if (points.front() == -1.0) {
    if (points.size() % 2 == 0)
      throw ConfigError("mesh: an interior mesh has an even number of steps");
    m.turning_ = TurningPoint::Interior;
    m.half_steps_ = (static_cast<int>(points.size()) - 1) / 2;
    m.lo_ = -m.half_steps_;
    for (int i = 0; i <= m.half_steps_; ++i) {
      const size_t up = static_cast<size_t>(m.half_steps_ + i);
      const size_t dn = static_cast<size_t>(m.half_steps_ - i);
      if (points[dn] != -points[up])
        throw ConfigError("mesh: interior mesh must mirror exactly");
    }
  } else {
    throw ConfigError("mesh: first point must be exactly 0 or -1");
  }
  if (points.back() != 1.0) throw ConfigError("mesh: last point must be exactly 1");
  m.points_ = std::move(points);
  m.rebuild_steps();
  // Manual meshes have no transition structure to blame a decrease on; reject.
  if (const int i = find_step_decrease(m))
    throw ConfigError("mesh: steps decrease between indices " + std::to_string(i) + " and " +
                      std::to_string(i + 1));
  return m;
}

Mesh build_half_mesh(const MeshConfig& cfg) {
  const std::vector<double> taus = transition_points(cfg);  // validates cfg

  const int N = cfg.n_steps;
  std::vector<int> counts(static_cast<size_t>(cfg.ell) + 1, 0);
  int assigned = 0;
  for (int k = 0; k < cfg.ell; ++k) {
    counts[static_cast<size_t>(k)] =
        static_cast<int>(std::lround(cfg.ratios[static_cast<size_t>(k)] * N));
    assigned += counts[static_cast<size_t>(k)];
  }
  counts.back() = N - assigned;
  for (size_t k = 0; k < counts.size(); ++k)
    if (counts[k] < 2)
      throw ConfigError("mesh: interval " + std::to_string(k + 1) + " rounds to " +
                        std::to_string(counts[k]) + " steps, need at least 2");

  std::vector<double> bounds;
  bounds.reserve(taus.size() + 2);
  bounds.push_back(0.0);
  bounds.insert(bounds.end(), taus.begin(), taus.end());
  bounds.push_back(1.0);

  std::vector<double> points;
  points.reserve(static_cast<size_t>(N) + 1);
  points.push_back(0.0);
  for (size_t k = 0; k + 1 < bounds.size(); ++k) {
    const double a = bounds[k], b = bounds[k + 1];
    const int nk = counts[k];
    const double step = (b - a) / nk;
    // Generate from the interval origin and snap the last point, so rounding
    // drift never accumulates across intervals.
    for (int j = 1; j < nk; ++j) points.push_back(a + j * step);
    points.push_back(b);
  }

  Mesh m;
  m.points_ = std::move(points);
  m.turning_ = TurningPoint::Boundary;
  m.lo_ = 0;
  m.half_steps_ = N;
  m.taus_ = taus;
  m.counts_ = counts;
  m.config_ = cfg;
  m.rebuild_steps();
  m.first_step_decrease_ = find_step_decrease(m);
  if (m.first_step_decrease_ != 0) {
    // A decrease can only sit at a transition-point junction; anywhere else
    // the equidistant construction went wrong.
    bool at_junction = false;
    int cum = 0;
    for (size_t k = 0; k + 1 < m.counts_.size(); ++k) {
      cum += m.counts_[k];
      if (m.first_step_decrease_ == cum) at_junction = true;
    }
    if (!at_junction)
      throw ConfigError("mesh: steps decrease inside an equidistant interval at index " +
                        std::to_string(m.first_step_decrease_));
  }
  return m;
}

Mesh extend_symmetric(const Mesh& half) {
  if (half.turning() != TurningPoint::Boundary)
    throw ConfigError("extend_symmetric: input must be a mesh on [0,1]");
  const int N = half.half_steps();
  Mesh m;
  m.points_.assign(static_cast<size_t>(2 * N) + 1, 0.0);
  for (int i = 0; i <= N; ++i) {
    m.points_[static_cast<size_t>(N + i)] = half.x(i);
    m.points_[static_cast<size_t>(N - i)] = -half.x(i);
  }
  m.turning_ = TurningPoint::Interior;
  m.lo_ = -N;
  m.half_steps_ = N;
  m.taus_ = half.transition_points();
  m.counts_ = half.interval_counts();
  m.config_ = half.config();
  if (m.config_) m.config_->nu = TurningPoint::Interior;
  m.rebuild_steps();
  m.first_step_decrease_ = half.first_step_decrease();
  return m;
}

Mesh build_mesh(const MeshConfig& cfg) {
  Mesh half = build_half_mesh(cfg);
  if (cfg.nu == TurningPoint::Boundary) {
    half.config_->nu = TurningPoint::Boundary;
    return half;
  }
  return extend_symmetric(half);
}

}  // namespace spturn
