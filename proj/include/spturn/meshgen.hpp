#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "spturn/errors.hpp"

namespace spturn {

/// Location of the turning point x = 0: left endpoint of [0,1] or interior
/// point of [-1,1].
enum class TurningPoint { Boundary, Interior };

/// What the mesh-grading parameter lambda resolves to.
enum class LambdaMode { InverseEpsilon, StepCount };

/// k-fold iterated natural logarithm; depth 0 returns lambda itself.
/// Throws std::domain_error if a logarithm of a nonpositive value is reached.
double iterated_log(double lambda, int k);

/// Largest depth K with 0 < ln^K(lambda) < 1 (strict on both sides).
/// Throws std::domain_error if lambda <= e or an iterate lands exactly on 1.
int max_iterated_depth(double lambda);

/// Built-in subdivision ratios q_1..q_{ell+1} for ell = 1..3; they put roughly
/// 75% of the steps inside the layer.
std::vector<double> default_ratios(int ell);

struct MeshConfig {
  double epsilon = 0.0;
  int ell = 1;                   // number of transition points
  LambdaMode lambda_mode = LambdaMode::InverseEpsilon;
  double alpha = 1.0;            // transition coefficient
  int n_steps = 0;               // N, steps on [0,1]
  std::vector<double> ratios;    // q_1..q_{ell+1}, sum 1
  TurningPoint nu = TurningPoint::Interior;

  double lambda() const;
  /// Throws ConfigError on any violated structural assumption.
  void validate() const;
};

/// tau_k = alpha * eps * ln^{ell-k+1}(lambda), k = 1..ell. Strictly increasing,
/// all below 1.
std::vector<double> transition_points(const MeshConfig& cfg);

/// Immutable graded point sequence. Point indices run lo()..hi(); for a
/// boundary-case mesh lo() = 0, for an interior (symmetric) mesh lo() = -N.
class Mesh {
 public:
  Mesh() = default;   // empty; meaningful meshes come from the factories below

  /// Build directly from points; endpoints must be exactly {0,1} or {-1,1},
  /// steps must be nondecreasing on the positive side, and interior meshes
  /// must mirror exactly.
  static Mesh from_points(std::vector<double> points);

  int half_steps() const { return half_steps_; }   // N
  int total_steps() const { return static_cast<int>(points_.size()) - 1; }
  int interior_count() const { return total_steps() - 1; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + total_steps(); }

  double x(int i) const { return points_[static_cast<size_t>(i - lo_)]; }
  /// h_i = x_i - x_{i-1}, valid for lo()+1 <= i <= hi().
  double step(int i) const { return steps_[static_cast<size_t>(i - lo_ - 1)]; }
  /// (h_i + h_{i+1})/2, valid for lo()+1 <= i <= hi()-1.
  double avg_step(int i) const { return 0.5 * (step(i) + step(i + 1)); }

  TurningPoint turning() const { return turning_; }
  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& transition_points() const { return taus_; }
  const std::vector<int>& interval_counts() const { return counts_; }
  const std::optional<MeshConfig>& config() const { return config_; }

  double min_step() const;
  double max_step() const;

  /// Whether h_i <= h_{i+1} holds across the positive side. Generated meshes
  /// can fail this only at a transition-point junction (the lambda = N family
  /// does, between two inner intervals); the construction records it instead
  /// of rejecting, since the scheme's switching-set contiguity is what
  /// stability needs and that is checked at layout time.
  bool steps_monotone() const { return first_step_decrease_ == 0; }
  /// Step index i with h_i > h_{i+1}, or 0 if none.
  int first_step_decrease() const { return first_step_decrease_; }

  /// Two-column debug dump: index, coordinate.
  void dump(std::ostream& os) const;

 private:
  friend Mesh build_half_mesh(const MeshConfig&);
  friend Mesh extend_symmetric(const Mesh&);
  friend Mesh build_mesh(const MeshConfig&);
  void rebuild_steps();

  std::vector<double> points_;
  std::vector<double> steps_;
  std::vector<double> taus_;
  std::vector<int> counts_;
  std::optional<MeshConfig> config_;
  TurningPoint turning_ = TurningPoint::Boundary;
  int lo_ = 0;
  int half_steps_ = 0;
  int first_step_decrease_ = 0;
};

/// Piecewise-equidistant graded mesh on [0,1]: interval k between consecutive
/// transition points carries N_k equidistant steps, N_k = round(q_k N) for
/// k <= ell and the remainder on the outer interval.
Mesh build_half_mesh(const MeshConfig& cfg);

/// Reflect a [0,1] mesh through the origin onto [-1,1]; points are negated,
/// not re-derived, so x_{-i} + x_i == 0 exactly.
Mesh extend_symmetric(const Mesh& half);

/// build_half_mesh plus symmetric extension when cfg.nu is Interior.
Mesh build_mesh(const MeshConfig& cfg);

}  // namespace spturn
