#pragma once

#include <iosfwd>
#include <vector>

#include "spturn/meshgen.hpp"
#include "spturn/problem.hpp"

namespace spturn {

/// Per-node scheme assignment. Mirror variants are the reflected forms used
/// on the negative side of an interior-case mesh.
enum class SchemeTag { Central, Transition, TransitionMirror, Midpoint, MidpointMirror };

const char* to_string(SchemeTag tag);

/// Tridiagonal matrix over the interior nodes. Row k holds sub(k), diag(k),
/// sup(k); sub(0) and sup(size-1) do not exist.
class TridiagonalMatrix {
 public:
  explicit TridiagonalMatrix(int n)
      : diag_(static_cast<size_t>(n), 0.0),
        sub_(n > 0 ? static_cast<size_t>(n - 1) : 0, 0.0),
        sup_(n > 0 ? static_cast<size_t>(n - 1) : 0, 0.0) {}

  int size() const { return static_cast<int>(diag_.size()); }
  double& diag(int k) { return diag_[static_cast<size_t>(k)]; }
  double diag(int k) const { return diag_[static_cast<size_t>(k)]; }
  /// Entry (k, k-1), valid for k >= 1.
  double& sub(int k) { return sub_[static_cast<size_t>(k - 1)]; }
  double sub(int k) const { return sub_[static_cast<size_t>(k - 1)]; }
  /// Entry (k, k+1), valid for k <= size()-2.
  double& sup(int k) { return sup_[static_cast<size_t>(k)]; }
  double sup(int k) const { return sup_[static_cast<size_t>(k)]; }

  std::vector<double> multiply(const std::vector<double>& v) const;

 private:
  std::vector<double> diag_, sub_, sup_;
};

/// Scheme switching data for one mesh/problem pair: rho values, the switching
/// index n, per-node control-volume weights chi and scheme tags.
struct SchemeLayout {
  Mesh mesh;
  std::vector<double> rho;        // rho_[i] for step index i = 1..N, positive side
  int switch_index = 0;           // n = max{ i : rho_i <= 1 }
  std::vector<double> chi;        // per interior node, flat
  std::vector<SchemeTag> tags;    // per interior node, flat
  bool transition_as_central = false;  // ablation: central formula at transition nodes
  // First i <= n with rho_i > 1, or 0 when {rho_i <= 1} is an index interval.
  // A gap can only come from a step decrease at a mesh junction; it weakens
  // the switching rationale at those nodes but leaves the scheme well defined.
  int switching_gap_index = 0;

  bool switching_contiguous() const { return switching_gap_index == 0; }

  int interior_count() const { return mesh.interior_count(); }
  /// Flat index of interior node i (mesh node indices lo()+1 .. hi()-1).
  int flat_of_node(int i) const { return i - mesh.lo() - 1; }
  int node_of_flat(int k) const { return k + mesh.lo() + 1; }
  double chi_at_node(int i) const { return chi[static_cast<size_t>(flat_of_node(i))]; }
  SchemeTag tag_at_node(int i) const { return tags[static_cast<size_t>(flat_of_node(i))]; }
  /// rho at step index i >= 1 on the positive side.
  double rho_at(int i) const { return rho[static_cast<size_t>(i)]; }

  /// Three-column debug dump: node, tag, rho, chi.
  void dump(std::ostream& os) const;
};

/// Assign schemes and weights on a mesh. With use_transition_scheme = false
/// the transition nodes are tagged as usual but assembled with the central
/// formula (comparison mode; the norms keep their weights).
SchemeLayout compute_layout(const Mesh& mesh, const Problem& p,
                            bool use_transition_scheme = true);

/// T w at every interior node; boundary values are pinned to U_-, U_+.
std::vector<double> residual(const SchemeLayout& layout, const Problem& p,
                             const std::vector<double>& w);

/// Analytic Frechet derivative of residual() with respect to the interior values.
TridiagonalMatrix jacobian(const SchemeLayout& layout, const Problem& p,
                           const std::vector<double>& w);

}  // namespace spturn
