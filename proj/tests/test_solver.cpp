#include <cmath>
#include <random>

#include "doctest.h"
#include "test_support.hpp"

using namespace spturn;
using namespace spturn::testing;

TEST_CASE("tridiagonal solve") {
  SUBCASE("identity") {
    TridiagonalMatrix m(3);
    m.diag(0) = m.diag(1) = m.diag(2) = 1.0;
    CHECK(tridiagonal_solve(m, {3.0, -1.0, 2.0}) == std::vector<double>{3.0, -1.0, 2.0});
  }
  SUBCASE("small stiffness system") {
    TridiagonalMatrix m(2);
    m.diag(0) = m.diag(1) = 2.0;
    m.sub(1) = -1.0;
    m.sup(0) = -1.0;
    const std::vector<double> x = tridiagonal_solve(m, {1.0, 1.0});
    CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("pivot underflow") {
    TridiagonalMatrix m(2);
    m.diag(0) = 1e-310;
    m.diag(1) = 1.0;
    CHECK_THROWS_AS(tridiagonal_solve(m, {1.0, 1.0}), SingularMatrixError);
  }
  SUBCASE("random M-matrices solve to roundoff") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> off(-1.0, 0.0);
    std::uniform_real_distribution<double> rhs_dist(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 20;
      TridiagonalMatrix m(n);
      std::vector<double> b(static_cast<size_t>(n));
      for (int k = 0; k < n; ++k) {
        double row_off = 0.0;
        if (k > 0) {
          m.sub(k) = off(rng);
          row_off += std::abs(m.sub(k));
        }
        if (k < n - 1) {
          m.sup(k) = off(rng);
          row_off += std::abs(m.sup(k));
        }
        m.diag(k) = row_off + 0.5;
        b[static_cast<size_t>(k)] = rhs_dist(rng);
      }
      const std::vector<double> x = tridiagonal_solve(m, b);
      const std::vector<double> mx = m.multiply(x);
      for (int k = 0; k < n; ++k)
        CHECK(std::abs(mx[static_cast<size_t>(k)] - b[static_cast<size_t>(k)]) <= 1e-12);
    }
  }
  SUBCASE("dimension mismatch") {
    TridiagonalMatrix m(3);
    m.diag(0) = m.diag(1) = m.diag(2) = 1.0;
    CHECK_THROWS_AS(tridiagonal_solve(m, {1.0}), DimensionError);
  }
}

namespace {

struct Solved {
  Mesh mesh;
  Problem p;
  SchemeLayout layout;
  DiscreteSolution sol;
};

Solved solve_tanh(double eps, int ell, int n_steps, SolverConfig cfg = {}) {
  MeshConfig mc = make_config(eps, ell, LambdaMode::InverseEpsilon, 1.0, n_steps,
                              TurningPoint::Interior);
  Mesh mesh = build_mesh(mc);
  Problem p = manufactured_tanh_problem(eps);
  SchemeLayout layout = compute_layout(mesh, p);
  DiscreteSolution sol = solve(layout, p, cfg);
  return {std::move(mesh), std::move(p), std::move(layout), std::move(sol)};
}

}  // namespace

TEST_CASE("newton converges on the manufactured problem") {
  const double eps = std::ldexp(1.0, -6);
  const Solved s = solve_tanh(eps, 2, 64);
  CHECK(s.sol.residual_h <= 1e-14 * (1.0 + s.p.u_plus() - s.p.u_minus()));
  CHECK(s.sol.iterations <= 50);
  for (double v : s.sol.values) {
    CHECK(v >= s.p.u_minus());
    CHECK(v <= s.p.u_plus());
  }
  const ErrorReport rep = error_report(s.sol, s.p);
  CHECK(rep.E < 0.05);
  CHECK(rep.E1 < 0.01);

  SUBCASE("pinned boundary values") {
    CHECK(s.sol.value_at(s.mesh.lo()) == s.p.u_minus());
    CHECK(s.sol.value_at(s.mesh.hi()) == s.p.u_plus());
  }
  SUBCASE("warm restart converges immediately") {
    const DiscreteSolution again = solve(s.layout, s.p, {}, s.sol.values);
    CHECK(again.iterations <= 1);
  }
  SUBCASE("residual history decreases monotonically under damping") {
    for (size_t k = 1; k < s.sol.residual_history.size(); ++k)
      CHECK(s.sol.residual_history[k] <= s.sol.residual_history[k - 1]);
  }
  SUBCASE("clamping inactive on the final iterations") {
    const auto& clamps = s.sol.clamped_per_iter;
    REQUIRE(!clamps.empty());
    for (size_t k = clamps.size() >= 3 ? clamps.size() - 3 : 0; k < clamps.size(); ++k)
      CHECK(clamps[k] == 0);
  }
}

TEST_CASE("uniqueness probe: distinct initial guesses agree") {
  const double eps = std::ldexp(1.0, -10);
  const Solved s = solve_tanh(eps, 3, 128);
  const std::vector<double> flat(static_cast<size_t>(s.layout.interior_count()), s.p.u_plus());
  const DiscreteSolution other = solve(s.layout, s.p, {}, flat);
  double diff = 0.0;
  for (size_t k = 0; k < flat.size(); ++k)
    diff = std::max(diff, std::abs(other.values[k] - s.sol.values[k]));
  CHECK(diff <= 1e-10);
}

TEST_CASE("stability inequality on random pairs") {
  const double eps = std::ldexp(1.0, -8);
  MeshConfig mc = make_config(eps, 2, LambdaMode::InverseEpsilon, 1.0, 32, TurningPoint::Interior);
  const Mesh mesh = build_mesh(mc);
  const Problem p = manufactured_tanh_problem(eps);
  const SchemeLayout lay = compute_layout(mesh, p);
  const StabilityReport rep = certify_stability(lay, p, 200, 777);
  CHECK(rep.pass);
  CHECK(rep.max_ratio <= 2.0 / p.b_lower() + 1e-9);
}

TEST_CASE("nonconvergence reports the best iterate") {
  const double eps = std::ldexp(1.0, -14);
  MeshConfig mc = make_config(eps, 3, LambdaMode::InverseEpsilon, 1.0, 256, TurningPoint::Interior);
  const Mesh mesh = build_mesh(mc);
  const Problem p = manufactured_tanh_problem(eps);
  const SchemeLayout lay = compute_layout(mesh, p);
  SolverConfig cfg;
  cfg.max_iters = 2;
  try {
    solve(lay, p, cfg);
    FAIL("expected NonConvergenceError");
  } catch (const NonConvergenceError& e) {
    CHECK(e.iterations() == 2);
    CHECK(e.best_iterate().size() == static_cast<size_t>(lay.interior_count()));
    CHECK(e.residual_h_norm() > 0.0);
  }
}

TEST_CASE("continuation ladder") {
  const double target = std::ldexp(1.0, -10);
  MeshConfig mc = make_config(target, 2, LambdaMode::InverseEpsilon, 1.0, 64,
                              TurningPoint::Interior);
  const Mesh mesh = build_mesh(mc);
  const Problem p = manufactured_tanh_problem(target);
  const SchemeLayout lay = compute_layout(mesh, p);

  SolverConfig cfg;
  cfg.continuation = {std::ldexp(1.0, -6), std::ldexp(1.0, -8), target};
  const DiscreteSolution laddered = solve(lay, p, cfg);
  const DiscreteSolution direct = solve(lay, p);
  double diff = 0.0;
  for (size_t k = 0; k < laddered.values.size(); ++k)
    diff = std::max(diff, std::abs(laddered.values[k] - direct.values[k]));
  CHECK(diff <= 1e-12);

  SUBCASE("ladder must end at the problem epsilon") {
    SolverConfig bad;
    bad.continuation = {std::ldexp(1.0, -6), std::ldexp(1.0, -8)};
    CHECK_THROWS_AS(solve(lay, p, bad), ConfigError);
  }
  SUBCASE("ladder must strictly decrease") {
    SolverConfig bad;
    bad.continuation = {std::ldexp(1.0, -8), std::ldexp(1.0, -8), target};
    CHECK_THROWS_AS(solve(lay, p, bad), ConfigError);
  }
}

TEST_CASE("solver config validation") {
  SolverConfig cfg;
  cfg.step_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.max_iters = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("plain newton without damping still converges here") {
  SolverConfig cfg;
  cfg.damping = Damping::None;
  const Solved s = solve_tanh(std::ldexp(1.0, -8), 2, 64, cfg);
  CHECK(s.sol.residual_h <= 1e-13);
}
