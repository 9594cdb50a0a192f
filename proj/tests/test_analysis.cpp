#include <cmath>
#include <random>

#include "doctest.h"
#include "test_support.hpp"

using namespace spturn;
using namespace spturn::testing;

namespace {

SchemeLayout central_layout_quarter() {
  const Mesh mesh = Mesh::from_points({0.0, 0.25, 0.5, 0.75, 1.0});
  const Problem p(1.0, TurningPoint::Boundary, Polynomial({2.0}), nullptr, 0.0, 1.0);
  return compute_layout(mesh, p);
}

}  // namespace

TEST_CASE("h norm") {
  const SchemeLayout lay = central_layout_quarter();  // chi = 0.25 at each node
  CHECK(h_norm(lay, {1.0, 1.0, 1.0}) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(h_norm(lay, {0.0, 0.0, 0.0}) == 0.0);
  CHECK_THROWS_AS(h_norm(lay, {1.0}), DimensionError);

  SUBCASE("homogeneity and triangle inequality") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (int t = 0; t < 100; ++t) {
      std::vector<double> a(3), b(3), sum(3);
      for (int k = 0; k < 3; ++k) {
        a[static_cast<size_t>(k)] = dist(rng);
        b[static_cast<size_t>(k)] = dist(rng);
        sum[static_cast<size_t>(k)] = a[static_cast<size_t>(k)] + b[static_cast<size_t>(k)];
      }
      std::vector<double> two_a(3);
      for (int k = 0; k < 3; ++k) two_a[static_cast<size_t>(k)] = 2.0 * a[static_cast<size_t>(k)];
      CHECK(h_norm(lay, two_a) == doctest::Approx(2.0 * h_norm(lay, a)).epsilon(1e-12));
      CHECK(h_norm(lay, sum) <= h_norm(lay, a) + h_norm(lay, b) + 1e-12);
    }
  }
}

TEST_CASE("max norm") {
  CHECK(max_norm({1.0, -3.0, 2.0}) == 3.0);
  CHECK(max_norm({}) == 0.0);
  CHECK(max_norm({-0.25}) == 0.25);
}

TEST_CASE("convergence orders") {
  CHECK(order(4e-3, 1e-3) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(order(7.83e-05, 1.96e-05) == doctest::Approx(2.00).epsilon(5e-3));
  CHECK(order(1.96e-05, 1.96e-05) == 0.0);
  CHECK_THROWS_AS(order(0.0, 1e-3), std::domain_error);
  CHECK_THROWS_AS(order(1e-3, -1e-3), std::domain_error);

  SUBCASE("exact on synthetic geometric decay") {
    const double c = 0.37;
    for (double pexp : {0.5, 1.0, 2.0, 3.25})
      CHECK(order(c * std::pow(64.0, -pexp), c * std::pow(128.0, -pexp)) ==
            doctest::Approx(pexp).epsilon(1e-12));
  }
}

TEST_CASE("epsilon order uses log ratios") {
  CHECK(eps_order(4e-9, 1e-9) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(eps_order(0.0, 1e-9), std::domain_error);
  // composing two factor-4 steps halves the measured order sum: the published
  // N = 512 values at eps and eps/16 give a mean order of 1.12, matching the
  // average of the two intermediate entries (1.21, 1.03)
  const double two_step = std::log(4.29e-9 / 1.93e-10) / std::log(16.0);
  CHECK(two_step == doctest::Approx(1.12).epsilon(5e-3));
}

TEST_CASE("theoretical delta") {
  const double d = theoretical_delta(std::ldexp(1.0, -14), 3, 16384.0, 512);
  CHECK(rel_err(d, 1.5689920536340474e-10) < 1e-12);
  // ln^0(lambda) = lambda, so lambda = N collapses the ratio to 1
  CHECK(theoretical_delta(0.3, 0, 64.0, 64) == doctest::Approx(0.3).epsilon(1e-15));
  // N^{-2} scaling
  CHECK(theoretical_delta(0.25, 2, 1000.0, 64) ==
        doctest::Approx(16.0 * theoretical_delta(0.25, 2, 1000.0, 256)).epsilon(1e-13));
  CHECK_THROWS_AS(theoretical_delta(0.25, 3, 2.0, 64), std::domain_error);
}

TEST_CASE("error report") {
  const double eps = std::ldexp(1.0, -8);
  MeshConfig mc = make_config(eps, 2, LambdaMode::InverseEpsilon, 1.0, 64, TurningPoint::Interior);
  const Mesh mesh = build_mesh(mc);
  const Problem p = manufactured_tanh_problem(eps);
  const SchemeLayout lay = compute_layout(mesh, p);
  DiscreteSolution sol = solve(lay, p);

  SUBCASE("exact nodal values give zero error") {
    for (int i = mesh.lo() + 1; i <= mesh.hi() - 1; ++i)
      sol.values[static_cast<size_t>(lay.flat_of_node(i))] = p.exact()->value(mesh.x(i));
    const ErrorReport rep = error_report(sol, p);
    CHECK(rep.E == 0.0);
    CHECK(rep.E1 == 0.0);
    CHECK(rep.delta > 0.0);
    CHECK(rep.ell == 2);
    CHECK(rep.n_steps == 64);
  }
  SUBCASE("missing exact solution") {
    const Problem bare = linear_b_problem(eps, TurningPoint::Interior);
    const SchemeLayout lay2 = compute_layout(mesh, bare);
    const DiscreteSolution sol2 = solve(lay2, bare);
    CHECK_THROWS_AS(error_report(sol2, bare), MissingExactSolutionError);
  }
}

TEST_CASE("published anchor cell within tolerance") {
  const double eps = std::ldexp(1.0, -14);
  MeshConfig mc = make_config(eps, 3, LambdaMode::InverseEpsilon, 1.0, 512,
                              TurningPoint::Interior);
  const Mesh mesh = build_mesh(mc);
  const Problem p = manufactured_tanh_problem(eps);
  const SchemeLayout lay = compute_layout(mesh, p);
  const ErrorReport rep = error_report(solve(lay, p), p);
  CHECK(rel_err(rep.E, 1.96e-5) < 0.15);
  CHECK(rel_err(rep.E1, 4.29e-9) < 0.15);
}

TEST_CASE("L-matrix certification") {
  SUBCASE("positive diagonal matrix passes") {
    TridiagonalMatrix m(3);
    m.diag(0) = m.diag(1) = m.diag(2) = 1.0;
    CHECK(certify_l_matrix(m).pass);
  }
  SUBCASE("positive off-diagonal entry is named") {
    TridiagonalMatrix m(3);
    m.diag(0) = m.diag(1) = m.diag(2) = 1.0;
    m.sup(1) = 0.5;
    const LMatrixReport rep = certify_l_matrix(m);
    CHECK(!rep.pass);
    CHECK(rep.row == 1);
    CHECK(rep.col == 2);
    CHECK(rep.value == 0.5);
  }
  SUBCASE("nonpositive diagonal fails") {
    TridiagonalMatrix m(2);
    m.diag(0) = 1.0;
    m.diag(1) = 0.0;
    CHECK(!certify_l_matrix(m).pass);
  }
}

TEST_CASE("weighted row sums") {
  const double eps = std::ldexp(1.0, -10);
  const double beta0 = 2.0;
  MeshConfig mc = make_config(eps, 2, LambdaMode::InverseEpsilon, 1.0, 64, TurningPoint::Interior);
  const Mesh mesh = build_mesh(mc);
  const Problem p = constant_b_problem(eps, TurningPoint::Interior, beta0);
  const SchemeLayout lay = compute_layout(mesh, p);
  REQUIRE(lay.switch_index > 1);
  REQUIRE(lay.switch_index < mesh.half_steps() - 2);

  const std::vector<double> w = random_mesh_function(lay, p, 31337);
  const TridiagonalMatrix g = jacobian(lay, p, w);
  const RowSumReport rep = certify_row_sums(lay, p, g, w);

  CHECK(rep.pass);
  CHECK(rep.bound == doctest::Approx(beta0 / 2.0));
  CHECK(rep.min_row_sum >= rep.bound - 1e-12);

  SUBCASE("transition-adjacent rows carry exactly b/2") {
    REQUIRE(rep.transition_adjacent.size() == 2);  // node n+1 and its mirror
    for (const auto& t : rep.transition_adjacent) {
      CHECK(std::abs(t.sum - t.expected) <= 1e-12);
      CHECK(t.expected == doctest::Approx(beta0 / 2.0));
    }
  }
  SUBCASE("constant b reproduces the proof's row-sum identity") {
    // rows whose three-point neighborhood uses one scheme (and equal steps in
    // the one-sided cases) satisfy s_i = b_i exactly
    int checked = 0;
    for (int i = mesh.lo() + 2; i <= mesh.hi() - 2; ++i) {
      const SchemeTag t = lay.tag_at_node(i);
      if (lay.tag_at_node(i - 1) != t || lay.tag_at_node(i + 1) != t) continue;
      if (t == SchemeTag::Transition || t == SchemeTag::TransitionMirror) continue;
      if (t != SchemeTag::Central &&
          std::abs(mesh.step(i) - mesh.step(i + 1)) > 1e-12 * mesh.step(i + 1))
        continue;
      CHECK(std::abs(rep.row_sums[static_cast<size_t>(lay.flat_of_node(i))] - beta0) <= 1e-12);
      ++checked;
    }
    CHECK(checked > 20);
  }
}

TEST_CASE("random mesh functions are deterministic per seed") {
  const double eps = std::ldexp(1.0, -8);
  MeshConfig mc = make_config(eps, 1, LambdaMode::InverseEpsilon, 1.0, 32, TurningPoint::Interior);
  const Mesh mesh = build_mesh(mc);
  const Problem p = manufactured_tanh_problem(eps);
  const SchemeLayout lay = compute_layout(mesh, p);
  const std::vector<double> a = random_mesh_function(lay, p, 11);
  const std::vector<double> b = random_mesh_function(lay, p, 11);
  const std::vector<double> c = random_mesh_function(lay, p, 12);
  CHECK(a == b);
  CHECK(a != c);
  for (double v : a) {
    CHECK(v >= p.u_minus());
    CHECK(v <= p.u_plus());
  }
}
