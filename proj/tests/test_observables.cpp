#include <doctest.h>

#include <cmath>
#include <random>

#include "rabistark/analytic.hpp"
#include "rabistark/observables.hpp"

using namespace rabistark;

TEST_SUITE("observables") {

TEST_CASE("quadrature operator anchors") {
  const Truncation t{6};
  const QuadratureOps ops = quadrature_operators(t);
  CHECK(ops.x2.at(0, 0) == doctest::Approx(0.5));
  CHECK(ops.aa.at(0, 2) == doctest::Approx(std::sqrt(2.0)));
  CHECK(ops.aa.at(2, 0) == doctest::Approx(std::sqrt(2.0)));
  // x2 + p2 = 2n + 1 as an exact matrix identity
  for (int i = 0; i < ops.x2.dim; ++i)
    for (int j = 0; j < ops.x2.dim; ++j) {
      const int n = (i <= t.n_max) ? i : i - (t.n_max + 1);
      const double expect = (i == j) ? 2.0 * n + 1.0 : 0.0;
      CHECK(ops.x2.at(i, j) + ops.p2.at(i, j) == doctest::Approx(expect));
    }
  CHECK(max_asymmetry(ops.x2) == 0.0);
  CHECK(max_asymmetry(ops.p2) == 0.0);
  CHECK(max_asymmetry(ops.aa) == 0.0);
}

TEST_CASE("expectation helpers agree with the dense operators") {
  const ModelParams p = params_from_ratios(0.5, 2.2, 0.7, -0.2);
  const auto r = ground_solve(p);
  const Truncation t{r.n_max_used};
  const QuadratureOps ops = quadrature_operators(t);
  const auto& v = r.states[0];
  auto quad_form = [&](const OperatorMatrix& m) {
    double acc = 0.0;
    for (int i = 0; i < m.dim; ++i)
      for (int j = 0; j < m.dim; ++j) acc += v[i] * m.at(i, j) * v[j];
    return acc;
  };
  const double n = expectation_number(v, t);
  const double aa = expectation_aa(v, t);
  CHECK(quad_form(ops.x2) == doctest::Approx(aa + n + 0.5).epsilon(1e-11));
  CHECK(quad_form(ops.p2) == doctest::Approx(-aa + n + 0.5).epsilon(1e-11));
  // the pair-amplitude matrix carries both orderings
  CHECK(quad_form(ops.aa) == doctest::Approx(2.0 * aa).epsilon(1e-11));
}

TEST_CASE("parity of the decoupled basis states") {
  const Truncation t{4};
  const OperatorMatrix pm = parity(t);
  std::vector<double> v(2 * (t.n_max + 1), 0.0);
  v[basis_index(t, -1, 0)] = 1.0;
  CHECK(parity_value(v, pm) == -1);
  v.assign(v.size(), 0.0);
  v[basis_index(t, -1, 1)] = 1.0;
  CHECK(parity_value(v, pm) == +1);
  // an equal mixture of opposite parities is rejected
  v.assign(v.size(), 0.0);
  v[basis_index(t, -1, 0)] = 1.0 / std::sqrt(2.0);
  v[basis_index(t, -1, 1)] = 1.0 / std::sqrt(2.0);
  CHECK_THROWS_AS(parity_value(v, pm), Error);
}

TEST_CASE("analysis of the decoupled point") {
  const GroundStateAnalysis a = analyze(params_from_ratios(0.5, 0.0, 1.0, 0.0));
  CHECK(a.parity == -1);
  CHECK(a.n_z == 0);
  CHECK(a.mean_sx == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(a.mean_n == doctest::Approx(0.0));
  CHECK(a.mean_x2 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(a.mean_p2 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::isnan(a.zeta));
  CHECK(a.converged);
}

TEST_CASE("operator identity holds for every analyzed state") {
  std::mt19937 rng(4321);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 8; ++trial) {
    const double omega = 0.1 + 0.9 * u(rng);
    const double g = 3.5 * u(rng);
    const double lambda = 3.0 * u(rng) - 1.5;
    const double chi = 1.8 * u(rng) - 0.9;
    const GroundStateAnalysis a =
        analyze(params_from_ratios(omega, g, lambda, chi), -1.0, false);
    CHECK(a.mean_x2 + a.mean_p2 ==
          doctest::Approx(2.0 * a.mean_n + 1.0).epsilon(1e-8));
    CHECK(a.mean_sx >= -1.0);
    CHECK(a.mean_sx <= 1.0);
  }
}

TEST_CASE("duality: lambda sign flip swaps the quadratures") {
  const GroundStateAnalysis ap = analyze(params_from_ratios(0.5, 2.7, 0.6, -0.3));
  const GroundStateAnalysis am = analyze(params_from_ratios(0.5, 2.7, -0.6, -0.3));
  CHECK(ap.E0 == doctest::Approx(am.E0).epsilon(1e-10));
  CHECK(ap.gap == doctest::Approx(am.gap).epsilon(1e-9));
  CHECK(ap.parity == am.parity);
  CHECK(ap.n_z == am.n_z);
  CHECK(ap.mean_n == doctest::Approx(am.mean_n).epsilon(1e-7));
  CHECK(ap.mean_sx == doctest::Approx(am.mean_sx).epsilon(1e-7));
  CHECK(ap.mean_x2 == doctest::Approx(am.mean_p2).epsilon(1e-7));
  CHECK(ap.mean_p2 == doctest::Approx(am.mean_x2).epsilon(1e-7));
  CHECK(ap.zeta == doctest::Approx(am.zeta).epsilon(1e-6));
}

TEST_CASE("x-p balance at lambda=0") {
  const GroundStateAnalysis a = analyze(params_from_ratios(0.01, 2.5, 0.0, 0.3));
  CHECK(a.mean_x2 == doctest::Approx(a.mean_p2).epsilon(1e-6));
}

TEST_CASE("spin expectation approaches -1 at weak coupling") {
  for (double chi : {-0.9, -0.3, 0.0, 0.5, 0.9}) {
    const GroundStateAnalysis a =
        analyze(params_from_ratios(0.5, 0.02, 0.8, chi), -1.0, false);
    CHECK(a.mean_sx == doctest::Approx(-1.0).epsilon(1e-3));
  }
}

TEST_CASE("post-transition doublet reports the even representative") {
  const GroundStateAnalysis a = analyze(params_from_ratios(0.01, 2.0, 1.0, 0.0));
  CHECK(a.degenerate);
  CHECK(a.parity == +1);
  CHECK(a.gap < 1e-4);
}

TEST_CASE("scaled displacement matches the low-frequency law") {
  // 1.3 g_c at omega = 0.01, lambda = 0.5, chi = 0.4
  const double gc = critical_coupling(0.5, 0.4);
  const ModelParams p = params_from_ratios(0.01, 1.3 * gc, 0.5, 0.4);
  const GroundStateAnalysis a = analyze(p, -1.0, false);
  const DerivedScales s = derived_scales(p);
  const double gbar = 1.3 * std::sqrt(1.0 - 0.4);
  const ScalingValues v = scaling_laws(gbar, 0.4);
  CHECK(a.mean_x2 / (s.x_s * s.x_s) ==
        doctest::Approx(v.x2_scaled).epsilon(0.04));
}

TEST_CASE("quadruple point is a spin-invariant adiabatic point") {
  const QuadruplePoint q = quadruple_point_fixed_chi(-0.3);
  for (double omega : {0.5, 0.3}) {
    const GroundStateAnalysis a =
        analyze(params_from_ratios(omega, q.g, q.lambda, q.chi));
    CHECK(std::fabs(a.mean_sx) < 0.02);
    CHECK(a.zeta == doctest::Approx(1.0).epsilon(0.02));
  }
}

}  // TEST_SUITE
