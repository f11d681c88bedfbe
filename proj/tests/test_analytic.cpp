#include <doctest.h>

#include <cmath>

#include "rabistark/analytic.hpp"
#include "rabistark/eigensolve.hpp"
#include "rabistark/fock.hpp"

using namespace rabistark;

namespace {

// Test-side golden-section minimizer, kept independent of the library one.
template <typename F>
double argmin(F f, double a, double b) {
  const double r = 0.6180339887498949;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-11 * (1.0 + std::fabs(a) + std::fabs(b))) {
    if (fc < fd) {
      b = d; d = c; fd = fc; c = b - r * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd; d = a + r * (b - a); fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

double jc_lower(const ModelParams& p, double n) {
  const double ep = (n + 0.5 * (1.0 - p.chi)) * p.omega;
  const double em = 0.5 * (p.Omega - p.omega) + (n + 0.5) * p.chi * p.omega;
  return ep - std::sqrt(em * em + (n + 1.0) * p.g * p.g);
}

}  // namespace

TEST_SUITE("analytic") {

TEST_CASE("resonant doublet without Stark term") {
  const ModelParams p = validate({1.0, 1.0, 0.13, 0.0, 0.0});
  const JCStarkLevel lv = jc_level(p, 0);
  CHECK(lv.E_minus == doctest::Approx(0.5 - 0.13).epsilon(1e-14));
  CHECK(lv.E_plus == doctest::Approx(0.5 + 0.13).epsilon(1e-14));
  CHECK(lv.C_up * lv.C_up + lv.C_down * lv.C_down ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("g=0 block coefficients collapse to a basis state") {
  const ModelParams p = validate({0.5, 1.0, 0.0, 0.0, 0.3});
  const JCStarkLevel lv = jc_level(p, 2);
  CHECK(std::fabs(lv.C_up) == doctest::Approx(0.0));
  CHECK(std::fabs(lv.C_down) == doctest::Approx(1.0));
  CHECK(lv.E_minus == doctest::Approx(lv.e_plus - std::fabs(lv.e_minus)));
}

TEST_CASE("block index of the ground state matches numerics") {
  const ModelParams p = params_from_ratios(0.5, 3.0, 0.0, 0.4);
  const JCGround gs = jc_ground_energy(p);
  REQUIRE(gs.n_star.has_value());
  const auto r = ground_solve(p);
  CHECK(gs.E_GS == doctest::Approx(r.energies[0]).epsilon(1e-10));
  // the numerical GS occupation sits inside the analytic block
  const double nbar = expectation_number(r.states[0], Truncation{r.n_max_used});
  CHECK(nbar >= *gs.n_star);
  CHECK(nbar <= *gs.n_star + 1);
}

TEST_CASE("before the first crossing the vacuum branch wins") {
  const ModelParams p = params_from_ratios(0.5, 1.0, 0.0, 0.4);
  // first crossing at 2 sqrt(1-chi) = 1.549 in units of g_s
  const JCGround gs = jc_ground_energy(p);
  CHECK(gs.E_GS == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(!gs.n_star.has_value());
}

TEST_CASE("jc ground energy against numerics at low frequency") {
  for (double chi : {0.0, 0.4, -0.3, 0.8}) {
    const ModelParams p = params_from_ratios(0.01, 2.5, 0.0, chi);
    const JCGround gs = jc_ground_energy(p);
    const auto r = ground_solve(p);
    CHECK(std::fabs(gs.E_GS - r.energies[0]) < 1e-8);
  }
}

TEST_CASE("numeric block crossings solve the degeneracy condition") {
  for (double omega : {0.5, 0.05}) {
    for (double chi : {0.0, 0.2, -0.3}) {
      ModelParams p = params_from_ratios(omega, 1.0, 0.0, chi);
      const double g01 = jc_level_crossing(p, 0);
      CHECK(g01 > 2.0 * std::sqrt(1.0 - chi));  // beyond the vacuum crossing
      p = params_from_ratios(omega, g01, 0.0, chi);
      CHECK(jc_level(p, 0).E_minus ==
            doctest::Approx(jc_level(p, 1).E_minus).epsilon(1e-10));
    }
  }
}

TEST_CASE("optimal quantum number: closed form vs direct minimization") {
  const ModelParams p = params_from_ratios(0.01, 3.0, 0.0, 0.4);
  const OptimalNumber n = n_optimal(p);
  CHECK(n.n_min == doctest::Approx(64.1894).epsilon(1e-4));
  const double oracle =
      argmin([&](double x) { return jc_lower(p, x); }, 0.0, 500.0);
  CHECK(n.n_min == doctest::Approx(oracle).epsilon(1e-6));
  CHECK(n.n_min_low == doctest::Approx(2.6032338834229445).epsilon(1e-12));
}

TEST_CASE("optimal number approaches the low-frequency form") {
  // n_s = Omega/(4 omega); the exact and limiting forms approach each other
  // as the frequency drops.
  const OptimalNumber a = n_optimal(params_from_ratios(0.01, 3.0, 0.0, 0.4));
  CHECK(a.n_min == doctest::Approx(a.n_min_low * 25.0).epsilon(0.02));
  const OptimalNumber b = n_optimal(params_from_ratios(0.001, 3.0, 0.0, 0.4));
  CHECK(b.n_min == doctest::Approx(b.n_min_low * 250.0).epsilon(0.01));
}

TEST_CASE("optimal number chi->0 limit is smooth") {
  // gbar^2/4 - 4/gbar^2 at gbar=3 is 1.80555...; the series branch and the
  // direct formula must agree across the switch.
  const OptimalNumber tiny = n_optimal(params_from_ratios(0.01, 3.0, 0.0, 1e-6));
  CHECK(tiny.n_min_low == doctest::Approx(9.0 / 4.0 - 4.0 / 9.0).epsilon(1e-5));
  const double eps = 1e-10;
  const OptimalNumber lo = n_optimal(params_from_ratios(0.01, 3.0, 0.0, 1e-4 - eps));
  const OptimalNumber hi = n_optimal(params_from_ratios(0.01, 3.0, 0.0, 1e-4 + eps));
  CHECK(lo.n_min_low == doctest::Approx(hi.n_min_low).epsilon(1e-6));
  CHECK(lo.n_min == doctest::Approx(hi.n_min).epsilon(1e-4));
}

TEST_CASE("optimal number rejects the pre-transition regime") {
  // negative chi: the square root turns imaginary below the displaced onset
  CHECK_THROWS_AS(n_optimal(params_from_ratios(0.01, 0.5, 0.0, -0.5)), Error);
}

TEST_CASE("variational energy at the origin is the bare branch") {
  for (double chi : {0.54, 0.64, 0.74}) {
    const ModelParams p = params_from_ratios(0.01, 0.8, 0.5, chi);
    CHECK(variational_energy(0.0, p) == doctest::Approx(-0.5).epsilon(1e-13));
  }
}

TEST_CASE("flat quartic bottom exactly at the critical Stark ratio") {
  // chi_c = 0.64 at g = 0.8 g_s, lambda = 0.5
  const ModelParams p = params_from_ratios(0.01, 0.8, 0.5, 0.64);
  const double h = 0.01;
  const double d2 = (variational_energy(h, p) - 2.0 * variational_energy(0.0, p) +
                     variational_energy(-h, p)) / (h * h);
  CHECK(std::fabs(d2) < 1e-6);  // quadratic term gone
  // below the critical ratio the origin is a strict minimum,
  // above it a local maximum
  const ModelParams below = params_from_ratios(0.01, 0.8, 0.5, 0.54);
  const ModelParams above = params_from_ratios(0.01, 0.8, 0.5, 0.74);
  CHECK(variational_energy(h, below) > variational_energy(0.0, below));
  CHECK(variational_energy(h, above) < variational_energy(0.0, above));
}

TEST_CASE("two symmetric minima after the transition") {
  const ModelParams p = params_from_ratios(0.01, 0.8, 0.5, 0.74);
  const VariationalMinima m = variational_minima(p);
  REQUIRE(m.x_A.has_value());
  CHECK(*m.x_A == doctest::Approx(4.482691227876).epsilon(1e-9));
  CHECK(variational_energy(*m.x_A, p) ==
        doctest::Approx(variational_energy(-*m.x_A, p)).epsilon(1e-13));
  // oracle: one-dimensional golden-section minimization (its location is
  // limited to ~sqrt(eps) by the flatness of the minimum)
  const double xo = argmin([&](double x) { return variational_energy(x, p); },
                           0.1, 40.0);
  CHECK(*m.x_A == doctest::Approx(xo).epsilon(1e-6));
  CHECK(*m.E_SC_A == doctest::Approx(variational_energy(xo, p)).epsilon(1e-12));
}

TEST_CASE("no displaced minimum before the transition") {
  const ModelParams p = params_from_ratios(0.01, 0.8, 0.5, 0.54);
  const VariationalMinima m = variational_minima(p);
  CHECK(!m.x_A.has_value());
  CHECK(!m.E_SC_A.has_value());
  CHECK(m.E_SC_B == doctest::Approx(-0.5));
}

TEST_CASE("displaced branch energy equals the bare one at criticality") {
  // 20x20 grid over (0,1] x (-0.95,0.95); exactly at the onset the
  // displaced minimum sits at the origin, so evaluate the branch energy at
  // the critical displacement directly.
  for (int i = 1; i <= 20; ++i)
    for (int j = 0; j < 20; ++j) {
      const double lambda = i / 20.0;
      const double chi = -0.95 + 1.9 * (j + 0.5) / 20.0;
      const double gc = critical_coupling(lambda, chi);
      const ModelParams p = params_from_ratios(0.01, gc, lambda, chi);
      const DerivedScales s = derived_scales(p);
      const double e_a = displaced_branch_energy(s.gp_z, p);
      CHECK(std::fabs(e_a - (-0.5)) < 1e-10 * 0.5);
    }
}

TEST_CASE("displaced branch peaks exactly at the critical displacement") {
  const ModelParams p = params_from_ratios(0.01, 1.0, 0.5, 0.3);
  const double gp_c = std::sqrt((1.0 - p.chi) * p.Omega / (2.0 * p.omega));
  const double h = 1e-4;
  const double left = displaced_branch_energy(gp_c - h, p);
  const double mid = displaced_branch_energy(gp_c, p);
  const double right = displaced_branch_energy(gp_c + h, p);
  CHECK(mid >= left);
  CHECK(mid >= right);
}

TEST_CASE("critical coupling values") {
  CHECK(critical_coupling(0.5, 0.4) == doctest::Approx(1.03280).epsilon(1e-5));
  CHECK(critical_coupling(1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(critical_coupling(0.0, 0.0) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("boundary set domains") {
  {
    const BoundarySet b = boundaries(validate({0.5, 1.0, 0.0, 1.0, 0.0}));
    REQUIRE(b.g_c.has_value());
    CHECK(*b.g_c == doctest::Approx(1.0));
    CHECK(!b.g_T1E.has_value());  // isotropic with no Stark term: degenerate
    CHECK(!b.g_zeta1.has_value());
    CHECK(!b.g_zeta2.has_value());
  }
  {
    const BoundarySet b = boundaries(validate({0.5, 1.0, 0.0, 0.0, 0.0}));
    REQUIRE(b.g_T1E.has_value());
    REQUIRE(b.g_jc.has_value());
    CHECK(*b.g_T1E == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(*b.g_jc == doctest::Approx(2.0).epsilon(1e-14));
  }
  {
    const ModelParams p = validate({0.5, 1.0, 0.0, 0.4, -0.5});
    const BoundarySet b = boundaries(p);
    REQUIRE(b.g_zeta2.has_value());
    REQUIRE(b.g_sx.has_value());
    CHECK(*b.g_sx == *b.g_zeta2);
    CHECK(!b.g_zeta1.has_value());
  }
  {
    const BoundarySet b = boundaries(validate({0.5, 1.0, 0.0, 0.4, 0.5}));
    REQUIRE(b.g_zeta1.has_value());
    CHECK(!b.g_zeta2.has_value());
    CHECK(!b.g_sx.has_value());
  }
}

TEST_CASE("chi_c anchor: 0.64 at g=0.8, lambda=0.5") {
  const auto v = chi_c(0.8, 0.5);
  REQUIRE(v.has_value());
  CHECK(*v == doctest::Approx(0.64).epsilon(1e-14));
}

TEST_CASE("inverse boundary forms round trip") {
  // Mutual-inverse property in the branch-safe direction: g -> parameter
  // -> g reproduces the input (the anisotropy inverses return the
  // principal branch of a quadratic).
  auto g_of = [](double lambda, double chi, int which) -> std::optional<double> {
    const BoundarySet b = boundaries(validate({0.5, 1.0, 0.0, lambda, chi}));
    switch (which) {
      case 0: return b.g_c;
      case 1: return b.g_zeta1;
      case 2: return b.g_zeta2;
      case 3: return b.g_T1;
      default: return b.g_T1E;
    }
  };
  for (double g : {0.9, 1.4, 2.1, 3.2})
    for (double chi : {-0.7, -0.3, 0.2, 0.6}) {
      if (const auto l = lambda_c(g, chi)) {
        const auto back = g_of(*l, chi, 0);
        REQUIRE(back);
        CHECK(*back == doctest::Approx(g).epsilon(1e-10));
      }
      if (const auto l = lambda_c_zeta1(g, chi)) {
        const auto back = g_of(*l, chi, 1);
        REQUIRE(back);
        CHECK(*back == doctest::Approx(g).epsilon(1e-10));
      }
      if (const auto l = lambda_c_zeta2(g, chi)) {
        const auto back = g_of(*l, chi, 2);
        REQUIRE(back);
        CHECK(*back == doctest::Approx(g).epsilon(1e-10));
        CHECK(lambda_c_sx(g, chi) == l);
      }
      if (const auto l = lambda_T1(g, chi)) {
        const auto back = g_of(*l, chi, 3);
        REQUIRE(back);
        CHECK(*back == doctest::Approx(g).epsilon(1e-10));
      }
      if (const auto l = lambda_T1E(g, chi)) {
        const auto back = g_of(*l, chi, 4);
        REQUIRE(back);
        CHECK(*back == doctest::Approx(g).epsilon(1e-10));
      }
    }
  for (double g : {0.9, 1.4, 2.1, 3.2})
    for (double lambda : {0.15, 0.5, 0.9}) {
      if (const auto c = chi_c(g, lambda)) {
        const auto back = g_of(lambda, *c, 0);
        REQUIRE(back);
        CHECK(*back == doctest::Approx(g).epsilon(1e-10));
      }
      if (const auto c = chi_c_sx(g, lambda)) {
        const auto back = g_of(lambda, *c, 2);
        REQUIRE(back);
        CHECK(*back == doctest::Approx(g).epsilon(1e-10));
      }
      if (const auto c = chi_T1(g, lambda)) {
        const auto back = g_of(lambda, *c, 3);
        REQUIRE(back);
        CHECK(*back == doctest::Approx(g).epsilon(1e-10));
      }
      if (const auto c = chi_T1E(g, lambda)) {
        const auto back = g_of(lambda, *c, 4);
        REQUIRE(back);
        CHECK(*back == doctest::Approx(g).epsilon(1e-10));
      }
    }
}

TEST_CASE("critical and vanishing-spin boundaries never meet inside") {
  // their ratio reaches 1 only at chi = -1
  for (int i = 1; i < 95; ++i) {
    const double chi = -i / 100.0;
    const ModelParams p = validate({0.5, 1.0, 0.0, 0.5, chi});
    const BoundarySet b = boundaries(p);
    REQUIRE(b.g_c);
    REQUIRE(b.g_sx);
    CHECK(*b.g_c < *b.g_sx);
  }
}

TEST_CASE("quadruple point under fixed Stark ratio") {
  const QuadruplePoint q = quadruple_point_fixed_chi(-0.3);
  CHECK(q.g == doctest::Approx(std::sqrt(2.0) * 1.3 / std::sqrt(0.3)).epsilon(1e-14));
  CHECK(q.g == doctest::Approx(3.3566).epsilon(1e-4));
  CHECK(q.lambda == doctest::Approx(0.7 / 1.3).epsilon(1e-14));
  CHECK_THROWS_AS(quadruple_point_fixed_chi(0.2), Error);
}

TEST_CASE("quadruple point under fixed anisotropy") {
  const QuadruplePoint q = quadruple_point_fixed_lambda(0.5);
  CHECK(q.g == doctest::Approx(2.0 * std::sqrt(2.0) / std::sqrt(0.75)).epsilon(1e-14));
  CHECK(q.chi == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(quadruple_point_fixed_lambda(1.0), Error);
}

TEST_CASE("quadruple point forms are mutually consistent") {
  for (double chi : {-0.1, -0.3, -0.6, -0.9}) {
    const QuadruplePoint a = quadruple_point_fixed_chi(chi);
    const QuadruplePoint b = quadruple_point_fixed_lambda(a.lambda);
    CHECK(b.g == doctest::Approx(a.g).epsilon(1e-12));
    CHECK(b.chi == doctest::Approx(chi).epsilon(1e-12));
  }
  // the quadruple point lies on both source boundaries
  const QuadruplePoint q = quadruple_point_fixed_chi(-0.3);
  const BoundarySet b = boundaries(validate({0.5, 1.0, 0.0, q.lambda, q.chi}));
  REQUIRE(b.g_T1E);
  REQUIRE(b.g_sx);
  CHECK(*b.g_T1E == doctest::Approx(q.g).epsilon(1e-12));
  CHECK(*b.g_sx == doctest::Approx(q.g).epsilon(1e-12));
}

TEST_CASE("scaling laws at the transition point") {
  for (double chi : {-0.6, -0.2, 0.0, 0.3, 0.7}) {
    const double gbar = std::sqrt(1.0 - chi) * (1.0 + 1e-14);
    const ScalingValues v = scaling_laws(gbar, chi);
    CHECK(std::fabs(v.x2_scaled) < 1e-5);
    CHECK(v.sx == doctest::Approx(-1.0).epsilon(1e-6));
    const double both = (1.0 - chi) / (1.0 + chi);
    CHECK(v.sx_global_lhs == doctest::Approx(both).epsilon(1e-5));
    CHECK(v.sx_global_rhs == doctest::Approx(both).epsilon(1e-5));
  }
}

TEST_CASE("scaled displacement at gbar=1.5, chi=0.4") {
  const ScalingValues v = scaling_laws(1.5, 0.4);
  CHECK(v.x2_jc == doctest::Approx(1.3016169417114722).epsilon(1e-13));
  CHECK(v.x2_scaled == doctest::Approx(2.6032338834229445).epsilon(1e-13));
  CHECK(v.x2p2_unified == doctest::Approx(v.x2_scaled).epsilon(1e-14));
}

TEST_CASE("full-weight branch doubles the lambda=0 branch pointwise") {
  for (double gbar : {0.9, 1.2, 1.8, 2.5})
    for (double chi : {-0.5, -0.1, 0.2, 0.6}) {
      const ScalingValues v = scaling_laws(gbar, chi);
      CHECK(v.x2_scaled == doctest::Approx(2.0 * v.x2_jc).epsilon(1e-14));
    }
}

TEST_CASE("low-frequency optimal number ties to the scaled displacement") {
  // n_min/n_s evaluated at twice the reduced coupling must equal twice the
  // lambda=0 scaled x^2; this fixes the normalization of both forms.
  for (double gbar : {1.1, 1.5, 2.2})
    for (double chi : {-0.4, 0.25, 0.6}) {
      if (gbar * gbar < 1.0 - chi) continue;  // displaced regime only
      const ModelParams p = params_from_ratios(0.01, 2.0 * gbar, 0.0, chi);
      const OptimalNumber n = n_optimal(p);
      const ScalingValues v = scaling_laws(gbar, chi);
      CHECK(n.n_min_low == doctest::Approx(2.0 * v.x2_jc).epsilon(1e-12));
    }
}

TEST_CASE("spin scaling obeys the global relation exactly") {
  for (double gbar : {1.0, 1.4, 2.0, 3.0})
    for (double chi : {-0.5, -0.2, 0.2, 0.5}) {
      if (gbar * gbar < 1.0 - chi) continue;
      const ScalingValues v = scaling_laws(gbar, chi);
      CHECK(v.sx_global_lhs == doctest::Approx(v.sx_global_rhs).epsilon(1e-13));
    }
}

TEST_CASE("spin expectation chi->0 limit") {
  const ScalingValues v = scaling_laws(1.5, 0.0);
  CHECK(v.sx == doctest::Approx(-1.0 / 2.25).epsilon(1e-10));
  // no jump across the series/direct switch
  const double eps = 1e-10;
  const ScalingValues lo = scaling_laws(1.5, 1e-4 - eps);
  const ScalingValues hi = scaling_laws(1.5, 1e-4 + eps);
  CHECK(lo.sx == doctest::Approx(hi.sx).epsilon(1e-6));
  CHECK(lo.x2_scaled == doctest::Approx(hi.x2_scaled).epsilon(1e-6));
}

TEST_CASE("pre-transition constants") {
  const ScalingValues v = scaling_laws(0.5, 0.3);
  CHECK(v.x2_scaled == 0.0);
  CHECK(v.sx == -1.0);
  CHECK_THROWS_AS(scaling_laws(1.0, 1.2), Error);
}

TEST_CASE("local expansion values") {
  const LocalScaling at0 = local_expansion(0.0);
  CHECK(at0.x2_local == 0.0);
  CHECK(at0.sx_local == -1.0);
  const LocalScaling at01 = local_expansion(0.1);
  CHECK(at01.x2_local == doctest::Approx(0.19).epsilon(1e-14));
  CHECK(at01.sx_local == doctest::Approx(-0.83).epsilon(1e-14));
}

TEST_CASE("local expansion matches the full law near the transition") {
  const double chi = 0.3;
  for (double dg : {0.02, 0.05, 0.1}) {
    const double g_over_gc = 1.0 + dg * (1.0 + chi) / (1.0 - chi);
    const double gbar = std::sqrt(1.0 - chi) * g_over_gc;
    const ScalingValues v = scaling_laws(gbar, chi);
    const LocalScaling l = local_expansion(dg);
    const double x2_full = (1.0 - chi) * v.x2_scaled / 2.0;
    CHECK(std::fabs(x2_full - l.x2_local) < 8.0 * dg * dg * dg);
    CHECK(std::fabs(v.sx - l.sx_local) < 20.0 * dg * dg * dg);
  }
}

}  // TEST_SUITE
