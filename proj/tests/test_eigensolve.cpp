#include <doctest.h>

#include <cmath>
#include <random>

#include "rabistark/analytic.hpp"
#include "rabistark/eigensolve.hpp"
#include "rabistark/fock.hpp"

using namespace rabistark;

namespace {

OperatorMatrix from_rows(int dim, std::vector<double> vals) {
  OperatorMatrix m;
  m.dim = dim;
  m.entries = std::move(vals);
  return m;
}

}  // namespace

TEST_SUITE("eigensolve") {

TEST_CASE("diagonal matrix is sorted") {
  const auto r = eigendecompose(from_rows(3, {3, 0, 0, 0, 1, 0, 0, 0, 2}), 3);
  CHECK(r.energies[0] == doctest::Approx(1.0));
  CHECK(r.energies[1] == doctest::Approx(2.0));
  CHECK(r.energies[2] == doctest::Approx(3.0));
}

TEST_CASE("2x2 off-diagonal") {
  const auto r = eigendecompose(from_rows(2, {0, 1, 1, 0}), 2);
  CHECK(r.energies[0] == doctest::Approx(-1.0));
  CHECK(r.energies[1] == doctest::Approx(+1.0));
}

TEST_CASE("random symmetric 50x50 reconstructs (oracle: M = V L V^T)") {
  const int n = 50;
  std::mt19937 rng(987);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> m(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) m[i * n + j] = m[j * n + i] = gauss(rng);

  const auto eig = detail::symmetric_eigen(n, m);
  double max_err = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double v = 0.0;
      for (int k = 0; k < n; ++k)
        v += eig.vectors[i * n + k] * eig.values[k] * eig.vectors[j * n + k];
      max_err = std::max(max_err, std::fabs(v - m[i * n + j]));
    }
  CHECK(max_err < 1e-10);
}

TEST_CASE("eigenvectors are orthonormal") {
  const ModelParams p = validate({0.3, 1.0, 0.25, 0.7, 0.3});
  const auto r = eigendecompose(hamiltonian(p, Truncation{20}), 6);
  for (size_t i = 0; i < r.states.size(); ++i)
    for (size_t j = 0; j <= i; ++j) {
      double dot = 0.0;
      for (size_t k = 0; k < r.states[i].size(); ++k)
        dot += r.states[i][k] * r.states[j][k];
      CHECK(std::fabs(dot - (i == j ? 1.0 : 0.0)) < 1e-10);
    }
  CHECK(r.residual <= 1e-9 * std::max(1.0, std::fabs(r.energies[0])));
}

TEST_CASE("ground_solve at g=0 finds -Omega/2 immediately") {
  for (double chi : {0.0, 0.4, -0.8}) {
    const ModelParams p = validate({0.5, 1.0, 0.0, 1.0, chi});
    const auto r = ground_solve(p);
    CHECK(r.converged);
    CHECK(r.n_max_used <= 64);
    CHECK(r.energies[0] == doctest::Approx(-0.5).epsilon(1e-12));
    // the ground state is |0,down>
    const Truncation t{r.n_max_used};
    CHECK(std::fabs(r.states[0][basis_index(t, -1, 0)]) ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("ground_solve matches the closed lambda=0 spectrum") {
  const ModelParams p = params_from_ratios(0.5, 3.0, 0.0, 0.4);
  const auto r = ground_solve(p);
  const JCGround gs = jc_ground_energy(p);
  CHECK(std::fabs(r.energies[0] - gs.E_GS) < 1e-8);
}

TEST_CASE("low-frequency photon number drives the truncation rule") {
  const ModelParams p = params_from_ratios(0.01, 3.0, 0.0, 0.4);
  const auto r = ground_solve(p);
  const double nbar = expectation_number(r.states[0], Truncation{r.n_max_used});
  CHECK(nbar == doctest::Approx(65.1).epsilon(0.02));
  CHECK(r.n_max_used >= 128);
  CHECK(nbar + 6.0 * std::sqrt(nbar + 1.0) < r.n_max_used);
}

TEST_CASE("gap in the decoupled limit") {
  const ModelParams p = validate({0.5, 1.0, 0.0, 1.0, 0.0});
  SolveOptions opt;
  opt.k = 3;
  const auto r = ground_solve(p, opt);
  CHECK(excitation_gap(r) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("post-transition doublet closes the gap at low frequency") {
  const ModelParams p = params_from_ratios(0.01, 2.0, 1.0, 0.0);
  const auto r = ground_solve(p);
  CHECK(excitation_gap(r) < 1e-4);
  CHECK(excitation_gap(r) >= 0.0);
}

TEST_CASE("monotone truncation convergence (variational principle)") {
  const ModelParams p = params_from_ratios(0.05, 2.5, 0.6, 0.35);
  const auto r = ground_solve(p);
  REQUIRE(r.ladder.size() >= 2);
  for (size_t i = 1; i < r.ladder.size(); ++i)
    CHECK(r.ladder[i].second <= r.ladder[i - 1].second + 1e-12);
}

TEST_CASE("gap agrees between full and sector-merged spectra") {
  const ModelParams p = params_from_ratios(0.5, 2.2, 0.5, -0.3);
  const auto r = ground_solve(p);
  const auto full = eigendecompose(hamiltonian(p, Truncation{r.n_max_used}), 2);
  CHECK(std::fabs((full.energies[1] - full.energies[0]) - excitation_gap(r)) <
        1e-10);
}

TEST_CASE("duality of the ground energy under lambda sign flip") {
  const ModelParams pp = params_from_ratios(0.5, 2.7, 0.8, -0.3);
  const ModelParams pm = params_from_ratios(0.5, 2.7, -0.8, -0.3);
  CHECK(std::fabs(ground_solve(pp).energies[0] -
                  ground_solve(pm).energies[0]) < 1e-10);
}

TEST_CASE("truncation ceiling reports an error") {
  const ModelParams p = params_from_ratios(0.01, 3.0, 0.0, 0.4);
  SolveOptions opt;
  opt.n_max_cap = 64;  // far below the needed occupation
  try {
    ground_solve(p, opt);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::truncation_ceiling);
  }
}

}  // TEST_SUITE
