#pragma once

#include <utility>
#include <vector>

#include "rabistark/fock.hpp"
#include "rabistark/model.hpp"

namespace rabistark {

struct SpectralResult {
  std::vector<double> energies;             // ascending, k entries
  std::vector<std::vector<double>> states;  // orthonormal, full-basis coeffs
  int n_max_used = 0;
  bool converged = false;
  double residual = 0.0;  // max ||Hv - Ev|| over retained states
  std::vector<std::pair<int, double>> ladder;  // (n_max, E0) per rung
};

// Full dense symmetric eigendecomposition (Householder tridiagonalization
// followed by implicit-shift QL), returning the k lowest pairs. Throws
// ConvergenceFailure if the QL iteration stalls or the residual bound
// residual <= 1e-9 max(1,|E0|) fails.
SpectralResult eigendecompose(const OperatorMatrix& m, int k);

struct SolveOptions {
  double tol = -1.0;     // energy tolerance; < 0 means 1e-10 * Omega
  int k = 2;             // number of low-lying states to return
  int n_max_cap = 4096;  // hard truncation ceiling
  int n_max_start = 32;
};

// Solves for the k lowest states, doubling n_max in {32,64,...,cap} until
// |E0(n) - E0(n/2)| < tol and <n> + 6 sqrt(<n>+1) < n_max. The two parity
// sectors are diagonalized separately and merged, so returned eigenvectors
// are parity-pure even for post-transition quasi-degenerate doublets.
// Throws TruncationCeiling if the cap is reached without convergence.
SpectralResult ground_solve(const ModelParams& p, const SolveOptions& opt = {});

// First excitation gap E1 - E0; requires at least two states.
double excitation_gap(const SpectralResult& r);

namespace detail {
// Eigen-decomposition of a dense symmetric matrix in row-major storage.
// On return `values` is ascending and column j of `vectors` (row-major,
// vectors[i*n+j]) is the eigenvector of values[j].
struct SymmetricEigen {
  int n = 0;
  std::vector<double> values;
  std::vector<double> vectors;
};
SymmetricEigen symmetric_eigen(int n, std::vector<double> a);
}  // namespace detail

}  // namespace rabistark
