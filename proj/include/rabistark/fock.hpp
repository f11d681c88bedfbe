#pragma once

#include <string>
#include <vector>

#include "rabistark/model.hpp"

namespace rabistark {

// Dense real matrix on the sigma_x-eigenbasis (x) Fock basis, spin-major:
// rows 0..n_max are |up,n>, rows n_max+1..2n_max+1 are |down,n>. In this
// basis the splitting and Stark terms are diagonal and every coupling is
// real, so a real symmetric eigensolver covers the whole engine.
struct OperatorMatrix {
  int dim = 0;
  std::vector<double> entries;  // dim*dim, row-major
  std::string basis_tag;

  double& at(int i, int j) { return entries[static_cast<size_t>(i) * dim + j]; }
  double at(int i, int j) const {
    return entries[static_cast<size_t>(i) * dim + j];
  }
};

struct Truncation {
  int n_max = 32;  // largest retained Fock occupation, >= 1
};

// Index of |s,n> in the spin-major ordering; s = +1 (up) or -1 (down).
inline int basis_index(const Truncation& t, int s, int n) {
  return (s > 0 ? 0 : t.n_max + 1) + n;
}

// Single-boson annihilation operator, (n_max+1) dimensional, no spin factor.
OperatorMatrix annihilation(const Truncation& t);

// Full Hamiltonian, dimension 2(n_max+1), real symmetric.
OperatorMatrix hamiltonian(const ModelParams& p, const Truncation& t);

// Parity sigma_x (-1)^n, diagonal with entries s(-1)^n; squares to identity.
OperatorMatrix parity(const Truncation& t);

struct SectorSplit {
  OperatorMatrix h_even, h_odd;
  std::vector<int> even_index, odd_index;  // embedding into the full basis
};

// Splits H into parity blocks. Requires max|HP-PH| <= 1e-12 max|H|,
// otherwise throws CommutatorViolation.
SectorSplit sector_split(const OperatorMatrix& h, const OperatorMatrix& p);

double max_abs(const OperatorMatrix& m);
double max_asymmetry(const OperatorMatrix& m);
// max |HP - PH| entry for diagonal P (P given by its diagonal sign pattern).
double commutator_norm(const OperatorMatrix& h, const OperatorMatrix& p);

// Expectation helpers on full-basis coefficient vectors (real states).
double expectation_number(const std::vector<double>& state, const Truncation& t);
double expectation_sx(const std::vector<double>& state, const Truncation& t);
// <a^dag a^dag> (= <aa> on real states).
double expectation_aa(const std::vector<double>& state, const Truncation& t);
double parity_expectation(const std::vector<double>& state, const Truncation& t);

}  // namespace rabistark
