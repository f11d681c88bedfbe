#pragma once

#include <string>
#include <vector>

#include "rabistark/eigensolve.hpp"
#include "rabistark/fock.hpp"
#include "rabistark/model.hpp"
#include "rabistark/wavefunction.hpp"

namespace rabistark {

struct QuadratureOps {
  OperatorMatrix x2;  // (a'a' + aa + 2n + 1)/2
  OperatorMatrix p2;  // -(a'a' + aa - 2n - 1)/2
  // The symmetric pair-amplitude matrix a'a' + aa, whose quadratic form on
  // a real state is <a'a'> + <aa> = 2 <a'a'>; the reported mean_aa is the
  // raw <a'a'>.
  OperatorMatrix aa;
};

// Quadrature operators tensored with the spin identity; x2 + p2 = 2n + 1
// holds as an exact matrix identity.
QuadratureOps quadrature_operators(const Truncation& t);

// Everything the phase diagrams need from one parameter point.
struct GroundStateAnalysis {
  double E0 = 0.0;
  double gap = 0.0;
  int parity = -1;  // +1 or -1
  int n_z = -1;     // ground-state node count (-1 when skipped)
  double mean_n = 0.0;
  double mean_x2 = 0.0;
  double mean_p2 = 0.0;
  double mean_sx = 0.0;
  double mean_aa = 0.0;
  double zeta = 0.0;  // NaN when the potential is undisplaced
  EnergyParts energy_parts;
  ModelParams params;
  int n_max_used = 0;
  bool degenerate = false;  // parity doublet within 1e-9 Omega
  bool converged = false;
  bool ok = true;           // false for failed sweep cells
  std::string error;
};

// Runs ground_solve, picks the parity-pure ground state (on degeneracy the
// even-parity representative) and computes every observable. The node
// count, zeta and the energy decomposition come from the wavefunction
// module; lambda < 0 uses the momentum representation for nodes and zeta.
// Set with_wavefunction = false to skip those (grid sweeps of scalar
// observables only). Propagates TruncationCeiling.
GroundStateAnalysis analyze(const ModelParams& p, double tol = -1.0,
                            bool with_wavefunction = true);

// Rounds <P> to +-1; requires |<P>| >= 1 - 1e-8, else ImpureParity (the
// state is an accidental mixture of degenerate parity partners).
int parity_value(const std::vector<double>& state, const OperatorMatrix& p);

}  // namespace rabistark
