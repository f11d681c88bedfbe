#pragma once

#include <vector>

#include "rabistark/fock.hpp"
#include "rabistark/model.hpp"

namespace rabistark {

// Uniform quadrature grid x in [-L, L].
struct QuadratureGrid {
  double half_width = 8.0;
  int samples = 4096;
};

// Grid wide enough for displaced wavepackets: L = max(8, g'_z + 6 sqrt(2<n>+1))
// with at least 4096 samples and dx <= 0.02.
QuadratureGrid default_grid(const ModelParams& p, double mean_n);

// Spin-resolved real wavefunction samples in the sigma_z basis.
struct PositionWaveFunction {
  std::vector<double> grid;
  std::vector<double> psi_plus;   // sigma_z = +1 component
  std::vector<double> psi_minus;  // sigma_z = -1 component
  double dx = 0.0;
  bool phase_fixed = false;
};

// Normalized oscillator eigenfunction phi_n(x), evaluated with the stable
// upward recurrence seeded by the Gaussian; internally rescaled so that
// large |x| does not underflow the recurrence.
double hermite_function(int n, double x);

// Rotates the sigma_x-basis state to the sigma_z basis,
// |up> = (|+z>+|-z>)/sqrt2, |down> = (|+z>-|-z>)/sqrt2, and synthesizes
// psi_s(x) = sum_n c_{n,s} phi_n(x). The global sign is fixed so psi_plus is
// positive at its largest-magnitude sample. Throws GridTooSmall when the
// grid endpoints carry weight above 1e-10 of the peak.
PositionWaveFunction position_representation(const std::vector<double>& state,
                                             const Truncation& t,
                                             const QuadratureGrid& grid);

// Momentum-quadrature wavefunction, used for the lambda<0 node and peak
// analysis. The Fock-space Fourier phases i^n reduce, for parity-pure
// states, to real coefficient signs (-1)^floor(n/2) per spin sector with a
// stripped global phase; the synthesis then proceeds as in position space.
PositionWaveFunction momentum_representation(const std::vector<double>& state,
                                             const Truncation& t,
                                             const QuadratureGrid& grid);

struct NodeReport {
  int n_z = 0;
  std::vector<double> node_positions;
  double threshold_used = 0.0;
};

enum class Component { plus, minus };

// Counts sign changes between consecutive significant samples
// (|psi| > threshold * max|psi|); sub-threshold runs are bridged so a sign
// change across a flat stretch counts once. Node positions by linear
// interpolation between the bracketing significant samples.
NodeReport count_nodes(const PositionWaveFunction& wf, Component c,
                       double threshold = 1e-6);

// Displacement renormalization ratio: |x_peak| of the main |psi_plus| peak
// over the bare potential-bottom displacement (g'_z for lambda >= 0, g'_y
// for lambda < 0; for lambda < 0 pass the momentum-space wavefunction).
// When two local maxima agree within 1%, the outer one is used. Returns NaN
// for an undisplaced potential (g = 0). Throws DegeneratePeak if the
// maximum sits on the grid edge.
double zeta_ratio(const PositionWaveFunction& wf, const ModelParams& p);

// Ground-state energy decomposition in the quadrature representation.
// The cross (spin-flip) parts carry both Hermitian partners:
//   E_Omega = Omega * int psi+ psi-
//   E_gy    = 2 sqrt2 (-g_y) * int psi+ d/dx psi-
//   E_p2    = chi omega * int psi+ p^2 psi-
//   E_x2    = chi omega * int psi+ x^2 psi-
// E_diag is the spin-diagonal kinetic+potential part and E_rest the
// -chi omega int psi+ psi- bookkeeping from n = (x^2+p^2-1)/2. Their total
// reconstructs E0 exactly in the continuum.
struct EnergyParts {
  double E_Omega = 0.0;
  double E_gy = 0.0;
  double E_p2 = 0.0;
  double E_x2 = 0.0;
  double E_diag = 0.0;
  double E_rest = 0.0;
  double E_total = 0.0;
};

// Derivatives by 4th-order centered differences (requires dx <= 0.02), kept
// independent of the Fock-side algebra as a cross-check. If e0_expected is
// finite the reconstruction must match within 1e-5 * Omega, otherwise
// ReconstructionMismatch is thrown.
EnergyParts energy_decomposition(const PositionWaveFunction& wf,
                                 const ModelParams& p,
                                 double e0_expected);

double quadrature_norm(const PositionWaveFunction& wf);

}  // namespace rabistark
