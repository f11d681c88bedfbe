#pragma once

#include <optional>

#include "rabistark/model.hpp"

namespace rabistark {

// Closed-form results for the model: the exact lambda=0 spectrum with Stark
// coupling, the semiclassical variational theory, every phase boundary with
// its inverse forms, the critical scaling relations and the topological
// quadruple points. Couplings are returned in units of g_s throughout.

// One 2x2 block of the lambda=0 spectrum, spanning |n,up> and |n+1,down>.
struct JCStarkLevel {
  int n = 0;
  double E_minus = 0.0;  // lower branch
  double E_plus = 0.0;   // upper branch
  double C_up = 0.0;     // lower-branch coefficient on |n,up>, normalized
  double C_down = 0.0;   // lower-branch coefficient on |n+1,down>
  double e_plus = 0.0;   // block mean energy
  double e_minus = 0.0;  // block half-splitting at g=0
};

// E_pm = e_plus +- sqrt(e_minus^2 + (n+1) g^2). lambda is ignored.
JCStarkLevel jc_level(const ModelParams& p, int n);

struct JCGround {
  double E_GS = 0.0;
  std::optional<int> n_star;  // block index; empty when |0,down> wins
};

// Ground energy at lambda=0: min(-Omega/2, min_n E_minus(n)). n_cap < 0
// selects an automatic cap from the optimal block index.
JCGround jc_ground_energy(const ModelParams& p, int n_cap = -1);

// Coupling (units of g_s) where the lambda=0 blocks n and n+1 cross,
// E_minus(n) = E_minus(n+1), located numerically.
double jc_level_crossing(const ModelParams& p, int n);

struct OptimalNumber {
  double n_min = 0.0;      // exact optimal continuous block index
  double n_min_low = 0.0;  // low-frequency limit, in units of n_s
};

// Optimal quantum number of the displaced lambda=0 ground state. Throws
// DomainError before the transition (negative square-root argument).
OptimalNumber n_optimal(const ModelParams& p);

// Semiclassical variational energy epsilon(x) at zero momentum, with the
// quantum spin part minimized exactly. Uses g'_z for lambda >= 0 and g'_y
// for lambda < 0.
double variational_energy(double x, const ModelParams& p);

struct VariationalMinima {
  double x_B = 0.0;            // origin, always a stationary point
  std::optional<double> x_A;   // displaced minimum, present after onset
  std::optional<double> E_SC_A;
  double E_SC_B = 0.0;         // always -Omega/2
};

VariationalMinima variational_minima(const ModelParams& p);

// Displaced-branch energy as a function of the effective displacement g',
// shared by the x-type and p-type reductions.
double displaced_branch_energy(double gp, const ModelParams& p);

// --- Phase boundaries, couplings in units of g_s -------------------------

// Second-order critical coupling 2 sqrt(1-chi)/(1+|lambda|).
double critical_coupling(double lambda, double chi);

struct BoundarySet {
  std::optional<double> g_c;      // second-order onset
  std::optional<double> g_zeta1;  // adiabatic boundary, chi > 0
  std::optional<double> g_zeta2;  // adiabatic boundary, chi < 0
  std::optional<double> g_sx;     // vanishing-<sigma_x>, chi < 0 (= g_zeta2)
  std::optional<double> g_jc;     // first lambda=0 level crossing
  std::optional<double> g_T1;     // first conventional TPT, polaron estimate
  std::optional<double> g_T1E;    // first conventional TPT, exact-solution form
};

// All boundaries defined at (lambda, chi); the g field of p is ignored.
// Members outside their validity domain are absent.
BoundarySet boundaries(const ModelParams& p);

// Inverse boundary forms; g in units of g_s. Each returns the |lambda| or
// chi at which the corresponding boundary passes through g, or nullopt
// outside the domain. Round-tripping with the direct forms is exact.
std::optional<double> lambda_c(double g, double chi);
std::optional<double> chi_c(double g, double lambda);
std::optional<double> lambda_c_zeta1(double g, double chi);
std::optional<double> lambda_c_zeta2(double g, double chi);
std::optional<double> lambda_c_sx(double g, double chi);
std::optional<double> chi_c_sx(double g, double lambda);
std::optional<double> lambda_T1(double g, double chi);
std::optional<double> chi_T1(double g, double lambda);
std::optional<double> lambda_T1E(double g, double chi);
std::optional<double> chi_T1E(double g, double lambda);

// --- Topological quadruple points ----------------------------------------

struct QuadruplePoint {
  double g = 0.0;  // units of g_s
  double lambda = 0.0;
  double chi = 0.0;
};

QuadruplePoint quadruple_point_fixed_chi(double chi);        // chi < 0
QuadruplePoint quadruple_point_fixed_lambda(double lambda);  // |lambda| < 1

// --- Critical scaling relations -------------------------------------------

// All quantities as functions of gbar = g/g_c^lambda (the chi-free critical
// coupling) and chi. Removable chi->0 singularities are evaluated by series
// below |chi| < 1e-4.
struct ScalingValues {
  double x2_scaled = 0.0;      // <x^2>/x_s^2, lambda>0 branch (full weight)
  double sx = -1.0;            // <sigma_x>
  double x2_jc = 0.0;          // <x^2>/x_s^2 at lambda=0 (half weight)
  double x2p2_unified = 0.0;   // (<x^2>+<p^2>)/x_s^2, any anisotropy
  double sx_global_lhs = 0.0;  // (chi <sigma_x>+1)^2/(1-chi^2)
  double sx_global_rhs = 0.0;  // 1/(2 chi gbar^-2 + 1)
};

// Pre-transition (gbar^2 < 1-chi) the displaced quantities vanish and
// sx = -1. Throws DomainError for |chi| > 1.
ScalingValues scaling_laws(double gbar_lambda, double chi);

struct LocalScaling {
  double x2_local = 0.0;  // (1-chi) <x^2>/(2 x_s^2) = 2 dg - dg^2
  double sx_local = 0.0;  // -1 + 2 dg - 3 dg^2
};

// Expansion around the transition in dg = (1-chi)/(1+chi) (g/g_c - 1),
// parameter-free to second order.
LocalScaling local_expansion(double dg);

}  // namespace rabistark
