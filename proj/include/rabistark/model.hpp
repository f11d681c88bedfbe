#pragma once

#include <stdexcept>
#include <string>

namespace rabistark {

enum class errc {
  chi_out_of_range,
  non_positive_frequency,
  commutator_violation,
  convergence_failure,
  truncation_ceiling,
  impure_parity,
  grid_too_small,
  degenerate_peak,
  reconstruction_mismatch,
  domain_error,
  io_error,
  bad_config,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

// Physical parameters of the anisotropic Rabi model with a nonlinear Stark
// term chi*omega*n*sigma_x. Internally energies are expressed in units of
// Omega = 1; callers working in ratio units should go through
// params_from_ratios().
struct ModelParams {
  double omega = 0.5;   // boson frequency
  double Omega = 1.0;   // qubit level splitting / tunneling strength
  double g = 0.0;       // linear coupling strength
  double lambda = 1.0;  // anisotropy: counter-rotating / rotating weight
  double chi = 0.0;     // Stark coupling ratio, physical for |chi| <= 1
};

// Characteristic scales derived from the parameters.
struct DerivedScales {
  double g_s;   // sqrt(omega*Omega)/2
  double x_s;   // sqrt(Omega/(2 omega)) = sqrt(2) g_s / omega
  double n_s;   // x_s^2 / 2
  double g_z;   // (1+lambda)/2 * g
  double g_y;   // (1-lambda)/2 * g
  double gp_z;  // sqrt(2) g_z / omega, displacement of the bare potential
  double gp_y;  // sqrt(2) g_y / omega
};

// Checks invariants (omega,Omega > 0, |chi| <= 1) and normalizes g >= 0
// (negative g is unitarily equivalent). Throws Error on violation.
ModelParams validate(ModelParams p);

DerivedScales derived_scales(const ModelParams& p);

// Build params from the ratio units used on every figure axis:
// omega in units of Omega, g in units of g_s.
ModelParams params_from_ratios(double omega_ratio, double g_ratio,
                               double lambda, double chi);

// Inverse of params_from_ratios for g: coupling in units of g_s.
double g_ratio_of(const ModelParams& p);

}  // namespace rabistark
