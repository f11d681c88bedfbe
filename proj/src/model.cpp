#include "rabistark/model.hpp"

#include <cmath>

namespace rabistark {

ModelParams validate(ModelParams p) {
  if (!(p.omega > 0.0) || !(p.Omega > 0.0))
    throw Error(errc::non_positive_frequency,
                "omega and Omega must be positive");
  if (!(std::fabs(p.chi) <= 1.0))
    throw Error(errc::chi_out_of_range,
                "|chi| <= 1 required, the energy is unbounded otherwise");
  if (!std::isfinite(p.g) || !std::isfinite(p.lambda))
    throw Error(errc::domain_error, "g and lambda must be finite");
  if (p.g < 0.0) p.g = -p.g;  // unitary sign change of the mode
  return p;
}

DerivedScales derived_scales(const ModelParams& p) {
  DerivedScales s;
  s.g_s = 0.5 * std::sqrt(p.omega * p.Omega);
  s.x_s = std::sqrt(p.Omega / (2.0 * p.omega));
  s.n_s = 0.5 * s.x_s * s.x_s;
  s.g_z = 0.5 * (1.0 + p.lambda) * p.g;
  s.g_y = 0.5 * (1.0 - p.lambda) * p.g;
  s.gp_z = std::sqrt(2.0) * s.g_z / p.omega;
  s.gp_y = std::sqrt(2.0) * s.g_y / p.omega;
  return s;
}

ModelParams params_from_ratios(double omega_ratio, double g_ratio,
                               double lambda, double chi) {
  ModelParams p;
  p.Omega = 1.0;
  p.omega = omega_ratio;
  p.lambda = lambda;
  p.chi = chi;
  if (!(omega_ratio > 0.0))
    throw Error(errc::non_positive_frequency, "omega/Omega must be positive");
  p.g = g_ratio * 0.5 * std::sqrt(p.omega * p.Omega);
  return validate(p);
}

double g_ratio_of(const ModelParams& p) {
  return p.g / (0.5 * std::sqrt(p.omega * p.Omega));
}

}  // namespace rabistark
