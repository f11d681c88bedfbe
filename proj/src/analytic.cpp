#include "rabistark/analytic.hpp"

#include <cmath>
#include <limits>

namespace rabistark {

namespace {

constexpr double kChiSeries = 1e-4;  // |chi| below which series forms apply

double sqrt_checked(double v, const char* what) {
  if (v < 0.0) throw Error(errc::domain_error, what);
  return std::sqrt(v);
}

// Golden-section minimum of f on [a, b].
template <typename F>
double golden_min(F f, double a, double b, double tol) {
  const double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

double jc_lower_energy_continuous(const ModelParams& p, double n) {
  const double e_plus = (n + 0.5 * (1.0 - p.chi)) * p.omega;
  const double e_minus =
      0.5 * (p.Omega - p.omega) + (n + 0.5) * p.chi * p.omega;
  return e_plus - std::sqrt(e_minus * e_minus + (n + 1.0) * p.g * p.g);
}

}  // namespace

JCStarkLevel jc_level(const ModelParams& p0, int n) {
  if (n < 0) throw Error(errc::domain_error, "n >= 0 required");
  const ModelParams p = validate(p0);
  JCStarkLevel lv;
  lv.n = n;
  lv.e_plus = (n + 0.5 * (1.0 - p.chi)) * p.omega;
  lv.e_minus = 0.5 * (p.Omega - p.omega) + (n + 0.5) * p.chi * p.omega;
  const double root =
      std::sqrt(lv.e_minus * lv.e_minus + (n + 1.0) * p.g * p.g);
  lv.E_plus = lv.e_plus + root;
  lv.E_minus = lv.e_plus - root;
  double cu = lv.e_minus - root;
  double cd = p.g * std::sqrt(n + 1.0);
  const double norm = std::hypot(cu, cd);
  if (norm > 0.0) {
    lv.C_up = cu / norm;
    lv.C_down = cd / norm;
  } else {
    lv.C_up = 0.0;  // g=0 and degenerate block; pick the down basis state
    lv.C_down = 1.0;
  }
  return lv;
}

JCGround jc_ground_energy(const ModelParams& p0, int n_cap) {
  const ModelParams p = validate(p0);
  if (n_cap < 0) {
    n_cap = 64;
    try {
      const double n_min = n_optimal(p).n_min;
      if (n_min > 0.0)
        n_cap = std::max(n_cap, int(n_min + 10.0 * std::sqrt(n_min)) + 1);
    } catch (const Error&) {
      // pre-transition: the scan from small n suffices
    }
  }
  JCGround gs;
  gs.E_GS = -0.5 * p.Omega;
  for (int n = 0; n <= n_cap; ++n) {
    const JCStarkLevel lv = jc_level(p, n);
    if (lv.E_minus < gs.E_GS) {
      gs.E_GS = lv.E_minus;
      gs.n_star = n;
    }
  }
  return gs;
}

double jc_level_crossing(const ModelParams& p0, int n) {
  if (n < 0) throw Error(errc::domain_error, "n >= 0 required");
  const ModelParams p = validate(p0);
  const double g_s = 0.5 * std::sqrt(p.omega * p.Omega);
  auto diff = [&](double gratio) {
    ModelParams q = p;
    q.g = gratio * g_s;
    const double a = jc_lower_energy_continuous(q, double(n));
    const double b = jc_lower_energy_continuous(q, double(n + 1));
    return a - b;
  };
  double lo = 0.0, hi = 1.0;
  while (diff(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e6)
      throw Error(errc::domain_error, "no level crossing found");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (diff(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

OptimalNumber n_optimal(const ModelParams& p0) {
  const ModelParams p = validate(p0);
  const double gbar_s = g_ratio_of(p);  // g in units of g_s
  const double chi = p.chi;
  const double n_s = p.Omega / (4.0 * p.omega);

  OptimalNumber out;

  // Low-frequency limit per n_s. The chi->0 limit is gbar^2/4 - 4/gbar^2.
  if (std::fabs(chi) < kChiSeries) {
    if (gbar_s <= 0.0)
      throw Error(errc::domain_error, "no displaced solution at g = 0");
    const double g2 = gbar_s * gbar_s;
    out.n_min_low = (0.25 * g2 - 4.0 / g2) + chi * (1.0 + 16.0 / (g2 * g2));
  } else {
    const double rad = (gbar_s * gbar_s + 8.0 * chi) / (1.0 - chi * chi);
    const double root =
        sqrt_checked(rad, "pre-transition regime, no displaced solution");
    out.n_min_low = (-(gbar_s * gbar_s + 4.0 * chi) + gbar_s * root) /
                    (2.0 * chi * chi);
  }

  // Exact continuous optimum. The closed form is a 0/0 expression as
  // chi -> 0; below the series threshold locate the minimum directly.
  if (std::fabs(chi) < kChiSeries) {
    const double guess = std::max(out.n_min_low * n_s, 1.0);
    out.n_min = golden_min(
        [&](double n) { return jc_lower_energy_continuous(p, n); }, 0.0,
        4.0 * guess + 16.0, 1e-10 * (guess + 1.0));
  } else {
    const double w = p.omega / p.Omega;
    const double chi1 = chi * (1.0 - (1.0 + chi) * w);
    const double rad =
        (gbar_s * gbar_s + 8.0 * chi1) / (1.0 - chi * chi);
    const double root =
        sqrt_checked(rad, "pre-transition regime, no displaced solution");
    out.n_min = 0.5 * (1.0 - chi) / chi -
                (gbar_s * gbar_s + 4.0 * chi) / (8.0 * chi * chi * w) +
                gbar_s * root / (8.0 * chi * chi * w);
  }
  return out;
}

double variational_energy(double x, const ModelParams& p0) {
  const ModelParams p = validate(p0);
  const DerivedScales s = derived_scales(p);
  const double gp = (p.lambda >= 0.0) ? std::fabs(s.gp_z) : std::fabs(s.gp_y);
  const double ratio = p.Omega / p.omega;
  const double stark = x * x * p.chi + ratio;
  return 0.5 * p.omega * (x * x + gp * gp) -
         0.5 * p.omega * std::sqrt(4.0 * gp * gp * x * x + stark * stark) -
         0.5 * gp * gp * p.omega;
}

double displaced_branch_energy(double gp, const ModelParams& p0) {
  const ModelParams p = validate(p0);
  const double w = p.Omega / p.omega;  // Omega in units of omega
  const double chi = p.chi;
  if (std::fabs(chi) < kChiSeries) {
    // Series around chi = 0 of the displaced minimum energy.
    const double lead =
        -0.5 * gp * gp * p.omega - p.Omega * w / (8.0 * gp * gp);
    const double corr = w * w * w * p.omega / (16.0 * gp * gp * gp * gp) -
                        0.25 * p.Omega;
    return lead + chi * corr;
  }
  const double rad = (gp * gp + chi * w) / (1.0 - chi * chi);
  const double root = sqrt_checked(rad, "displaced branch undefined");
  return -0.5 * gp * gp * p.omega -
         (gp * gp * (2.0 - chi * chi) * p.omega + chi * p.Omega) /
             (2.0 * chi * chi) +
         gp * (1.0 - chi * chi) * p.omega / (chi * chi) * root;
}

VariationalMinima variational_minima(const ModelParams& p0) {
  const ModelParams p = validate(p0);
  const DerivedScales s = derived_scales(p);
  const double gp = (p.lambda >= 0.0) ? std::fabs(s.gp_z) : std::fabs(s.gp_y);
  const double w = p.Omega / p.omega;
  const double chi = p.chi;

  VariationalMinima m;
  m.E_SC_B = -0.5 * p.Omega;
  if (gp <= 0.0) return m;

  double x2;
  if (std::fabs(chi) < kChiSeries) {
    x2 = gp * gp - w * w / (4.0 * gp * gp) +
         chi * (w * w * w / (8.0 * gp * gp * gp * gp) + 0.5 * w);
  } else {
    const double inner = (gp * gp + chi * w) / (1.0 - chi * chi);
    if (inner < 0.0) return m;
    x2 = 2.0 * gp / (chi * chi) * std::sqrt(inner) -
         (2.0 * gp * gp + chi * w) / (chi * chi);
  }
  if (x2 <= 0.0) return m;
  m.x_A = std::sqrt(x2);
  m.E_SC_A = displaced_branch_energy(gp, p);
  return m;
}

double critical_coupling(double lambda, double chi) {
  return 2.0 * sqrt_checked(1.0 - chi, "chi <= 1 required") /
         (1.0 + std::fabs(lambda));
}

BoundarySet boundaries(const ModelParams& p0) {
  const ModelParams p = validate(p0);
  const double a = std::fabs(p.lambda);
  const double chi = p.chi;
  BoundarySet b;

  if (chi < 1.0) {
    b.g_c = 2.0 * std::sqrt(1.0 - chi) / (1.0 + a);
    b.g_jc = 2.0 * std::sqrt(1.0 - chi);
  }
  if (chi > 0.0 && chi < 1.0)
    b.g_zeta1 = 2.0 / (1.0 + a) *
                std::sqrt(2.0 * (1.0 - chi * chi) / (chi * (3.0 + chi * chi)));
  if (chi < 0.0) {
    b.g_zeta2 = 2.0 / (1.0 + a) * std::sqrt(2.0 / (-chi));
    b.g_sx = b.g_zeta2;  // the two boundaries coincide identically
  }
  {
    const double rad = (1.0 + a) * ((2.0 + chi) - a * (2.0 - chi));
    if (rad > 0.0) b.g_T1 = 2.0 * std::sqrt(2.0) / std::sqrt(rad);
  }
  {
    const double rad = (1.0 + chi) - p.lambda * p.lambda * (1.0 - chi);
    const double num = 1.0 - chi * chi;
    if (rad > 0.0 && num > 0.0)
      b.g_T1E = 2.0 * std::sqrt(num) / std::sqrt(rad);
  }
  return b;
}

std::optional<double> lambda_c(double g, double chi) {
  if (g <= 0.0 || chi > 1.0) return std::nullopt;
  const double v = 2.0 * std::sqrt(1.0 - chi) / g - 1.0;
  if (v < 0.0) return std::nullopt;
  return v;
}

std::optional<double> chi_c(double g, double lambda) {
  if (g <= 0.0) return std::nullopt;
  const double a1 = 1.0 + std::fabs(lambda);
  const double v = 1.0 - a1 * a1 * g * g / 4.0;
  if (v < -1.0) return std::nullopt;
  return v;
}

std::optional<double> lambda_c_zeta1(double g, double chi) {
  if (g <= 0.0 || chi <= 0.0 || chi >= 1.0) return std::nullopt;
  const double v =
      -1.0 + 2.0 * std::sqrt(2.0 * (1.0 - chi * chi) / (chi * (3.0 + chi * chi))) / g;
  if (v < 0.0) return std::nullopt;
  return v;
}

std::optional<double> lambda_c_zeta2(double g, double chi) {
  if (g <= 0.0 || chi >= 0.0) return std::nullopt;
  const double v = -1.0 + 2.0 * std::sqrt(2.0 / (-chi)) / g;
  if (v < 0.0) return std::nullopt;
  return v;
}

std::optional<double> lambda_c_sx(double g, double chi) {
  return lambda_c_zeta2(g, chi);
}

std::optional<double> chi_c_sx(double g, double lambda) {
  if (g <= 0.0) return std::nullopt;
  const double a1 = 1.0 + std::fabs(lambda);
  const double v = -8.0 / (a1 * a1 * g * g);
  if (v < -1.0) return std::nullopt;
  return v;
}

std::optional<double> lambda_T1(double g, double chi) {
  if (g <= 0.0) return std::nullopt;
  const double rad = 1.0 - 2.0 * (2.0 - chi) / (g * g);
  if (rad < 0.0) return std::nullopt;
  const double v = (2.0 * std::sqrt(rad) + chi) / (2.0 - chi);
  if (v < 0.0) return std::nullopt;
  return v;
}

std::optional<double> chi_T1(double g, double lambda) {
  if (g <= 0.0) return std::nullopt;
  const double a = std::fabs(lambda);
  const double v = 2.0 * (4.0 - (1.0 - a * a) * g * g) / ((1.0 + a) * (1.0 + a) * g * g);
  if (v < -1.0 || v > 1.0) return std::nullopt;
  return v;
}

std::optional<double> lambda_T1E(double g, double chi) {
  if (g <= 0.0 || std::fabs(chi) >= 1.0) return std::nullopt;
  const double inner = (1.0 + chi) * (1.0 / (1.0 - chi) - 4.0 / (g * g));
  if (inner < 0.0) return std::nullopt;
  return std::sqrt(inner);
}

std::optional<double> chi_T1E(double g, double lambda) {
  if (g <= 0.0) return std::nullopt;
  const double q = (1.0 + lambda * lambda) / 8.0 * g * g;
  const double rad = (1.0 + q) * (1.0 + q) - 0.5 * g * g;
  if (rad < 0.0) return std::nullopt;
  const double v = -q + std::sqrt(rad);
  if (v < -1.0 || v > 1.0) return std::nullopt;
  return v;
}

QuadruplePoint quadruple_point_fixed_chi(double chi) {
  if (!(chi < 0.0))
    throw Error(errc::domain_error, "quadruple point requires chi < 0");
  QuadruplePoint q;
  q.chi = chi;
  q.g = std::sqrt(2.0) * (1.0 - chi) / std::sqrt(-chi);
  q.lambda = (1.0 + chi) / (1.0 - chi);
  return q;
}

QuadruplePoint quadruple_point_fixed_lambda(double lambda) {
  const double a = std::fabs(lambda);
  if (!(a < 1.0))
    throw Error(errc::domain_error, "quadruple point requires |lambda| < 1");
  QuadruplePoint q;
  q.lambda = lambda;
  q.g = 2.0 * std::sqrt(2.0) / std::sqrt(1.0 - lambda * lambda);
  q.chi = -(1.0 - a) / (1.0 + a);
  return q;
}

ScalingValues scaling_laws(double gbar_lambda, double chi) {
  if (std::fabs(chi) > 1.0)
    throw Error(errc::domain_error, "|chi| <= 1 required");
  ScalingValues v;
  const double g2 = gbar_lambda * gbar_lambda;

  if (g2 < 1.0 - chi) {
    v.x2_scaled = 0.0;
    v.x2_jc = 0.0;
    v.x2p2_unified = 0.0;
    v.sx = -1.0;
  } else if (std::fabs(chi) < kChiSeries) {
    // Removable chi->0 singularity: series to first order.
    const double f0 = 0.5 * g2 - 0.5 / g2;
    const double f1 = 0.5 + 0.5 / (g2 * g2);
    v.x2_jc = f0 + chi * f1;
    v.x2_scaled = 2.0 * v.x2_jc;
    v.x2p2_unified = 2.0 * v.x2_jc;
    v.sx = -1.0 / g2 + chi * (1.5 / (g2 * g2) - 0.5);
  } else {
    const double root =
        std::sqrt((g2 + 2.0 * chi) / (1.0 - chi * chi));
    const double f = (-(g2 + chi) + gbar_lambda * root) / (chi * chi);
    v.x2_jc = f;
    v.x2_scaled = 2.0 * f;
    v.x2p2_unified = 2.0 * f;
    v.sx = (-1.0 + gbar_lambda *
                       std::sqrt((1.0 - chi * chi) / (2.0 * chi + g2))) /
           chi;
  }
  v.sx_global_lhs =
      (chi * v.sx + 1.0) * (chi * v.sx + 1.0) / (1.0 - chi * chi);
  v.sx_global_rhs = 1.0 / (2.0 * chi / g2 + 1.0);
  return v;
}

LocalScaling local_expansion(double dg) {
  LocalScaling l;
  l.x2_local = 2.0 * dg - dg * dg;
  l.sx_local = -1.0 + 2.0 * dg - 3.0 * dg * dg;
  return l;
}

}  // namespace rabistark
