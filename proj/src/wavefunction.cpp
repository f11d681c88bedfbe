#include "rabistark/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rabistark {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kRescale = 1e150;
constexpr double kLogRescale = 345.38775766616671;  // log(1e150)

// One sweep of the seeded upward recurrence at fixed x, accumulating
// sum_n c_n phi_n(x) for up to two coefficient sets. The pair (m_prev, m)
// carries the recurrence in a rescaled range; log_scale tracks the true
// magnitude so the Gaussian seed never underflows the recurrence itself.
template <int NSets>
void hermite_accumulate(double x, int n_max,
                        const std::vector<double>* coeff[NSets],
                        double out[NSets]) {
  double log_scale = -0.5 * x * x - 0.25 * std::log(kPi);
  double escale = std::exp(log_scale);
  double m_prev = 0.0;
  double m = 1.0;
  for (int set = 0; set < NSets; ++set) out[set] = 0.0;
  for (int n = 0;; ++n) {
    const double phi = m * escale;
    for (int set = 0; set < NSets; ++set)
      out[set] += (*coeff[set])[n] * phi;
    if (n == n_max) break;
    const double next = std::sqrt(2.0 / (n + 1)) * x * m -
                        std::sqrt(double(n) / (n + 1)) * m_prev;
    m_prev = m;
    m = next;
    if (std::fabs(m) > kRescale) {
      m /= kRescale;
      m_prev /= kRescale;
      log_scale += kLogRescale;
      escale = std::exp(log_scale);
    }
  }
}

std::vector<double> grid_points(const QuadratureGrid& g) {
  std::vector<double> xs(g.samples);
  const double dx = 2.0 * g.half_width / (g.samples - 1);
  for (int i = 0; i < g.samples; ++i) xs[i] = -g.half_width + i * dx;
  return xs;
}

PositionWaveFunction synthesize(const std::vector<double>& c_up,
                                const std::vector<double>& c_down,
                                int n_max, const QuadratureGrid& grid) {
  PositionWaveFunction wf;
  wf.grid = grid_points(grid);
  wf.dx = 2.0 * grid.half_width / (grid.samples - 1);
  wf.psi_plus.resize(grid.samples);
  wf.psi_minus.resize(grid.samples);

  // sigma_z components from the sigma_x sectors.
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<double> cz_plus(n_max + 1), cz_minus(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    cz_plus[n] = (c_up[n] + c_down[n]) * inv_sqrt2;
    cz_minus[n] = (c_up[n] - c_down[n]) * inv_sqrt2;
  }

  const std::vector<double>* sets[2] = {&cz_plus, &cz_minus};
  for (int i = 0; i < grid.samples; ++i) {
    double vals[2];
    hermite_accumulate<2>(wf.grid[i], n_max, sets, vals);
    wf.psi_plus[i] = vals[0];
    wf.psi_minus[i] = vals[1];
  }

  double peak = 0.0;
  int peak_idx = 0;
  for (int i = 0; i < grid.samples; ++i) {
    const double a = std::fabs(wf.psi_plus[i]);
    if (a > peak) {
      peak = a;
      peak_idx = i;
    }
    peak = std::max(peak, std::fabs(wf.psi_minus[i]));
  }
  const double edge =
      std::max(std::max(std::fabs(wf.psi_plus.front()), std::fabs(wf.psi_plus.back())),
               std::max(std::fabs(wf.psi_minus.front()), std::fabs(wf.psi_minus.back())));
  if (edge > 1e-10 * peak)
    throw Error(errc::grid_too_small, "wavefunction reaches the grid edge");

  if (wf.psi_plus[peak_idx] < 0.0) {
    for (double& v : wf.psi_plus) v = -v;
    for (double& v : wf.psi_minus) v = -v;
  }
  wf.phase_fixed = true;
  return wf;
}

void split_state(const std::vector<double>& state, const Truncation& t,
                 std::vector<double>& c_up, std::vector<double>& c_down) {
  if (int(state.size()) != 2 * (t.n_max + 1))
    throw Error(errc::domain_error, "state size does not match truncation");
  c_up.resize(t.n_max + 1);
  c_down.resize(t.n_max + 1);
  for (int n = 0; n <= t.n_max; ++n) {
    c_up[n] = state[basis_index(t, +1, n)];
    c_down[n] = state[basis_index(t, -1, n)];
  }
}

}  // namespace

QuadratureGrid default_grid(const ModelParams& p, double mean_n) {
  const DerivedScales s = derived_scales(p);
  const double reach = std::max(std::fabs(s.gp_z), std::fabs(s.gp_y));
  const double width = reach + 6.0 * std::sqrt(2.0 * std::max(mean_n, 0.0) + 1.0);
  QuadratureGrid g;
  g.half_width = std::max(8.0, width);
  g.samples = std::max(4096, int(std::ceil(2.0 * g.half_width / 0.02)) + 1);
  return g;
}

double hermite_function(int n, double x) {
  if (n < 0) throw Error(errc::domain_error, "n >= 0 required");
  std::vector<double> c(n + 1, 0.0);
  c[n] = 1.0;
  const std::vector<double>* sets[1] = {&c};
  double out[1];
  hermite_accumulate<1>(x, n, sets, out);
  return out[0];
}

PositionWaveFunction position_representation(const std::vector<double>& state,
                                             const Truncation& t,
                                             const QuadratureGrid& grid) {
  std::vector<double> c_up, c_down;
  split_state(state, t, c_up, c_down);
  return synthesize(c_up, c_down, t.n_max, grid);
}

PositionWaveFunction momentum_representation(const std::vector<double>& state,
                                             const Truncation& t,
                                             const QuadratureGrid& grid) {
  std::vector<double> c_up, c_down;
  split_state(state, t, c_up, c_down);
  for (int n = 0; n <= t.n_max; ++n) {
    const double sign = ((n / 2) % 2 == 0) ? 1.0 : -1.0;
    c_up[n] *= sign;
    c_down[n] *= sign;
  }
  return synthesize(c_up, c_down, t.n_max, grid);
}

NodeReport count_nodes(const PositionWaveFunction& wf, Component c,
                       double threshold) {
  const std::vector<double>& psi =
      (c == Component::plus) ? wf.psi_plus : wf.psi_minus;
  if (!wf.phase_fixed)
    throw Error(errc::domain_error, "phase must be fixed before node count");

  double peak = 0.0;
  for (double v : psi) peak = std::max(peak, std::fabs(v));
  const double thr = threshold * peak;

  NodeReport report;
  report.threshold_used = thr;
  int last_sig = -1;
  for (int i = 0; i < int(psi.size()); ++i) {
    if (std::fabs(psi[i]) <= thr) continue;
    if (last_sig >= 0 && (psi[i] > 0) != (psi[last_sig] > 0)) {
      const double x0 = wf.grid[last_sig], x1 = wf.grid[i];
      const double y0 = psi[last_sig], y1 = psi[i];
      report.node_positions.push_back(x0 - y0 * (x1 - x0) / (y1 - y0));
    }
    last_sig = i;
  }
  report.n_z = int(report.node_positions.size());
  return report;
}

double zeta_ratio(const PositionWaveFunction& wf, const ModelParams& p) {
  const DerivedScales s = derived_scales(p);
  const double bottom = (p.lambda >= 0.0) ? std::fabs(s.gp_z) : std::fabs(s.gp_y);
  if (bottom < 1e-12) return std::numeric_limits<double>::quiet_NaN();

  const std::vector<double>& psi = wf.psi_plus;
  const int n = int(psi.size());
  double global_max = 0.0;
  for (double v : psi) global_max = std::max(global_max, std::fabs(v));

  // Local maxima of |psi_plus| competitive with the global one; when two
  // agree within 1% the outer one is the displaced main peak.
  int best = -1;
  double best_abs_x = -1.0;
  for (int i = 1; i + 1 < n; ++i) {
    const double a = std::fabs(psi[i]);
    if (a >= std::fabs(psi[i - 1]) && a >= std::fabs(psi[i + 1]) &&
        a >= 0.99 * global_max) {
      if (std::fabs(wf.grid[i]) > best_abs_x) {
        best_abs_x = std::fabs(wf.grid[i]);
        best = i;
      }
    }
  }
  if (best <= 0 || best >= n - 1)
    throw Error(errc::degenerate_peak, "peak sits on the grid edge");

  // Parabolic refinement on |psi|.
  const double y0 = std::fabs(psi[best - 1]);
  const double y1 = std::fabs(psi[best]);
  const double y2 = std::fabs(psi[best + 1]);
  const double denom = y0 - 2.0 * y1 + y2;
  double x_peak = wf.grid[best];
  if (std::fabs(denom) > 0.0)
    x_peak += 0.5 * wf.dx * (y0 - y2) / denom;
  return std::fabs(x_peak) / bottom;
}

double quadrature_norm(const PositionWaveFunction& wf) {
  double sum = 0.0;
  for (size_t i = 0; i < wf.grid.size(); ++i) {
    double w = (i == 0 || i + 1 == wf.grid.size()) ? 0.5 : 1.0;
    sum += w * (wf.psi_plus[i] * wf.psi_plus[i] +
                wf.psi_minus[i] * wf.psi_minus[i]);
  }
  return sum * wf.dx;
}

EnergyParts energy_decomposition(const PositionWaveFunction& wf,
                                 const ModelParams& p0, double e0_expected) {
  const ModelParams p = validate(p0);
  if (wf.dx > 0.02 + 1e-12)
    throw Error(errc::grid_too_small,
                "dx <= 0.02 required for the derivative stencils");
  const DerivedScales s = derived_scales(p);
  const int n = int(wf.grid.size());
  const double dx = wf.dx;

  // 4th-order centered first and second derivatives of psi_minus and
  // psi_plus; endpoints carry no weight (grid invariant).
  auto deriv1 = [&](const std::vector<double>& f, int i) {
    return (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) /
           (12.0 * dx);
  };
  auto deriv2 = [&](const std::vector<double>& f, int i) {
    return (-f[i + 2] + 16.0 * f[i + 1] - 30.0 * f[i] + 16.0 * f[i - 1] -
            f[i - 2]) /
           (12.0 * dx * dx);
  };

  double overlap = 0.0;       // int psi+ psi-
  double cross_grad = 0.0;    // int psi+ d/dx psi-
  double cross_p2 = 0.0;      // int psi+ (-d2/dx2) psi-
  double cross_x2 = 0.0;      // int psi+ x^2 psi-
  double diag_kin = 0.0;      // sum_s int psi_s (-d2/dx2) psi_s
  double diag_pot = 0.0;      // sum_s int psi_s v_s psi_s
  for (int i = 2; i + 2 < n; ++i) {
    const double x = wf.grid[i];
    const double fp = wf.psi_plus[i];
    const double fm = wf.psi_minus[i];
    overlap += fp * fm;
    cross_grad += fp * deriv1(wf.psi_minus, i);
    cross_p2 += fp * (-deriv2(wf.psi_minus, i));
    cross_x2 += fp * x * x * fm;
    diag_kin += fp * (-deriv2(wf.psi_plus, i)) + fm * (-deriv2(wf.psi_minus, i));
    const double vplus = 0.5 * p.omega * (x + s.gp_z) * (x + s.gp_z);
    const double vminus = 0.5 * p.omega * (x - s.gp_z) * (x - s.gp_z);
    const double v0 = -0.5 * p.omega * (s.gp_z * s.gp_z + 1.0);
    diag_pot += fp * (vplus + v0) * fp + fm * (vminus + v0) * fm;
  }
  overlap *= dx;
  cross_grad *= dx;
  cross_p2 *= dx;
  cross_x2 *= dx;
  diag_kin *= dx;
  diag_pot *= dx;

  EnergyParts parts;
  parts.E_Omega = p.Omega * overlap;
  parts.E_gy = 2.0 * std::sqrt(2.0) * (-s.g_y) * cross_grad;
  parts.E_p2 = p.chi * p.omega * cross_p2;
  parts.E_x2 = p.chi * p.omega * cross_x2;
  parts.E_diag = 0.5 * p.omega * diag_kin + diag_pot;
  parts.E_rest = -p.chi * p.omega * overlap;
  parts.E_total = parts.E_Omega + parts.E_gy + parts.E_p2 + parts.E_x2 +
                  parts.E_diag + parts.E_rest;

  if (std::isfinite(e0_expected) &&
      std::fabs(parts.E_total - e0_expected) > 1e-5 * p.Omega)
    throw Error(errc::reconstruction_mismatch,
                "energy reconstruction misses E0 beyond tolerance");
  return parts;
}

}  // namespace rabistark
