#include "rabistark/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "rabistark/analytic.hpp"

namespace rabistark {

namespace {

void parallel_for(int n, int threads, const std::function<void(int)>& f) {
  threads = std::max(1, threads);
  if (threads == 1 || n <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        f(i);
      }
    });
  for (auto& th : pool) th.join();
}

PaperPoint with_axis(PaperPoint pt, Axis a, double value) {
  switch (a) {
    case Axis::g: pt.g = value; break;
    case Axis::lambda: pt.lambda = value; break;
    case Axis::chi: pt.chi = value; break;
    case Axis::omega: pt.omega = value; break;
  }
  return pt;
}

double axis_coord(const AxisSpec& ax, int i) {
  if (ax.steps < 2) return ax.min;
  return ax.min + (ax.max - ax.min) * double(i) / double(ax.steps - 1);
}

void check_spec(const GridSpec& spec) {
  if (spec.x_axis.steps < 2 || spec.y_axis.steps < 2)
    throw Error(errc::domain_error, "grid axes need at least 2 steps");
  if (spec.x_axis.param == spec.y_axis.param)
    throw Error(errc::domain_error, "grid axes must name different parameters");
  to_model(spec.fixed);  // validates the fixed point
}

double xs2_of(const ModelParams& p) {
  const DerivedScales s = derived_scales(p);
  return s.x_s * s.x_s;
}

GroundStateAnalysis failed_cell(const ModelParams& p, const std::string& why) {
  GroundStateAnalysis a;
  a.params = p;
  a.ok = false;
  a.error = why;
  return a;
}

}  // namespace

ModelParams to_model(const PaperPoint& pt) {
  return params_from_ratios(pt.omega, pt.g, pt.lambda, pt.chi);
}

const char* axis_name(Axis a) {
  switch (a) {
    case Axis::g: return "g";
    case Axis::lambda: return "lambda";
    case Axis::chi: return "chi";
    case Axis::omega: return "omega";
  }
  return "?";
}

std::optional<Axis> axis_from_name(const std::string& name) {
  if (name == "g") return Axis::g;
  if (name == "lambda") return Axis::lambda;
  if (name == "chi") return Axis::chi;
  if (name == "omega") return Axis::omega;
  return std::nullopt;
}

const char* boundary_kind_name(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::gap_min: return "gap_min";
    case BoundaryKind::parity_flip: return "parity_flip";
    case BoundaryKind::node_jump_with_parity: return "node_jump_with_parity";
    case BoundaryKind::node_jump_without_parity:
      return "node_jump_without_parity";
    case BoundaryKind::sx_sign: return "sx_sign";
    case BoundaryKind::zeta_one: return "zeta_one";
    case BoundaryKind::second_order_onset: return "second_order_onset";
  }
  return "?";
}

PhaseDiagram run_sweep(const GridSpec& spec, int parallelism) {
  check_spec(spec);
  PhaseDiagram d;
  d.spec = spec;
  const int nx = spec.x_axis.steps, ny = spec.y_axis.steps;
  d.cells.resize(size_t(nx) * ny);

  parallel_for(nx * ny, parallelism, [&](int idx) {
    const int ix = idx % nx, iy = idx / nx;
    PaperPoint pt = with_axis(spec.fixed, spec.x_axis.param,
                              axis_coord(spec.x_axis, ix));
    pt = with_axis(pt, spec.y_axis.param, axis_coord(spec.y_axis, iy));
    ModelParams mp;
    try {
      mp = to_model(pt);
      d.cells[idx] = analyze(mp, spec.tol, true);
    } catch (const Error& e) {
      d.cells[idx] = failed_cell(mp, e.what());
    }
  });
  return d;
}

namespace {

struct BoundaryPoint {
  double x, y;
  int ix, iy;      // lower-index cell of the originating pair
  bool along_x;    // pair direction
};

// Discrete labels used for bisection refinement.
enum class Label { parity, n_z, sx_sign };

int label_of(const GroundStateAnalysis& a, Label l) {
  switch (l) {
    case Label::parity: return a.parity;
    case Label::n_z: return a.n_z;
    case Label::sx_sign: return a.mean_sx >= 0.0 ? +1 : -1;
  }
  return 0;
}

class CellEvaluator {
 public:
  explicit CellEvaluator(const GridSpec& spec) : spec_(spec) {}

  GroundStateAnalysis at(double x, double y, bool with_wf) const {
    PaperPoint pt = with_axis(spec_.fixed, spec_.x_axis.param, x);
    pt = with_axis(pt, spec_.y_axis.param, y);
    return analyze(to_model(pt), spec_.tol, with_wf);
  }

 private:
  GridSpec spec_;
};

// Bisection on a discrete label between two grid-adjacent points.
std::array<double, 2> refine_discrete(const CellEvaluator& eval, Label label,
                                      std::array<double, 2> lo,
                                      std::array<double, 2> hi, int lo_label,
                                      int steps, bool with_wf) {
  for (int s = 0; s < steps; ++s) {
    const std::array<double, 2> mid{0.5 * (lo[0] + hi[0]),
                                    0.5 * (lo[1] + hi[1])};
    int ml;
    try {
      ml = label_of(eval.at(mid[0], mid[1], with_wf), label);
    } catch (const Error&) {
      break;  // keep the current bracket on a failed probe
    }
    if (ml == lo_label)
      lo = mid;
    else
      hi = mid;
  }
  return {0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])};
}

std::vector<Polyline> chain_points(BoundaryKind kind,
                                   std::vector<BoundaryPoint> pts, double dx,
                                   double dy) {
  std::vector<Polyline> out;
  if (pts.empty()) return out;
  const double sx = dx > 0 ? dx : 1.0, sy = dy > 0 ? dy : 1.0;
  auto dist2 = [&](const BoundaryPoint& a, const BoundaryPoint& b) {
    const double u = (a.x - b.x) / sx, v = (a.y - b.y) / sy;
    return u * u + v * v;
  };
  std::vector<bool> used(pts.size(), false);
  const double link2 = 2.5 * 2.5;

  for (;;) {
    int start = -1;
    for (size_t i = 0; i < pts.size(); ++i)
      if (!used[i] && (start < 0 ||
                       std::make_pair(pts[i].y, pts[i].x) <
                           std::make_pair(pts[start].y, pts[start].x)))
        start = int(i);
    if (start < 0) break;

    std::vector<int> chain{start};
    used[start] = true;
    for (bool extended = true; extended;) {
      extended = false;
      for (int end : {0, 1}) {
        const int tip = end == 0 ? chain.front() : chain.back();
        int best = -1;
        double best_d = link2;
        for (size_t i = 0; i < pts.size(); ++i) {
          if (used[i]) continue;
          const double d = dist2(pts[tip], pts[i]);
          if (d <= best_d) {
            best_d = d;
            best = int(i);
          }
        }
        if (best >= 0) {
          used[best] = true;
          if (end == 0)
            chain.insert(chain.begin(), best);
          else
            chain.push_back(best);
          extended = true;
        }
      }
    }
    Polyline pl;
    pl.kind = kind;
    for (int i : chain) pl.points.push_back({pts[i].x, pts[i].y});
    out.push_back(std::move(pl));
  }
  return out;
}

}  // namespace

PhaseDiagram detect_boundaries(PhaseDiagram d, const DetectOptions& opt) {
  const GridSpec& spec = d.spec;
  const int nx = spec.x_axis.steps, ny = spec.y_axis.steps;
  const double dx_cell =
      nx > 1 ? (spec.x_axis.max - spec.x_axis.min) / (nx - 1) : 0.0;
  const double dy_cell =
      ny > 1 ? (spec.y_axis.max - spec.y_axis.min) / (ny - 1) : 0.0;
  const CellEvaluator eval(spec);

  auto cell = [&](int ix, int iy) -> const GroundStateAnalysis& {
    return d.cells[size_t(iy) * nx + ix];
  };
  auto coords = [&](int ix, int iy) -> std::array<double, 2> {
    return {axis_coord(spec.x_axis, ix), axis_coord(spec.y_axis, iy)};
  };

  std::vector<BoundaryPoint> found[7];
  auto add = [&](BoundaryKind kind, double x, double y, int ix, int iy,
                 bool along_x) {
    found[int(kind)].push_back({x, y, ix, iy, along_x});
  };

  auto classify_pair = [&](int ix, int iy, bool along_x) {
    const int jx = along_x ? ix + 1 : ix;
    const int jy = along_x ? iy : iy + 1;
    const GroundStateAnalysis& a = cell(ix, iy);
    const GroundStateAnalysis& b = cell(jx, jy);
    if (!a.ok || !b.ok) return;
    const auto ca = coords(ix, iy), cb = coords(jx, jy);
    const std::array<double, 2> mid{0.5 * (ca[0] + cb[0]),
                                    0.5 * (ca[1] + cb[1])};

    auto refined = [&](Label label, bool with_wf) {
      if (!opt.refine) return mid;
      return refine_discrete(eval, label, ca, cb, label_of(a, label),
                             opt.bisection_steps, with_wf);
    };

    if (a.parity != b.parity) {
      const auto p = refined(Label::parity, false);
      add(BoundaryKind::parity_flip, p[0], p[1], ix, iy, along_x);
    }
    if (a.n_z >= 0 && b.n_z >= 0 && a.n_z != b.n_z) {
      const auto p = refined(Label::n_z, true);
      add(a.parity != b.parity ? BoundaryKind::node_jump_with_parity
                               : BoundaryKind::node_jump_without_parity,
          p[0], p[1], ix, iy, along_x);
    }
    const int sa = a.mean_sx >= 0.0 ? +1 : -1;
    const int sb = b.mean_sx >= 0.0 ? +1 : -1;
    if (sa != sb) {
      const auto p = refined(Label::sx_sign, false);
      add(BoundaryKind::sx_sign, p[0], p[1], ix, iy, along_x);
    }
    // zeta = 1 crossing, by local interpolation.
    if (std::isfinite(a.zeta) && std::isfinite(b.zeta)) {
      const double va = a.zeta - 1.0, vb = b.zeta - 1.0;
      if (va == 0.0 || (va < 0.0) != (vb < 0.0)) {
        const double t = va / (va - vb);
        add(BoundaryKind::zeta_one, ca[0] + t * (cb[0] - ca[0]),
            ca[1] + t * (cb[1] - ca[1]), ix, iy, along_x);
      }
    }
    // Second-order onset: <x^2>/x_s^2 crossing the threshold.
    const double va = a.mean_x2 / xs2_of(a.params) - opt.onset_threshold;
    const double vb = b.mean_x2 / xs2_of(b.params) - opt.onset_threshold;
    if ((va < 0.0) != (vb < 0.0)) {
      const double t = va / (va - vb);
      add(BoundaryKind::second_order_onset, ca[0] + t * (cb[0] - ca[0]),
          ca[1] + t * (cb[1] - ca[1]), ix, iy, along_x);
    }
  };

  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix + 1 < nx; ++ix) classify_pair(ix, iy, true);
  for (int iy = 0; iy + 1 < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) classify_pair(ix, iy, false);

  // Gap minima along rows and columns, refined by a parabola through the
  // three bracketing samples.
  auto scan_line = [&](bool along_x, int fixed_idx) {
    const int n = along_x ? nx : ny;
    for (int i = 1; i + 1 < n; ++i) {
      const GroundStateAnalysis& m = along_x ? cell(i, fixed_idx) : cell(fixed_idx, i);
      const GroundStateAnalysis& l = along_x ? cell(i - 1, fixed_idx) : cell(fixed_idx, i - 1);
      const GroundStateAnalysis& r = along_x ? cell(i + 1, fixed_idx) : cell(fixed_idx, i + 1);
      if (!m.ok || !l.ok || !r.ok) continue;
      if (!(m.gap <= l.gap && m.gap <= r.gap &&
            m.gap < opt.gap_ceiling * m.params.Omega))
        continue;
      const double denom = l.gap - 2.0 * m.gap + r.gap;
      double shift = 0.0;
      if (denom > 0.0)
        shift = 0.5 * (l.gap - r.gap) / denom;
      shift = std::clamp(shift, -1.0, 1.0);
      const auto c = along_x ? coords(i, fixed_idx) : coords(fixed_idx, i);
      if (along_x)
        add(BoundaryKind::gap_min, c[0] + shift * dx_cell, c[1], i, fixed_idx, true);
      else
        add(BoundaryKind::gap_min, c[0], c[1] + shift * dy_cell, fixed_idx, i, false);
    }
  };
  for (int iy = 0; iy < ny; ++iy) scan_line(true, iy);
  for (int ix = 0; ix < nx; ++ix) scan_line(false, ix);

  d.boundaries.clear();
  for (int k = 0; k < 7; ++k) {
    auto polylines = chain_points(BoundaryKind(k), std::move(found[k]),
                                  dx_cell, dy_cell);
    for (auto& pl : polylines) d.boundaries.push_back(std::move(pl));
  }
  return d;
}

std::optional<std::array<double, 2>> polyline_intersection(const Polyline& a,
                                                           const Polyline& b) {
  for (size_t i = 0; i + 1 < a.points.size(); ++i)
    for (size_t j = 0; j + 1 < b.points.size(); ++j) {
      const auto& p = a.points[i];
      const auto& p2 = a.points[i + 1];
      const auto& q = b.points[j];
      const auto& q2 = b.points[j + 1];
      const double rx = p2[0] - p[0], ry = p2[1] - p[1];
      const double sx = q2[0] - q[0], sy = q2[1] - q[1];
      const double denom = rx * sy - ry * sx;
      if (std::fabs(denom) < 1e-30) continue;
      const double qpx = q[0] - p[0], qpy = q[1] - p[1];
      const double t = (qpx * sy - qpy * sx) / denom;
      const double u = (qpx * ry - qpy * rx) / denom;
      if (t >= -1e-9 && t <= 1.0 + 1e-9 && u >= -1e-9 && u <= 1.0 + 1e-9)
        return std::array<double, 2>{p[0] + t * rx, p[1] + t * ry};
    }
  return std::nullopt;
}

std::optional<ScalingLaw> law_from_name(const std::string& name) {
  if (name == "x2") return ScalingLaw::x2;
  if (name == "sx") return ScalingLaw::sx;
  if (name == "x2-jc") return ScalingLaw::x2_jc;
  if (name == "unified") return ScalingLaw::unified;
  if (name == "local-x2") return ScalingLaw::local_x2;
  if (name == "local-sx") return ScalingLaw::local_sx;
  if (name == "sx-global") return ScalingLaw::sx_global;
  return std::nullopt;
}

const char* law_name(ScalingLaw law) {
  switch (law) {
    case ScalingLaw::x2: return "x2";
    case ScalingLaw::sx: return "sx";
    case ScalingLaw::x2_jc: return "x2-jc";
    case ScalingLaw::unified: return "unified";
    case ScalingLaw::local_x2: return "local-x2";
    case ScalingLaw::local_sx: return "local-sx";
    case ScalingLaw::sx_global: return "sx-global";
  }
  return "?";
}

namespace {

bool is_local_law(ScalingLaw law) {
  return law == ScalingLaw::local_x2 || law == ScalingLaw::local_sx;
}

double scaled_observable(ScalingLaw law, const GroundStateAnalysis& a) {
  const double xs2 = xs2_of(a.params);
  const double chi = a.params.chi;
  switch (law) {
    case ScalingLaw::x2:
    case ScalingLaw::x2_jc: return a.mean_x2 / xs2;
    case ScalingLaw::sx:
    case ScalingLaw::local_sx: return a.mean_sx;
    case ScalingLaw::unified: return (a.mean_x2 + a.mean_p2) / xs2;
    case ScalingLaw::local_x2: return (1.0 - chi) * a.mean_x2 / (2.0 * xs2);
    case ScalingLaw::sx_global:
      return (chi * a.mean_sx + 1.0) * (chi * a.mean_sx + 1.0) /
             (1.0 - chi * chi);
  }
  return 0.0;
}

double reference_value(ScalingLaw law, double scaled_x, double gbar_lambda,
                       double chi) {
  if (law == ScalingLaw::local_x2) return local_expansion(scaled_x).x2_local;
  if (law == ScalingLaw::local_sx) return local_expansion(scaled_x).sx_local;
  const ScalingValues v = scaling_laws(gbar_lambda, chi);
  switch (law) {
    case ScalingLaw::x2: return v.x2_scaled;
    case ScalingLaw::sx: return v.sx;
    case ScalingLaw::x2_jc: return v.x2_jc;
    case ScalingLaw::unified: return v.x2p2_unified;
    case ScalingLaw::sx_global: return v.sx_global_rhs;
    default: return 0.0;
  }
}

}  // namespace

CollapseDataset build_collapse(
    ScalingLaw law, const std::vector<std::pair<double, double>>& lambda_chi,
    std::pair<double, double> x_range, int points, double omega,
    const CollapseOptions& opt) {
  if (points < 2) throw Error(errc::domain_error, "need at least 2 points");
  CollapseDataset out;
  out.law = law;
  out.scaled_x.resize(points);
  for (int i = 0; i < points; ++i)
    out.scaled_x[i] = x_range.first +
                      (x_range.second - x_range.first) * i / double(points - 1);

  out.curves.resize(lambda_chi.size());
  const int total = points * int(lambda_chi.size());
  std::vector<double> ys(total, 0.0), refs(total, 0.0);

  parallel_for(total, opt.threads, [&](int idx) {
    const int s = idx / points, i = idx % points;
    const double lambda = lambda_chi[s].first, chi = lambda_chi[s].second;
    const double gc = critical_coupling(lambda, chi);  // units of g_s
    const double x = out.scaled_x[i];
    const double g_over_gc =
        is_local_law(law) ? 1.0 + x * (1.0 + chi) / (1.0 - chi) : x;
    const PaperPoint pt{omega, g_over_gc * gc, lambda, chi};
    const GroundStateAnalysis a = analyze(to_model(pt), opt.tol, false);
    const double gbar_lambda = g_over_gc * gc * (1.0 + std::fabs(lambda)) / 2.0;
    ys[idx] = scaled_observable(law, a);
    refs[idx] = reference_value(law, x, gbar_lambda, chi);
  });

  for (size_t s = 0; s < lambda_chi.size(); ++s) {
    CollapseCurve& c = out.curves[s];
    c.lambda = lambda_chi[s].first;
    c.chi = lambda_chi[s].second;
    c.y.assign(ys.begin() + s * points, ys.begin() + (s + 1) * points);
    c.y_ref.assign(refs.begin() + s * points, refs.begin() + (s + 1) * points);
    for (int i = 1; i < points; ++i)
      if (std::fabs(c.y[i] - c.y[i - 1]) > opt.jump_threshold)
        c.jump_after.push_back(i);
  }

  out.max_pairwise_dev = max_pairwise_dev_within(
      out, std::numeric_limits<double>::infinity());
  return out;
}

double max_pairwise_dev_within(const CollapseDataset& d, double x_limit) {
  double dev = 0.0;
  for (size_t i = 0; i < d.scaled_x.size(); ++i) {
    if (d.scaled_x[i] > x_limit) continue;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& c : d.curves) {
      lo = std::min(lo, c.y[i]);
      hi = std::max(hi, c.y[i]);
    }
    if (hi >= lo) dev = std::max(dev, hi - lo);
  }
  return dev;
}

}  // namespace rabistark
