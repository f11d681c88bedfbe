#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rabistark/model.hpp"
#include "rabistark/observables.hpp"

namespace rabistark {

// A parameter point in the units used on every figure axis: omega in units
// of Omega, g in units of g_s (which itself depends on omega).
struct PaperPoint {
  double omega = 0.5;
  double g = 0.0;
  double lambda = 1.0;
  double chi = 0.0;
};

ModelParams to_model(const PaperPoint& pt);

enum class Axis { g, lambda, chi, omega };

const char* axis_name(Axis a);
std::optional<Axis> axis_from_name(const std::string& name);

struct AxisSpec {
  Axis param = Axis::g;
  double min = 0.0;
  double max = 1.0;
  int steps = 2;
};

struct GridSpec {
  AxisSpec x_axis;
  AxisSpec y_axis;  // must name a different parameter
  PaperPoint fixed;
  double tol = -1.0;
};

enum class BoundaryKind {
  gap_min,
  parity_flip,
  node_jump_with_parity,     // conventional topological transition
  node_jump_without_parity,  // unconventional topological transition
  sx_sign,
  zeta_one,
  second_order_onset,
};

const char* boundary_kind_name(BoundaryKind k);

struct Polyline {
  BoundaryKind kind;
  std::vector<std::array<double, 2>> points;  // (x_axis, y_axis) coordinates
};

struct PhaseDiagram {
  GridSpec spec;
  std::vector<GroundStateAnalysis> cells;  // row-major, x fastest
  std::vector<Polyline> boundaries;
};

// Runs analyze() on every grid cell with a worker pool; output is keyed by
// cell index, so the result is identical for any parallelism. Failed cells
// (truncation ceiling) are flagged, never fatal.
PhaseDiagram run_sweep(const GridSpec& spec, int parallelism);

struct DetectOptions {
  double onset_threshold = 0.1;  // on <x^2>/x_s^2
  double gap_ceiling = 0.02;     // in units of Omega
  int bisection_steps = 20;
  bool refine = true;
};

// Classifies every adjacent cell pair and chains boundary segments into
// polylines. Discrete labels (parity, n_z, sign of <sigma_x>) are refined
// by bisection in parameter space; continuous fields (gap minimum,
// second-order onset, zeta = 1) by local interpolation only.
PhaseDiagram detect_boundaries(PhaseDiagram diagram,
                               const DetectOptions& opt = {});

// First crossing of two polylines, if any.
std::optional<std::array<double, 2>> polyline_intersection(const Polyline& a,
                                                           const Polyline& b);

enum class ScalingLaw {
  x2,        // <x^2>/x_s^2 vs g/g_c, lambda > 0 branch
  sx,        // <sigma_x> vs g/g_c
  x2_jc,     // <x^2>/x_s^2 vs g/g_c, lambda = 0 branch
  unified,   // (<x^2>+<p^2>)/x_s^2 vs g/g_c, any anisotropy
  local_x2,  // (1-chi)<x^2>/(2 x_s^2) vs dg
  local_sx,  // <sigma_x> vs dg
  sx_global, // (chi<sigma_x>+1)^2/(1-chi^2) vs g/g_c
};

std::optional<ScalingLaw> law_from_name(const std::string& name);
const char* law_name(ScalingLaw law);

struct CollapseCurve {
  double lambda = 0.0;
  double chi = 0.0;
  std::vector<double> y;        // numerical scaled observable
  std::vector<double> y_ref;    // analytic reference on the same grid
  std::vector<int> jump_after;  // sample indices preceded by a detected jump
};

struct CollapseDataset {
  ScalingLaw law;
  std::vector<double> scaled_x;  // shared sampling grid
  std::vector<CollapseCurve> curves;
  double max_pairwise_dev = 0.0;  // max spread across curves at fixed x
};

struct CollapseOptions {
  double tol = -1.0;
  int threads = 1;
  double jump_threshold = 0.1;  // adjacent-sample jump marking a first-order step
};

// Scaled collapse curves for the chosen law. The sampling coordinate is
// g/g_c^{lambda,chi} except for the local_* laws which sample dg directly.
CollapseDataset build_collapse(ScalingLaw law,
                               const std::vector<std::pair<double, double>>& lambda_chi,
                               std::pair<double, double> x_range, int points,
                               double omega, const CollapseOptions& opt = {});

// Spread restricted to scaled_x <= x_limit (the collapse window).
double max_pairwise_dev_within(const CollapseDataset& d, double x_limit);

}  // namespace rabistark
