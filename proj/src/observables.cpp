#include "rabistark/observables.hpp"

#include <cmath>
#include <limits>

namespace rabistark {

namespace {

OperatorMatrix spin_tensor(const OperatorMatrix& single, const Truncation& t,
                           const std::string& tag) {
  const int nb = t.n_max + 1;
  OperatorMatrix m;
  m.dim = 2 * nb;
  m.entries.assign(size_t(m.dim) * m.dim, 0.0);
  m.basis_tag = tag;
  for (int block = 0; block < 2; ++block)
    for (int i = 0; i < nb; ++i)
      for (int j = 0; j < nb; ++j)
        m.at(block * nb + i, block * nb + j) = single.at(i, j);
  return m;
}

}  // namespace

QuadratureOps quadrature_operators(const Truncation& t) {
  const int nb = t.n_max + 1;
  // aa carries the pair amplitudes sqrt((n+1)(n+2)) on both triangles,
  // i.e. the symmetric matrix a'a' + aa; x^2 and p^2 take half of it.
  OperatorMatrix aa1;
  aa1.dim = nb;
  aa1.entries.assign(size_t(nb) * nb, 0.0);
  for (int n = 0; n + 2 < nb; ++n) {
    const double v = std::sqrt(double(n + 1) * double(n + 2));
    aa1.at(n, n + 2) = v;
    aa1.at(n + 2, n) = v;
  }
  OperatorMatrix x21 = aa1, p21 = aa1;
  for (auto& e : x21.entries) e *= 0.5;
  for (auto& e : p21.entries) e *= -0.5;
  for (int n = 0; n < nb; ++n) {
    x21.at(n, n) += n + 0.5;
    p21.at(n, n) += n + 0.5;
  }
  QuadratureOps ops;
  ops.x2 = spin_tensor(x21, t, "sx-major:x2");
  ops.p2 = spin_tensor(p21, t, "sx-major:p2");
  ops.aa = spin_tensor(aa1, t, "sx-major:aa");
  return ops;
}

int parity_value(const std::vector<double>& state, const OperatorMatrix& p) {
  double v = 0.0;
  for (int i = 0; i < p.dim; ++i) v += p.at(i, i) * state[i] * state[i];
  if (std::fabs(v) < 1.0 - 1e-8)
    throw Error(errc::impure_parity, "state is not a parity eigenstate");
  return v > 0.0 ? +1 : -1;
}

GroundStateAnalysis analyze(const ModelParams& p0, double tol,
                            bool with_wavefunction) {
  const ModelParams p = validate(p0);
  GroundStateAnalysis a;
  a.params = p;

  SolveOptions opt;
  opt.tol = tol;
  opt.k = 2;
  const SpectralResult res = ground_solve(p, opt);
  const Truncation trunc{res.n_max_used};

  a.E0 = res.energies[0];
  a.gap = excitation_gap(res);
  a.n_max_used = res.n_max_used;
  a.converged = res.converged;
  a.degenerate = a.gap < 1e-9 * p.Omega;

  // Parity-pure representative: the true ground state, except for an exact
  // doublet where the even-parity partner is reported.
  const std::vector<double>* gs = &res.states[0];
  if (a.degenerate && parity_expectation(res.states[0], trunc) < 0.0 &&
      parity_expectation(res.states[1], trunc) > 0.0)
    gs = &res.states[1];

  const OperatorMatrix pm = parity(trunc);
  a.parity = parity_value(*gs, pm);
  a.mean_n = expectation_number(*gs, trunc);
  a.mean_sx = expectation_sx(*gs, trunc);
  a.mean_aa = expectation_aa(*gs, trunc);
  a.mean_x2 = a.mean_aa + a.mean_n + 0.5;
  a.mean_p2 = -a.mean_aa + a.mean_n + 0.5;
  a.zeta = std::numeric_limits<double>::quiet_NaN();

  if (with_wavefunction) {
    const QuadratureGrid grid = default_grid(p, a.mean_n);
    const PositionWaveFunction wf_x =
        position_representation(*gs, trunc, grid);
    if (p.lambda < 0.0) {
      const PositionWaveFunction wf_p =
          momentum_representation(*gs, trunc, grid);
      a.n_z = count_nodes(wf_p, Component::plus).n_z;
      a.zeta = zeta_ratio(wf_p, p);
    } else {
      a.n_z = count_nodes(wf_x, Component::plus).n_z;
      a.zeta = zeta_ratio(wf_x, p);
    }
    a.energy_parts = energy_decomposition(wf_x, p, a.E0);
  }
  return a;
}

}  // namespace rabistark
