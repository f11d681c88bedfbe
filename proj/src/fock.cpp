#include "rabistark/fock.hpp"

#include <cmath>
#include <cstdlib>

namespace rabistark {

namespace {

OperatorMatrix zeros(int dim, std::string tag) {
  OperatorMatrix m;
  m.dim = dim;
  m.entries.assign(static_cast<size_t>(dim) * dim, 0.0);
  m.basis_tag = std::move(tag);
  return m;
}

void check_truncation(const Truncation& t) {
  if (t.n_max < 1) throw Error(errc::domain_error, "n_max >= 1 required");
}

}  // namespace

OperatorMatrix annihilation(const Truncation& t) {
  check_truncation(t);
  OperatorMatrix a = zeros(t.n_max + 1, "fock(n_max=" + std::to_string(t.n_max) + ")");
  for (int n = 1; n <= t.n_max; ++n) a.at(n - 1, n) = std::sqrt(double(n));
  return a;
}

OperatorMatrix hamiltonian(const ModelParams& p0, const Truncation& t) {
  check_truncation(t);
  const ModelParams p = validate(p0);
  const int dim = 2 * (t.n_max + 1);
  OperatorMatrix h =
      zeros(dim, "sx-major:fock(n_max=" + std::to_string(t.n_max) + ")");

  for (int s : {+1, -1}) {
    for (int n = 0; n <= t.n_max; ++n) {
      const int i = basis_index(t, s, n);
      h.at(i, i) = n * p.omega + s * (0.5 * p.Omega + p.chi * p.omega * n);
    }
  }
  // Rotating term couples |up,n> and |down,n+1>; counter-rotating (weight
  // lambda) couples |down,n> and |up,n+1>. Both flip spin and Fock parity
  // together, so parity commutes exactly even after truncation.
  for (int n = 0; n < t.n_max; ++n) {
    const double amp = p.g * std::sqrt(double(n + 1));
    const int up_n = basis_index(t, +1, n);
    const int dn_n1 = basis_index(t, -1, n + 1);
    h.at(up_n, dn_n1) += amp;
    h.at(dn_n1, up_n) += amp;
    const int dn_n = basis_index(t, -1, n);
    const int up_n1 = basis_index(t, +1, n + 1);
    h.at(dn_n, up_n1) += p.lambda * amp;
    h.at(up_n1, dn_n) += p.lambda * amp;
  }
  return h;
}

OperatorMatrix parity(const Truncation& t) {
  check_truncation(t);
  const int dim = 2 * (t.n_max + 1);
  OperatorMatrix pm =
      zeros(dim, "sx-major:fock(n_max=" + std::to_string(t.n_max) + ")");
  for (int s : {+1, -1})
    for (int n = 0; n <= t.n_max; ++n)
      pm.at(basis_index(t, s, n), basis_index(t, s, n)) =
          s * ((n % 2 == 0) ? 1.0 : -1.0);
  return pm;
}

double max_abs(const OperatorMatrix& m) {
  double v = 0.0;
  for (double x : m.entries) v = std::max(v, std::fabs(x));
  return v;
}

double max_asymmetry(const OperatorMatrix& m) {
  double v = 0.0;
  for (int i = 0; i < m.dim; ++i)
    for (int j = i + 1; j < m.dim; ++j)
      v = std::max(v, std::fabs(m.at(i, j) - m.at(j, i)));
  return v;
}

double commutator_norm(const OperatorMatrix& h, const OperatorMatrix& p) {
  if (h.dim != p.dim) throw Error(errc::domain_error, "dimension mismatch");
  // P is diagonal, so [H,P]_ij = H_ij (P_jj - P_ii).
  double v = 0.0;
  for (int i = 0; i < h.dim; ++i)
    for (int j = 0; j < h.dim; ++j)
      v = std::max(v, std::fabs(h.at(i, j) * (p.at(j, j) - p.at(i, i))));
  return v;
}

SectorSplit sector_split(const OperatorMatrix& h, const OperatorMatrix& p) {
  const double comm = commutator_norm(h, p);
  if (comm > 1e-12 * std::max(max_abs(h), 1e-300))
    throw Error(errc::commutator_violation,
                "H and P do not commute to tolerance");

  SectorSplit split;
  for (int i = 0; i < h.dim; ++i)
    (p.at(i, i) > 0 ? split.even_index : split.odd_index).push_back(i);

  auto extract = [&](const std::vector<int>& idx) {
    OperatorMatrix block = zeros(int(idx.size()), h.basis_tag + ":sector");
    for (size_t a = 0; a < idx.size(); ++a)
      for (size_t b = 0; b < idx.size(); ++b)
        block.at(int(a), int(b)) = h.at(idx[a], idx[b]);
    return block;
  };
  split.h_even = extract(split.even_index);
  split.h_odd = extract(split.odd_index);
  return split;
}

double expectation_number(const std::vector<double>& state,
                          const Truncation& t) {
  double v = 0.0;
  for (int s : {+1, -1})
    for (int n = 0; n <= t.n_max; ++n) {
      const double c = state[basis_index(t, s, n)];
      v += n * c * c;
    }
  return v;
}

double expectation_sx(const std::vector<double>& state, const Truncation& t) {
  double v = 0.0;
  for (int n = 0; n <= t.n_max; ++n) {
    const double cu = state[basis_index(t, +1, n)];
    const double cd = state[basis_index(t, -1, n)];
    v += cu * cu - cd * cd;
  }
  return v;
}

double expectation_aa(const std::vector<double>& state, const Truncation& t) {
  double v = 0.0;
  for (int s : {+1, -1})
    for (int n = 0; n + 2 <= t.n_max; ++n) {
      const double c0 = state[basis_index(t, s, n)];
      const double c2 = state[basis_index(t, s, n + 2)];
      v += c0 * c2 * std::sqrt(double(n + 1) * double(n + 2));
    }
  return v;
}

double parity_expectation(const std::vector<double>& state,
                          const Truncation& t) {
  double v = 0.0;
  for (int s : {+1, -1})
    for (int n = 0; n <= t.n_max; ++n) {
      const double c = state[basis_index(t, s, n)];
      v += s * ((n % 2 == 0) ? 1.0 : -1.0) * c * c;
    }
  return v;
}

}  // namespace rabistark
