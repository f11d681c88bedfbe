#include "rabistark/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rabistark {

namespace detail {

namespace {

// Householder reduction to tridiagonal form. a (n x n, row-major) is
// overwritten with the accumulated orthogonal transform, d with the
// diagonal, e with the subdiagonal in e[1..n-1].
void tred2(int n, std::vector<double>& a, std::vector<double>& d,
           std::vector<double>& e) {
  for (int i = n - 1; i >= 1; --i) {
    const int l = i - 1;
    double h = 0.0, scale = 0.0;
    if (l > 0) {
      for (int k = 0; k <= l; ++k) scale += std::fabs(a[size_t(i) * n + k]);
      if (scale == 0.0) {
        e[i] = a[size_t(i) * n + l];
      } else {
        for (int k = 0; k <= l; ++k) {
          a[size_t(i) * n + k] /= scale;
          h += a[size_t(i) * n + k] * a[size_t(i) * n + k];
        }
        double f = a[size_t(i) * n + l];
        double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        a[size_t(i) * n + l] = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          a[size_t(j) * n + i] = a[size_t(i) * n + j] / h;
          g = 0.0;
          for (int k = 0; k <= j; ++k)
            g += a[size_t(j) * n + k] * a[size_t(i) * n + k];
          for (int k = j + 1; k <= l; ++k)
            g += a[size_t(k) * n + j] * a[size_t(i) * n + k];
          e[j] = g / h;
          f += e[j] * a[size_t(i) * n + j];
        }
        const double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) {
          f = a[size_t(i) * n + j];
          e[j] = g = e[j] - hh * f;
          for (int k = 0; k <= j; ++k)
            a[size_t(j) * n + k] -= f * e[k] + g * a[size_t(i) * n + k];
        }
      }
    } else {
      e[i] = a[size_t(i) * n + l];
    }
    d[i] = h;
  }
  d[0] = 0.0;
  e[0] = 0.0;
  for (int i = 0; i < n; ++i) {
    const int l = i - 1;
    if (d[i] != 0.0) {
      for (int j = 0; j <= l; ++j) {
        double g = 0.0;
        for (int k = 0; k <= l; ++k)
          g += a[size_t(i) * n + k] * a[size_t(k) * n + j];
        for (int k = 0; k <= l; ++k)
          a[size_t(k) * n + j] -= g * a[size_t(k) * n + i];
      }
    }
    d[i] = a[size_t(i) * n + i];
    a[size_t(i) * n + i] = 1.0;
    for (int j = 0; j <= l; ++j)
      a[size_t(j) * n + i] = a[size_t(i) * n + j] = 0.0;
  }
}

// Implicit-shift QL on the tridiagonal (d, e); z accumulates eigenvectors.
void tql2(int n, std::vector<double>& d, std::vector<double>& e,
          std::vector<double>& z) {
  constexpr int max_iter = 50;
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= std::numeric_limits<double>::epsilon() * dd)
          break;
      }
      if (m != l) {
        if (iter++ == max_iter)
          throw Error(errc::convergence_failure,
                      "QL iteration limit exceeded");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i = m - 1;
        for (; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          e[i + 1] = r = std::hypot(f, g);
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (int k = 0; k < n; ++k) {
            f = z[size_t(k) * n + i + 1];
            z[size_t(k) * n + i + 1] = s * z[size_t(k) * n + i] + c * f;
            z[size_t(k) * n + i] = c * z[size_t(k) * n + i] - s * f;
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

SymmetricEigen symmetric_eigen(int n, std::vector<double> a) {
  SymmetricEigen out;
  out.n = n;
  if (n <= 0) return out;
  std::vector<double> d(n), e(n);
  tred2(n, a, d, e);
  tql2(n, d, e, a);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return d[i] < d[j]; });

  out.values.resize(n);
  out.vectors.assign(size_t(n) * n, 0.0);
  for (int j = 0; j < n; ++j) {
    out.values[j] = d[order[j]];
    for (int i = 0; i < n; ++i)
      out.vectors[size_t(i) * n + j] = a[size_t(i) * n + order[j]];
  }
  return out;
}

}  // namespace detail

namespace {

double residual_norm(const OperatorMatrix& m, const std::vector<double>& v,
                     double ev) {
  double sum = 0.0;
  for (int i = 0; i < m.dim; ++i) {
    double r = -ev * v[i];
    const double* row = &m.entries[size_t(i) * m.dim];
    for (int j = 0; j < m.dim; ++j) r += row[j] * v[j];
    sum += r * r;
  }
  return std::sqrt(sum);
}

}  // namespace

SpectralResult eigendecompose(const OperatorMatrix& m, int k) {
  if (k < 1 || k > m.dim)
    throw Error(errc::domain_error, "k out of range");
  auto eig = detail::symmetric_eigen(m.dim, m.entries);

  SpectralResult res;
  res.energies.assign(eig.values.begin(), eig.values.begin() + k);
  res.states.resize(k);
  for (int j = 0; j < k; ++j) {
    res.states[j].resize(m.dim);
    for (int i = 0; i < m.dim; ++i)
      res.states[j][i] = eig.vectors[size_t(i) * m.dim + j];
  }
  res.residual = 0.0;
  for (int j = 0; j < k; ++j)
    res.residual =
        std::max(res.residual, residual_norm(m, res.states[j], res.energies[j]));
  if (res.residual > 1e-9 * std::max(1.0, std::fabs(res.energies[0])))
    throw Error(errc::convergence_failure, "residual bound violated");
  res.converged = true;
  return res;
}

SpectralResult ground_solve(const ModelParams& p0, const SolveOptions& opt) {
  const ModelParams p = validate(p0);
  const double tol = opt.tol > 0 ? opt.tol : 1e-10 * p.Omega;

  SpectralResult res;
  double prev_e0 = std::numeric_limits<double>::quiet_NaN();

  for (int n_max = opt.n_max_start; n_max <= opt.n_max_cap; n_max *= 2) {
    const Truncation trunc{n_max};
    const OperatorMatrix h = hamiltonian(p, trunc);
    const OperatorMatrix pm = parity(trunc);
    const SectorSplit split = sector_split(h, pm);

    const auto eig_even =
        detail::symmetric_eigen(split.h_even.dim, split.h_even.entries);
    const auto eig_odd =
        detail::symmetric_eigen(split.h_odd.dim, split.h_odd.entries);

    // Merge the two ascending sector spectra.
    const int k = std::min(opt.k, h.dim);
    struct Item { double e; int sector; int col; };
    std::vector<Item> merged;
    size_t ie = 0, io = 0;
    while (int(merged.size()) < k) {
      const bool take_even =
          io >= eig_odd.values.size() ||
          (ie < eig_even.values.size() && eig_even.values[ie] <= eig_odd.values[io]);
      if (take_even) {
        merged.push_back({eig_even.values[ie], 0, int(ie)});
        ++ie;
      } else {
        merged.push_back({eig_odd.values[io], 1, int(io)});
        ++io;
      }
    }

    res.energies.clear();
    res.states.assign(k, std::vector<double>(h.dim, 0.0));
    for (int j = 0; j < k; ++j) {
      const Item& it = merged[j];
      res.energies.push_back(it.e);
      const auto& eig = it.sector == 0 ? eig_even : eig_odd;
      const auto& idx = it.sector == 0 ? split.even_index : split.odd_index;
      for (size_t a = 0; a < idx.size(); ++a)
        res.states[j][idx[a]] = eig.vectors[a * idx.size() + it.col];
    }

    const double e0 = res.energies[0];
    res.ladder.emplace_back(n_max, e0);
    res.n_max_used = n_max;

    const double nbar = expectation_number(res.states[0], trunc);
    const bool occupancy_ok = nbar + 6.0 * std::sqrt(nbar + 1.0) < n_max;
    const bool energy_ok = std::isfinite(prev_e0) && std::fabs(e0 - prev_e0) < tol;
    prev_e0 = e0;

    if (occupancy_ok && energy_ok) {
      res.converged = true;
      res.residual = 0.0;
      for (int j = 0; j < k; ++j)
        res.residual = std::max(
            res.residual, residual_norm(h, res.states[j], res.energies[j]));
      if (res.residual > 1e-9 * std::max(1.0, std::fabs(e0)))
        throw Error(errc::convergence_failure, "residual bound violated");
      return res;
    }
  }
  throw Error(errc::truncation_ceiling,
              "no convergence below the n_max ceiling");
}

double excitation_gap(const SpectralResult& r) {
  if (r.energies.size() < 2)
    throw Error(errc::domain_error, "need at least two states for the gap");
  return r.energies[1] - r.energies[0];
}

}  // namespace rabistark
