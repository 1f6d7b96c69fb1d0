#include "effnum/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace effnum {
namespace {

constexpr int kMaxQlIterations = 60;

// Implicit QL with Wilkinson-type shifts on a symmetric tridiagonal matrix.
// d: diagonal (overwritten by eigenvalues). e: e[i] couples i and i+1,
// e[n-1] unused (destroyed). v: rows are the current basis vectors; on exit
// row i is the eigenvector of d[i].
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e,
                    std::vector<std::vector<double>>& v) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return;
  e[n - 1] = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (iter++ == kMaxQlIterations) {
        throw std::runtime_error("eigensolve: QL iteration did not converge");
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      int i;
      for (i = m - 1; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        e[i + 1] = (r = std::hypot(f, g));
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        d[i + 1] = g + (p = s * r);
        g = c * r - b;
        auto& lo = v[i];
        auto& hi = v[i + 1];
        for (std::size_t k = 0; k < lo.size(); ++k) {
          f = hi[k];
          hi[k] = s * lo[k] + c * f;
          lo[k] = c * lo[k] - s * f;
        }
      }
      if (r == 0.0 && i >= l) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
}

EigenSystem sorted_system(std::vector<double> d, std::vector<std::vector<double>> v) {
  std::vector<std::size_t> order(d.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&d](std::size_t x, std::size_t y) { return d[x] < d[y]; });
  EigenSystem es;
  es.energies.reserve(d.size());
  es.vectors.reserve(d.size());
  for (std::size_t k : order) {
    es.energies.push_back(d[k]);
    es.vectors.push_back(std::move(v[k]));
  }
  return es;
}

}  // namespace

std::vector<double> SymmetricMatrix::apply(std::span<const double> x) const {
  if (x.size() != n_) throw std::invalid_argument("SymmetricMatrix::apply: size mismatch");
  std::vector<double> y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += a_[i * n_ + j] * x[j];
    y[i] = s;
  }
  return y;
}

EigenSystem eigensolve_tridiagonal(std::span<const double> diagonal,
                                   std::span<const double> off_diagonal) {
  const std::size_t n = diagonal.size();
  if (n == 0) return {};
  if (off_diagonal.size() + 1 != n) {
    throw std::invalid_argument("eigensolve_tridiagonal: off-diagonal must have n - 1 entries");
  }
  std::vector<double> d(diagonal.begin(), diagonal.end());
  std::vector<double> e(off_diagonal.begin(), off_diagonal.end());
  e.push_back(0.0);
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
  tridiagonal_ql(d, e, v);
  return sorted_system(std::move(d), std::move(v));
}

EigenSystem eigensolve(const SymmetricMatrix& input) {
  const std::size_t n = input.size();
  if (n == 0) return {};
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(input(i, j)));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(input(i, j) - input(j, i)) > 1e-12 * std::max(scale, 1.0)) {
        throw std::invalid_argument("eigensolve: matrix is not symmetric");
      }
    }
  }

  // Householder reduction to tridiagonal form; `a` ends up holding the
  // accumulated orthogonal transformation Q (columns).
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = input(i, j);
  }
  std::vector<double> d(n, 0.0);
  std::vector<double> e(n, 0.0);
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double sc = 0.0;
      for (std::size_t k = 0; k <= l; ++k) sc += std::abs(a[i][k]);
      if (sc == 0.0) {
        e[i] = a[i][l];
      } else {
        for (std::size_t k = 0; k <= l; ++k) {
          a[i][k] /= sc;
          h += a[i][k] * a[i][k];
        }
        double f = a[i][l];
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = sc * g;
        h -= f * g;
        a[i][l] = f - g;
        f = 0.0;
        for (std::size_t j = 0; j <= l; ++j) {
          a[j][i] = a[i][j] / h;
          g = 0.0;
          for (std::size_t k = 0; k <= j; ++k) g += a[j][k] * a[i][k];
          for (std::size_t k = j + 1; k <= l; ++k) g += a[k][j] * a[i][k];
          e[j] = g / h;
          f += e[j] * a[i][j];
        }
        const double hh = f / (h + h);
        for (std::size_t j = 0; j <= l; ++j) {
          f = a[i][j];
          e[j] = g = e[j] - hh * f;
          for (std::size_t k = 0; k <= j; ++k) a[j][k] -= (f * e[k] + g * a[i][k]);
        }
      }
    } else {
      e[i] = a[i][l];
    }
    d[i] = h;
  }
  d[0] = 0.0;
  e[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i] != 0.0) {
      for (std::size_t j = 0; j < i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k < i; ++k) g += a[i][k] * a[k][j];
        for (std::size_t k = 0; k < i; ++k) a[k][j] -= g * a[k][i];
      }
    }
    d[i] = a[i][i];
    a[i][i] = 1.0;
    for (std::size_t j = 0; j < i; ++j) a[j][i] = a[i][j] = 0.0;
  }

  // e[i] couples i-1 and i; the QL routine wants e[i] coupling i and i+1.
  std::vector<double> off(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) off[i - 1] = e[i];

  std::vector<std::vector<double>> v(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) v[i][k] = a[k][i];
  }
  tridiagonal_ql(d, off, v);
  return sorted_system(std::move(d), std::move(v));
}

double max_residual(const SymmetricMatrix& a, const EigenSystem& es) {
  double worst = 0.0;
  for (std::size_t k = 0; k < es.energies.size(); ++k) {
    const auto av = a.apply(es.vectors[k]);
    double s = 0.0;
    for (std::size_t i = 0; i < av.size(); ++i) {
      const double r = av[i] - es.energies[k] * es.vectors[k][i];
      s += r * r;
    }
    worst = std::max(worst, std::sqrt(s));
  }
  return worst;
}

}  // namespace effnum
