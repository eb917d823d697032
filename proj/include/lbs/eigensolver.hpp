#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "lbs/errors.hpp"

namespace lbs {

/// Dense symmetric matrix, row-major storage.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

  /// Copies the lower triangle onto the upper one.
  void symmetrize_from_lower() noexcept {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < i; ++j) (*this)(j, i) = (*this)(i, j);
  }

  double frobenius_norm() const noexcept {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
  }

  bool is_symmetric() const noexcept {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  std::vector<double> multiply(const std::vector<double>& x) const {
    std::vector<double> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      double s = 0.0;
      const double* row = &data_[i * n_];
      for (std::size_t j = 0; j < n_; ++j) s += row[j] * x[j];
      y[i] = s;
    }
    return y;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

struct Tridiagonal {
  std::vector<double> diagonal;
  std::vector<double> off;  ///< off[i] couples i and i + 1; size n - 1
};

/// Householder reduction to tridiagonal form (eigenvalues only; the
/// transformations are not accumulated). The argument is overwritten.
inline Tridiagonal householder_tridiagonalize(SymmetricMatrix a) {
  const std::size_t n = a.size();
  std::vector<double> d(n, 0.0), e(n, 0.0);
  for (std::size_t i = n; i-- > 1;) {
    const std::size_t l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (std::size_t k = 0; k <= l; ++k) scale += std::abs(a(i, k));
      if (scale == 0.0) {
        e[i] = a(i, l);
      } else {
        for (std::size_t k = 0; k <= l; ++k) {
          a(i, k) /= scale;
          h += a(i, k) * a(i, k);
        }
        double f = a(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        a(i, l) = f - g;
        f = 0.0;
        for (std::size_t j = 0; j <= l; ++j) {
          g = 0.0;
          for (std::size_t k = 0; k <= j; ++k) g += a(j, k) * a(i, k);
          for (std::size_t k = j + 1; k <= l; ++k) g += a(k, j) * a(i, k);
          e[j] = g / h;
          f += e[j] * a(i, j);
        }
        const double hh = f / (h + h);
        for (std::size_t j = 0; j <= l; ++j) {
          f = a(i, j);
          g = e[j] - hh * f;
          e[j] = g;
          for (std::size_t k = 0; k <= j; ++k) a(j, k) -= f * e[k] + g * a(i, k);
        }
      }
    } else {
      e[i] = a(i, l);
    }
    d[i] = h;
  }
  Tridiagonal t;
  t.diagonal.resize(n);
  for (std::size_t i = 0; i < n; ++i) t.diagonal[i] = a(i, i);
  t.off.assign(e.begin() + (n > 0 ? 1 : 0), e.end());
  return t;
}

inline constexpr int ql_iteration_cap = 60;

/// Eigenvalues of a symmetric tridiagonal matrix by the implicit QL method
/// with Wilkinson-type shifts. An off-diagonal element is deflated once it
/// is negligible relative to its diagonal neighbours or below abs_tol.
inline std::vector<double> tridiagonal_eigenvalues(Tridiagonal t, double abs_tol = 0.0) {
  const std::size_t n = t.diagonal.size();
  std::vector<double>& d = t.diagonal;
  std::vector<double> e(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = t.off[i];
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd || std::abs(e[m]) <= abs_tol) break;
      }
      if (m != l) {
        if (iter++ == ql_iteration_cap) {
          throw NumericError("tridiagonal_eigenvalues: no convergence after " +
                             std::to_string(ql_iteration_cap) + " iterations at index " +
                             std::to_string(l));
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

/// All eigenvalues, ascending. Deflation threshold 1e-11 ||A||_F.
inline std::vector<double> symmetric_eigenvalues(const SymmetricMatrix& a) {
  if (a.size() == 0) return {};
  return tridiagonal_eigenvalues(householder_tridiagonalize(a), 1e-11 * a.frobenius_norm());
}

}  // namespace lbs
