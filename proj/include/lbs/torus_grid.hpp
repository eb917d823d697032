#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "lbs/dispersion.hpp"
#include "lbs/errors.hpp"

namespace lbs {

/// Midpoint-shifted uniform grid on [-pi, pi) with n nodes per axis.
///
/// Nodes sit at -pi + (k + 1/2) 2pi/n, so p = 0 is never a node and the
/// grid is mapped onto itself by p -> -p (and, for even n, by p -> p + pi).
/// The rule is exact for trigonometric polynomials of degree < n.
class QuadratureGrid {
 public:
  explicit QuadratureGrid(int n_per_axis) : n_(n_per_axis) {
    if (n_ < 4 || n_ % 2 != 0) {
      throw PreconditionError("QuadratureGrid: n_per_axis must be even and >= 4, got " +
                              std::to_string(n_));
    }
    const double h = two_pi / n_;
    nodes_.reserve(n_);
    for (int k = 0; k < n_; ++k) nodes_.push_back(-pi + (k + 0.5) * h);
    for (int k = n_ / 2; k < n_; ++k) {
      positive_nodes_.push_back(nodes_[k]);
      positive_cos_.push_back(std::cos(nodes_[k]));
    }
    weight_ = h * h * h;
  }

  int n_per_axis() const noexcept { return n_; }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  /// Nodes in (0, pi); one representative per {p, -p} pair.
  const std::vector<double>& positive_nodes() const noexcept { return positive_nodes_; }
  const std::vector<double>& positive_cos() const noexcept { return positive_cos_; }
  /// (2pi/n)^3, the weight of a single node.
  double weight() const noexcept { return weight_; }
  double total_weight() const noexcept { return weight_ * n_ * n_ * n_; }

 private:
  int n_;
  std::vector<double> nodes_;
  std::vector<double> positive_nodes_;
  std::vector<double> positive_cos_;
  double weight_ = 0.0;
};

namespace detail {
[[noreturn]] inline void throw_non_finite(int i, int j, int k, double p1, double p2, double p3,
                                          double v) {
  std::ostringstream os;
  os.precision(17);
  os << "integrate_torus: non-finite integrand value " << v << " at node (" << i << ',' << j
     << ',' << k << ") p = (" << p1 << ", " << p2 << ", " << p3 << ')';
  throw NumericError(os.str());
}
}  // namespace detail

/// Midpoint-rule approximation of the integral of f over the torus.
template <class F>
double integrate_torus(F&& f, const QuadratureGrid& grid) {
  const auto& x = grid.nodes();
  const int n = grid.n_per_axis();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const double v = f(MomentumPoint{x[i], x[j], x[k]});
        if (!std::isfinite(v)) detail::throw_non_finite(i, j, k, x[i], x[j], x[k], v);
        sum += v;
      }
    }
  }
  return grid.weight() * sum;
}

/// Same integral for an integrand even in each p_i: only the positive octant
/// is visited, with weight 8.
template <class F>
double integrate_torus_even(F&& f, const QuadratureGrid& grid) {
  const auto& x = grid.positive_nodes();
  const int m = static_cast<int>(x.size());
  double sum = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) {
        const double v = f(MomentumPoint{x[i], x[j], x[k]});
        if (!std::isfinite(v)) detail::throw_non_finite(i, j, k, x[i], x[j], x[k], v);
        sum += v;
      }
    }
  }
  return 8.0 * grid.weight() * sum;
}

}  // namespace lbs
