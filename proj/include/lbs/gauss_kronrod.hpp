#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "lbs/errors.hpp"

namespace lbs {

/// Adaptive 7/15-point Gauss-Kronrod integration of a vector-valued
/// integrand. F maps double -> std::array<double, D>. Panels are bisected
/// until the Kronrod-Gauss difference (max norm) falls below
/// max(abs_tol * width / total_width, rel_tol * |panel estimate|).
template <std::size_t D>
class GaussKronrod15 {
 public:
  using Vec = std::array<double, D>;

  GaussKronrod15(double abs_tol, double rel_tol, int max_depth = 48)
      : abs_tol_(abs_tol), rel_tol_(rel_tol), max_depth_(max_depth) {}

  /// Integrates over consecutive panels [b_0, b_1], [b_1, b_2], ...
  template <class F>
  Vec integrate(F&& f, const std::vector<double>& breakpoints) const {
    Vec total{};
    if (breakpoints.size() < 2) return total;
    const double span = breakpoints.back() - breakpoints.front();
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
      const Vec part = adapt(f, breakpoints[i], breakpoints[i + 1], span, 0);
      for (std::size_t d = 0; d < D; ++d) total[d] += part[d];
    }
    return total;
  }

 private:
  static constexpr std::array<double, 8> xgk{
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr std::array<double, 8> wgk{
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  // Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5 and the centre.
  static constexpr std::array<double, 4> wg{
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

  template <class F>
  Vec adapt(F& f, double a, double b, double span, int depth) const {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    Vec kronrod{};
    Vec gauss{};
    const Vec fc = f(centre);
    for (std::size_t d = 0; d < D; ++d) {
      kronrod[d] = wgk[7] * fc[d];
      gauss[d] = wg[3] * fc[d];
    }
    for (int j = 0; j < 7; ++j) {
      const double dx = half * xgk[j];
      const Vec f1 = f(centre - dx);
      const Vec f2 = f(centre + dx);
      for (std::size_t d = 0; d < D; ++d) {
        kronrod[d] += wgk[j] * (f1[d] + f2[d]);
        if (j % 2 == 1) gauss[d] += wg[j / 2] * (f1[d] + f2[d]);
      }
    }
    double err = 0.0;
    double mag = 0.0;
    for (std::size_t d = 0; d < D; ++d) {
      kronrod[d] *= half;
      gauss[d] *= half;
      if (!std::isfinite(kronrod[d])) throw NumericError("GaussKronrod15: non-finite integrand");
      err = std::max(err, std::abs(kronrod[d] - gauss[d]));
      mag = std::max(mag, std::abs(kronrod[d]));
    }
    const double tol = std::max(abs_tol_ * (b - a) / span, rel_tol_ * mag);
    if (err <= tol || depth >= max_depth_) return kronrod;
    const Vec left = adapt(f, a, centre, span, depth + 1);
    const Vec right = adapt(f, centre, b, span, depth + 1);
    Vec out{};
    for (std::size_t d = 0; d < D; ++d) out[d] = left[d] + right[d];
    return out;
  }

  double abs_tol_;
  double rel_tol_;
  int max_depth_;
};

}  // namespace lbs
