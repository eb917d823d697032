#pragma once

#include <array>
#include <cmath>

#include "lbs/dispersion.hpp"
#include "lbs/errors.hpp"

namespace lbs::bessel {

/// Switch point between the power series and the asymptotic expansion.
inline constexpr double series_limit = 25.0;
/// Terms kept in the large-argument expansion.
inline constexpr int asymptotic_terms = 14;

/// Coefficients c_k, k < asymptotic_terms, of
///   e^{-t} I_m(t) ~ (2 pi t)^{-1/2} sum_k c_k t^{-k}.
inline std::array<double, asymptotic_terms> asymptotic_coefficients(int m) noexcept {
  std::array<double, asymptotic_terms> c{};
  const double mu = 4.0 * m * m;
  double a = 1.0;
  c[0] = 1.0;
  for (int k = 1; k < asymptotic_terms; ++k) {
    const double odd = 2.0 * k - 1.0;
    a *= (mu - odd * odd) / (8.0 * k);
    c[k] = (k % 2 == 0) ? a : -a;
  }
  return c;
}

/// e^{-t} I_m(t) for integer m >= 0 and t >= 0.
inline double scaled_i(int m, double t) {
  if (m < 0) throw DomainError("bessel::scaled_i: negative order");
  if (t < 0.0 || !std::isfinite(t)) throw DomainError("bessel::scaled_i: argument must be >= 0");
  if (t <= series_limit) {
    const double half = 0.5 * t;
    const double q = half * half;
    double term = 1.0;
    for (int j = 1; j <= m; ++j) term *= half / j;
    double sum = term;
    for (int k = 0; k < 500; ++k) {
      term *= q / ((k + 1.0) * (k + 1.0 + m));
      sum += term;
      if (term <= 1e-17 * sum) break;
    }
    return std::exp(-t) * sum;
  }
  const auto c = asymptotic_coefficients(m);
  const double x = 1.0 / t;
  double s = 0.0;
  for (int k = asymptotic_terms - 1; k >= 0; --k) s = s * x + c[k];
  return s / std::sqrt(two_pi * t);
}

/// e^{-t} (I_0(t), I_1(t), I_2(t)).
inline std::array<double, 3> scaled_i012(double t) {
  return {scaled_i(0, t), scaled_i(1, t), scaled_i(2, t)};
}

}  // namespace lbs::bessel
