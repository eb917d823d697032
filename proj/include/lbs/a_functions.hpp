#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "lbs/basis.hpp"
#include "lbs/bessel.hpp"
#include "lbs/dispersion.hpp"
#include "lbs/errors.hpp"
#include "lbs/gauss_kronrod.hpp"
#include "lbs/torus_grid.hpp"

namespace lbs {

/// Resolvent integrals of the basis functions at one spectral parameter z:
///   a_ij(z) = int alpha_i alpha_j / (E_0 - z) dp   (symmetric sector),
///   a_a12(z) = int alpha_a12^2 / (E_0 - z) dp.
struct AFunctions {
  double a11 = 0.0;
  double a12 = 0.0;
  double a22 = 0.0;
  double a_a12 = 0.0;
};

enum class AKind { a11, a12, a22, a_a12 };

inline constexpr std::string_view to_string(AKind k) noexcept {
  switch (k) {
    case AKind::a11: return "a11";
    case AKind::a12: return "a12";
    case AKind::a22: return "a22";
    case AKind::a_a12: return "a_a12";
  }
  return "?";
}

inline double select(const AFunctions& a, AKind k) noexcept {
  switch (k) {
    case AKind::a11: return a.a11;
    case AKind::a12: return a.a12;
    case AKind::a22: return a.a22;
    case AKind::a_a12: return a.a_a12;
  }
  return 0.0;
}

/// Image of the a-functions under z -> 24 - z. The shift p -> p + (pi,pi,pi)
/// flips E_0 -> 24 - E_0 and alpha_2 -> -alpha_2, hence the sign pattern.
inline AFunctions reflect(const AFunctions& a) noexcept {
  return {-a.a11, a.a12, -a.a22, -a.a_a12};
}

inline bool inside_band_zero_k(double z) noexcept { return z >= 0.0 && z <= 24.0; }

namespace detail {
inline void require_outside_band(double z, const char* who) {
  if (!std::isfinite(z)) throw DomainError(std::string(who) + ": z must be finite");
  if (inside_band_zero_k(z)) {
    throw DomainError(std::string(who) + ": z = " + std::to_string(z) +
                      " lies in the essential spectrum [0, 24]");
  }
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Torus quadrature path

/// int alpha_i alpha_j / (E_0 - z) dp by the folded midpoint rule. No
/// reflection is applied; z only has to avoid the grid values of E_0.
inline double resolvent_integral(BasisTag i, BasisTag j, double z, const QuadratureGrid& grid) {
  return integrate_torus_even(
      [&](const MomentumPoint& p) {
        const double c1 = std::cos(p[0]);
        const double c2 = std::cos(p[1]);
        const double c3 = std::cos(p[2]);
        return basis_value_cos(i, c1, c2, c3) * basis_value_cos(j, c1, c2, c3) /
               (dispersion_zero_k(c1, c2, c3) - z);
      },
      grid);
}

/// All four a-functions in one sweep of the grid. For z > 24 the values are
/// obtained from 24 - z through the reflection identities.
inline AFunctions torus_a_functions(double z, const QuadratureGrid& grid) {
  detail::require_outside_band(z, "torus_a_functions");
  if (z > 24.0) return reflect(torus_a_functions(24.0 - z, grid));

  const auto& c = grid.positive_cos();
  const std::size_t m = c.size();
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, sa = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double c12 = c[i] + c[j];
      const double d12 = c[i] - c[j];
      double r0 = 0.0, r1 = 0.0, r2 = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        const double s = c12 + c[k];
        const double inv = 1.0 / (12.0 - 4.0 * s - z);
        r0 += inv;
        r1 += s * inv;
        r2 += s * s * inv;
      }
      s0 += r0;
      s1 += r1;
      s2 += r2;
      sa += d12 * d12 * r0;
    }
  }
  const double w = 8.0 * grid.weight();
  const double pi3 = basis_norm::pi3;
  return {w * s0 / (8.0 * pi3), w * s1 / (std::sqrt(96.0) * pi3), w * s2 / (12.0 * pi3),
          w * sa / (8.0 * pi3)};
}

// ---------------------------------------------------------------------------
// Laplace-Bessel path
//
// With c = 3 - z/4,  1/(E_0 - z) = (1/4) int_0^inf e^{-c t} e^{t sum cos p_i} dt,
// and the angular averages of e^{t cos p} cos(m p) are I_m(t). Every
// a-function is then a combination of
//   G_{m1 m2 m3}(c) = int_0^inf e^{-c t} I_m1(t) I_m2(t) I_m3(t) dt.

namespace detail {

/// E_s(x) = int_1^inf e^{-x u} u^{-s} du for s = 1/2 + n, n = 0..count-1.
inline std::vector<double> half_integer_expint(double x, int count) {
  std::vector<double> e(count);
  if (x <= 0.0) {
    // E_s(0) = 1 / (s - 1), finite for s > 1 only.
    for (int n = 0; n < count; ++n) e[n] = n == 0 ? INFINITY : 1.0 / (n - 0.5);
    return e;
  }
  const double ex = std::exp(-x);
  e[0] = std::sqrt(pi / x) * std::erfc(std::sqrt(x));
  for (int n = 1; n < count; ++n) {
    const double s = n - 0.5;  // E_{s+1} from E_s
    e[n] = (ex - x * e[n - 1]) / s;
  }
  return e;
}

/// Products of three asymptotic series, truncated at bessel::asymptotic_terms.
inline std::array<double, bessel::asymptotic_terms> product_series(int m1, int m2, int m3) {
  constexpr int K = bessel::asymptotic_terms;
  const auto a = bessel::asymptotic_coefficients(m1);
  const auto b = bessel::asymptotic_coefficients(m2);
  const auto c = bessel::asymptotic_coefficients(m3);
  std::array<double, K> ab{};
  for (int i = 0; i < K; ++i)
    for (int j = 0; i + j < K; ++j) ab[i + j] += a[i] * b[j];
  std::array<double, K> abc{};
  for (int i = 0; i < K; ++i)
    for (int j = 0; i + j < K; ++j) abc[i + j] += ab[i] * c[j];
  return abc;
}

inline constexpr double laplace_cutoff = 40.0;

}  // namespace detail

/// (G_000, G_100, G_200, G_110) at c = 3 + excess, excess >= 0, computed
/// with exponentially scaled Bessel functions. The integral runs on [0, T]
/// by adaptive Gauss-Kronrod; for small excess the remainder [T, inf) is
/// integrated term by term from the large-t expansion.
inline std::array<double, 4> laplace_bessel_moments(double excess) {
  if (!(excess >= 0.0) || !std::isfinite(excess))
    throw DomainError("laplace_bessel_moments: excess must be finite and >= 0");

  const bool needs_tail = excess < 1.0;
  const double upper = needs_tail ? detail::laplace_cutoff : detail::laplace_cutoff / excess;

  std::vector<double> breaks{0.0};
  for (int k = 12; k >= 0; --k) breaks.push_back(upper * std::ldexp(1.0, -k));
  if (bessel::series_limit < upper) breaks.push_back(bessel::series_limit);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const GaussKronrod15<4> gk(1e-15, 1e-14);
  auto body = gk.integrate(
      [excess](double t) -> std::array<double, 4> {
        const auto s = bessel::scaled_i012(t);
        const double e = std::exp(-excess * t);
        const double s00 = s[0] * s[0];
        return {e * s00 * s[0], e * s00 * s[1], e * s00 * s[2], e * s[1] * s[1] * s[0]};
      },
      breaks);

  if (needs_tail) {
    constexpr int K = bessel::asymptotic_terms;
    const double t = upper;
    const auto en = detail::half_integer_expint(excess * t, K + 1);
    // int_T^inf e^{-excess t} t^{-(n + 3/2)} dt = T^{-(n + 1/2)} E_{n + 3/2}(excess T)
    std::array<double, K> moments{};
    for (int n = 0; n < K; ++n) moments[n] = std::pow(t, -(n + 0.5)) * en[n + 1];
    const double pref = std::pow(two_pi, -1.5);
    const std::array<std::array<int, 3>, 4> orders{{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {1, 1, 0}}};
    for (std::size_t q = 0; q < 4; ++q) {
      const auto b = detail::product_series(orders[q][0], orders[q][1], orders[q][2]);
      double tail = 0.0;
      for (int n = 0; n < K; ++n) tail += b[n] * moments[n];
      body[q] += pref * tail;
    }
  }
  return body;
}

/// All four a-functions by the Laplace-Bessel representation, z <= 0
/// (z = 0 gives the band-edge limits). Shares no code with the torus path.
inline AFunctions bessel_a_functions(double z) {
  if (!std::isfinite(z) || z > 0.0)
    throw DomainError("bessel_a_functions: requires z <= 0, got " + std::to_string(z));
  const auto g = laplace_bessel_moments(-0.25 * z);
  const double g000 = g[0], g100 = g[1], g200 = g[2], g110 = g[3];
  return {0.25 * g000, 1.5 / std::sqrt(6.0) * g100, 0.25 * (g000 + g200) + g110,
          0.25 * (g000 + g200 - 2.0 * g110)};
}

inline double a_bessel(AKind kind, double z) { return select(bessel_a_functions(z), kind); }

// ---------------------------------------------------------------------------
// Dispatch

enum class EvaluationPath { torus, bessel };

inline constexpr double default_edge_delta = 0.4;
inline constexpr int default_quadrature_n = 64;

/// Evaluates the a-functions for any z outside [0, 24]: torus quadrature
/// at distance >= edge_delta from the band, the Laplace-Bessel path closer
/// in, and the reflection identities above the band.
class AFunctionEvaluator {
 public:
  explicit AFunctionEvaluator(int quadrature_n = default_quadrature_n,
                              double edge_delta = default_edge_delta)
      : grid_(quadrature_n), edge_delta_(edge_delta) {
    if (!(edge_delta > 0.0) || !std::isfinite(edge_delta))
      throw PreconditionError("AFunctionEvaluator: edge_delta must be positive");
  }

  const QuadratureGrid& grid() const noexcept { return grid_; }
  double edge_delta() const noexcept { return edge_delta_; }

  EvaluationPath path_for(double z) const noexcept {
    const double below = z > 24.0 ? 24.0 - z : z;
    return below <= -edge_delta_ ? EvaluationPath::torus : EvaluationPath::bessel;
  }

  AFunctions operator()(double z) const {
    detail::require_outside_band(z, "AFunctionEvaluator");
    if (z > 24.0) return reflect((*this)(24.0 - z));
    return path_for(z) == EvaluationPath::torus ? torus_a_functions(z, grid_)
                                                : bessel_a_functions(z);
  }

 private:
  QuadratureGrid grid_;
  double edge_delta_;
};

/// a^s_ij(z), i, j in {1, 2}.
inline double a_s(int i, int j, double z, const AFunctionEvaluator& eval) {
  if (i < 1 || i > 2 || j < 1 || j > 2) throw PreconditionError("a_s: indices must be 1 or 2");
  const AFunctions a = eval(z);
  if (i == 1 && j == 1) return a.a11;
  if (i == 2 && j == 2) return a.a22;
  return a.a12;
}

inline double a_a12(double z, const AFunctionEvaluator& eval) { return eval(z).a_a12; }

}  // namespace lbs
