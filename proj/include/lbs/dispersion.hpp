#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace lbs {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Maps an angle to its canonical representative in [-pi, pi).
inline double normalize_angle(double x) noexcept {
  double r = std::fmod(x + pi, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r = 0.0;
  return r - pi;
}

namespace detail {

/// Point of the three-torus with components normalized at construction.
template <class Tag>
class TorusPoint {
 public:
  constexpr TorusPoint() = default;
  TorusPoint(double x1, double x2, double x3) noexcept
      : c_{normalize_angle(x1), normalize_angle(x2), normalize_angle(x3)} {}
  explicit TorusPoint(const std::array<double, 3>& x) noexcept
      : TorusPoint(x[0], x[1], x[2]) {}

  double operator[](std::size_t i) const noexcept { return c_[i]; }
  const std::array<double, 3>& components() const noexcept { return c_; }

  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;

 private:
  std::array<double, 3> c_{0.0, 0.0, 0.0};
};

struct QuasimomentumTag {};
struct MomentumTag {};

}  // namespace detail

/// Total quasi-momentum K of the pair.
using Quasimomentum = detail::TorusPoint<detail::QuasimomentumTag>;
/// Relative momentum p.
using MomentumPoint = detail::TorusPoint<detail::MomentumTag>;

/// Essential spectrum [e_min, e_max] of a fiber operator.
struct Band {
  double e_min = 0.0;
  double e_max = 0.0;

  bool contains(double z) const noexcept { return z >= e_min && z <= e_max; }
  double width() const noexcept { return e_max - e_min; }
};

/// Two-particle dispersion E_K(p) = 4 sum_i (1 - cos(K_i/2) cos p_i).
inline double dispersion(const Quasimomentum& k, const MomentumPoint& p) noexcept {
  double e = 0.0;
  for (std::size_t i = 0; i < 3; ++i) e += 1.0 - std::cos(0.5 * k[i]) * std::cos(p[i]);
  return 4.0 * e;
}

/// Dispersion at K = 0 from precomputed cosines of p.
inline double dispersion_zero_k(double cos1, double cos2, double cos3) noexcept {
  return 12.0 - 4.0 * (cos1 + cos2 + cos3);
}

/// Range of E_K. cos(K_i/2) >= 0 on [-pi, pi), so the extrema sit at p = 0
/// and p = (pi, pi, pi).
inline Band band_edges(const Quasimomentum& k) noexcept {
  double lo = 0.0;
  double hi = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double c = std::cos(0.5 * k[i]);
    lo += 1.0 - c;
    hi += 1.0 + c;
  }
  return {4.0 * lo, 4.0 * hi};
}

/// p -> p + (pi, pi, pi). Maps E_0 to 24 - E_0.
inline MomentumPoint reflect_momentum(const MomentumPoint& p) noexcept {
  return {p[0] + pi, p[1] + pi, p[2] + pi};
}

}  // namespace lbs
