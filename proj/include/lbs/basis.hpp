#pragma once

#include <array>
#include <cmath>
#include <string_view>

#include "lbs/dispersion.hpp"

namespace lbs {

/// The four orthonormal functions spanning the range of the interaction at
/// K = 0. S1, S2 live in the fully symmetric sector, A12 in the sector odd
/// under p1 <-> p2, MIX in the mixed-symmetry sector.
enum class BasisTag { s1, s2, a12, mix };

inline constexpr std::array<BasisTag, 4> all_basis_tags{BasisTag::s1, BasisTag::s2,
                                                        BasisTag::a12, BasisTag::mix};

inline constexpr std::string_view to_string(BasisTag t) noexcept {
  switch (t) {
    case BasisTag::s1: return "S1";
    case BasisTag::s2: return "S2";
    case BasisTag::a12: return "A12";
    case BasisTag::mix: return "MIX";
  }
  return "?";
}

namespace basis_norm {
inline const double pi3 = pi * pi * pi;
inline const double s1 = 1.0 / std::sqrt(8.0 * pi3);
inline const double s2 = 1.0 / std::sqrt(12.0 * pi3);
inline const double a12 = 1.0 / std::sqrt(8.0 * pi3);
inline const double mix = 1.0 / std::sqrt(24.0 * pi3);
}  // namespace basis_norm

/// Basis function evaluated from the cosines of the momentum components.
inline double basis_value_cos(BasisTag t, double c1, double c2, double c3) noexcept {
  switch (t) {
    case BasisTag::s1: return basis_norm::s1;
    case BasisTag::s2: return basis_norm::s2 * (c1 + c2 + c3);
    case BasisTag::a12: return basis_norm::a12 * (c1 - c2);
    case BasisTag::mix: return basis_norm::mix * (c1 + c2 - 2.0 * c3);
  }
  return 0.0;
}

inline double basis_value(BasisTag t, const MomentumPoint& p) noexcept {
  return basis_value_cos(t, std::cos(p[0]), std::cos(p[1]), std::cos(p[2]));
}

}  // namespace lbs
