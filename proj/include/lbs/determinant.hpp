#pragma once

#include <cmath>

#include "lbs/a_functions.hpp"

namespace lbs {

/// Interaction strengths: mu1 on-site, mu2 nearest-neighbour.
struct CouplingPair {
  double mu1 = 0.0;
  double mu2 = 0.0;

  CouplingPair operator-() const noexcept { return {-mu1, -mu2}; }
  friend bool operator==(const CouplingPair&, const CouplingPair&) = default;
};

/// Values of the a-functions at the band edge z = 0 and the structural
/// constants of the coupling-plane geometry derived from them.
struct BandEdgeConstants {
  AFunctions at_edge;   ///< a_ij(0), a_a12(0)
  double mu0 = 0.0;     ///< 24 a11(0) / (12 a11(0) - 1)
  double mu2_crit = 0.0;  ///< 1 / a_a12(0)
};

inline BandEdgeConstants compute_band_edge_constants() {
  BandEdgeConstants k;
  k.at_edge = bessel_a_functions(0.0);
  const double a = k.at_edge.a11;
  k.mu0 = 24.0 * a / (12.0 * a - 1.0);
  k.mu2_crit = 1.0 / k.at_edge.a_a12;
  return k;
}

/// Process-wide band-edge constants, computed once on first use.
inline const BandEdgeConstants& band_edge_constants() {
  static const BandEdgeConstants k = compute_band_edge_constants();
  return k;
}

/// Evaluator shared by the convenience overloads below.
inline const AFunctionEvaluator& default_evaluator() {
  static const AFunctionEvaluator e;
  return e;
}

/// Perturbation determinant of the symmetric sector from precomputed
/// a-functions.
inline double delta_s(const CouplingPair& c, const AFunctions& a) noexcept {
  return (1.0 + c.mu1 * a.a11) * (1.0 + c.mu2 * a.a22) - c.mu1 * c.mu2 * a.a12 * a.a12;
}

inline double delta_s(const CouplingPair& c, double z,
                      const AFunctionEvaluator& eval = default_evaluator()) {
  return delta_s(c, eval(z));
}

/// Perturbation determinant of the a12 (and, by unitary equivalence, mix)
/// sector.
inline double delta_a12(double mu2, const AFunctions& a) noexcept { return 1.0 + mu2 * a.a_a12; }

inline double delta_a12(double mu2, double z,
                        const AFunctionEvaluator& eval = default_evaluator()) {
  return delta_a12(mu2, eval(z));
}

/// Limits of the symmetric-sector determinant at the band edges together
/// with the constants that parametrize their zero sets.
struct ThresholdPolynomials {
  double a_minus = 0.0;  ///< lim_{z -> 0-} delta_s
  double a_plus = 0.0;   ///< lim_{z -> 24+} delta_s
  double mu0 = 0.0;
  double mu2_crit = 0.0;
};

/// Factored form  A-/+ = ((12 a11(0) - 1) / 24) ((mu2 +/- mu0)(mu1 +/- 12) - 24).
inline ThresholdPolynomials threshold_polys(const CouplingPair& c) {
  const auto& k = band_edge_constants();
  const double scale = (12.0 * k.at_edge.a11 - 1.0) / 24.0;
  ThresholdPolynomials t;
  t.a_minus = scale * ((c.mu2 + k.mu0) * (c.mu1 + 12.0) - 24.0);
  t.a_plus = scale * ((c.mu2 - k.mu0) * (c.mu1 - 12.0) - 24.0);
  t.mu0 = k.mu0;
  t.mu2_crit = k.mu2_crit;
  return t;
}

enum class Side { below, above };

inline constexpr std::string_view to_string(Side s) noexcept {
  return s == Side::below ? "below" : "above";
}

/// Expanded form 1 -/+ (a11 mu1 + a22 mu2) + (a11 a22 - a12^2) mu1 mu2 with
/// a_ij = a_ij(0); the upper sign belongs to the edge below the band.
inline double threshold_poly_expanded(const CouplingPair& c, Side side) {
  const AFunctions& a = band_edge_constants().at_edge;
  const double s = side == Side::below ? 1.0 : -1.0;
  return 1.0 + s * (a.a11 * c.mu1 + a.a22 * c.mu2) + (a.a11 * a.a22 - a.a12 * a.a12) * c.mu1 * c.mu2;
}

/// Edge limit of the a12-sector determinant: 1 +/- mu2 a_a12(0).
inline double threshold_a12(double mu2, Side side) {
  const double a = band_edge_constants().at_edge.a_a12;
  return side == Side::below ? 1.0 + mu2 * a : 1.0 - mu2 * a;
}

}  // namespace lbs
