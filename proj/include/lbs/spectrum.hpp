#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lbs/determinant.hpp"

namespace lbs {

enum class Sector { s, a12, mix };

inline constexpr std::string_view to_string(Sector s) noexcept {
  switch (s) {
    case Sector::s: return "S";
    case Sector::a12: return "A12";
    case Sector::mix: return "MIX";
  }
  return "?";
}

/// Root search window on one side of the K = 0 band [0, 24]. The band edge
/// is the upper end for Side::below and the lower end for Side::above.
struct SearchInterval {
  double lo = 0.0;
  double hi = 0.0;
  Side side = Side::below;

  double edge() const noexcept { return side == Side::below ? hi : lo; }
  double length() const noexcept { return hi - lo; }
};

/// The interaction is a sum of orthogonal rank-one terms with weights
/// mu1, mu2, mu2, mu2, so ||V|| = max(|mu1|, |mu2|) and every eigenvalue
/// lies within ||V|| of the band.
inline SearchInterval search_interval(const CouplingPair& c, Side side) noexcept {
  const double reach = std::max(std::abs(c.mu1), std::abs(c.mu2)) + 1.0;
  if (side == Side::below) return {-reach, 0.0, Side::below};
  return {24.0, 24.0 + reach, Side::above};
}

inline constexpr int default_scan_points = 4000;
/// Closest scan point to the band edge.
inline constexpr double scan_min_distance = 1e-10;
/// Roots nearer than this to the edge are not reported as eigenvalues.
inline constexpr double marginal_distance = 1e-9;
inline constexpr double root_width = 1e-12;

/// Scan abscissae, ascending, geometrically clustered toward the band edge
/// (spacing proportional to the distance from the edge). The edge itself
/// is not included.
inline std::vector<double> scan_abscissae(const SearchInterval& iv, int points) {
  std::vector<double> z;
  z.reserve(points);
  const double dmax = iv.length();
  const double dmin = std::min(scan_min_distance, 0.5 * dmax);
  const double ratio = std::log(dmax / dmin);
  for (int k = 0; k < points; ++k) {
    const double d = dmin * std::exp(ratio * k / (points - 1));
    z.push_back(iv.side == Side::below ? iv.edge() - std::min(d, dmax)
                                       : iv.edge() + std::min(d, dmax));
  }
  std::sort(z.begin(), z.end());
  return z;
}

struct ZeroScan {
  std::vector<double> roots;     ///< sorted, farther than marginal_distance from the edge
  std::vector<double> marginal;  ///< threshold-marginal roots
};

namespace detail {

/// Bisection on a bracket with a sign change. Stops once the bracket is
/// narrower than root_width and |f| at the returned point is tiny, or when
/// the bracket cannot shrink further in floating point.
inline double bisect(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
    if (b - a <= root_width && std::min(std::abs(fa), std::abs(fb)) < 1e-13) break;
  }
  return std::abs(fa) <= std::abs(fb) ? a : b;
}

/// Locates sign changes of pre-evaluated samples and refines them.
inline ZeroScan zeros_from_samples(const std::function<double(double)>& det,
                                   const std::vector<double>& z, const std::vector<double>& f,
                                   const SearchInterval& iv, std::optional<double> edge_limit,
                                   int max_zeros) {
  std::vector<double> zs = z;
  std::vector<double> fs = f;
  if (edge_limit) {
    if (iv.side == Side::below) {
      zs.push_back(iv.edge());
      fs.push_back(*edge_limit);
    } else {
      zs.insert(zs.begin(), iv.edge());
      fs.insert(fs.begin(), *edge_limit);
    }
  }
  ZeroScan out;
  std::vector<double> all;
  for (std::size_t i = 0; i + 1 < zs.size(); ++i) {
    const double fa = fs[i];
    const double fb = fs[i + 1];
    if (fa == 0.0 && i > 0) continue;  // counted with the previous bracket
    const bool touches_edge =
        edge_limit && ((iv.side == Side::below && i + 2 == zs.size()) ||
                       (iv.side == Side::above && i == 0));
    if (fa == 0.0 || fb == 0.0 || (fa < 0.0) != (fb < 0.0)) {
      if (fb == 0.0 && touches_edge) continue;  // edge value itself vanishes
      double r;
      if (touches_edge) {
        // The edge is a limit value; bisect only over the interior.
        r = 0.5 * (zs[i] + zs[i + 1]);
        if (std::abs(zs[i + 1] - zs[i]) > root_width) {
          const double inner = iv.side == Side::below ? zs[i] : zs[i + 1];
          const double f_inner = iv.side == Side::below ? fa : fb;
          double a = inner;
          double fa2 = f_inner;
          double b = iv.edge();
          for (int it = 0; it < 200 && std::abs(b - a) > root_width; ++it) {
            const double m = 0.5 * (a + b);
            if (m == a || m == b || m == iv.edge()) break;
            const double fm = det(m);
            if ((fm < 0.0) == (fa2 < 0.0)) {
              a = m;
              fa2 = fm;
            } else {
              b = m;
            }
          }
          r = a;
        }
      } else {
        r = bisect(det, zs[i], fa, zs[i + 1], fb);
      }
      all.push_back(r);
    }
  }
  std::sort(all.begin(), all.end());
  for (double r : all) {
    if (std::abs(r - iv.edge()) < marginal_distance) {
      out.marginal.push_back(r);
    } else {
      out.roots.push_back(r);
    }
  }
  if (static_cast<int>(out.roots.size() + out.marginal.size()) > max_zeros) {
    throw InconsistencyError("find_determinant_zeros: found " +
                             std::to_string(out.roots.size() + out.marginal.size()) +
                             " zeros, rank bound allows " + std::to_string(max_zeros));
  }
  return out;
}

}  // namespace detail

/// Sign-change scan of det over the search interval followed by bisection.
/// edge_limit, when given, is the limit of det at the band edge and closes
/// the last bracket.
inline ZeroScan find_determinant_zeros(const std::function<double(double)>& det,
                                       const SearchInterval& iv, int max_zeros,
                                       std::optional<double> edge_limit = std::nullopt,
                                       int scan_points = default_scan_points) {
  if (!(iv.hi > iv.lo)) throw PreconditionError("find_determinant_zeros: empty interval");
  const auto z = scan_abscissae(iv, scan_points);
  std::vector<double> f;
  f.reserve(z.size());
  for (double x : z) {
    const double v = det(x);
    if (!std::isfinite(v)) throw NumericError("find_determinant_zeros: non-finite determinant");
    f.push_back(v);
  }
  return detail::zeros_from_samples(det, z, f, iv, edge_limit, max_zeros);
}

/// Discrete eigenvalues of one sector operator at K = 0.
struct SectorSpectrum {
  Sector sector = Sector::s;
  std::vector<double> below;
  std::vector<double> above;
  std::vector<double> marginal_below;
  std::vector<double> marginal_above;

  const std::vector<double>& on(Side s) const noexcept { return s == Side::below ? below : above; }
};

/// S and A12 zeros on one side, sharing the a-function evaluations.
struct SideZeros {
  ZeroScan s;
  ZeroScan a12;
};

/// Tabulates the a-functions once on the edge-clustered scan abscissae of
/// a window of the given reach and then locates determinant zeros for any
/// coupling whose search interval fits inside that window. The values above
/// the band come from the values below by reflection.
class SpectrumScanner {
 public:
  explicit SpectrumScanner(double reach, const AFunctionEvaluator& eval = default_evaluator(),
                           int scan_points = default_scan_points)
      : eval_(&eval), reach_(reach) {
    if (!(reach > 0.0) || !std::isfinite(reach))
      throw PreconditionError("SpectrumScanner: reach must be positive and finite");
    if (scan_points < 2) throw PreconditionError("SpectrumScanner: need at least 2 scan points");
    below_z_ = scan_abscissae({-reach, 0.0, Side::below}, scan_points);
    below_a_.reserve(below_z_.size());
    for (double z : below_z_) below_a_.push_back(eval(z));
  }

  /// Scanner sized for one coupling's search interval.
  explicit SpectrumScanner(const CouplingPair& c,
                           const AFunctionEvaluator& eval = default_evaluator(),
                           int scan_points = default_scan_points)
      : SpectrumScanner(search_interval(c, Side::above).length(), eval, scan_points) {}

  double reach() const noexcept { return reach_; }
  const AFunctionEvaluator& evaluator() const noexcept { return *eval_; }

  SideZeros scan(const CouplingPair& c, Side side) const {
    if (search_interval(c, side).length() > reach_ * (1.0 + 1e-12)) {
      throw PreconditionError("SpectrumScanner: coupling exceeds the tabulated window");
    }
    const std::size_t n = below_z_.size();
    std::vector<double> z(n), fs(n), fa(n);
    for (std::size_t i = 0; i < n; ++i) {
      // ascending order on both sides
      const std::size_t k = side == Side::below ? i : n - 1 - i;
      const AFunctions a = side == Side::below ? below_a_[k] : reflect(below_a_[k]);
      z[i] = side == Side::below ? below_z_[k] : 24.0 - below_z_[k];
      fs[i] = delta_s(c, a);
      fa[i] = delta_a12(c.mu2, a);
    }
    const SearchInterval iv = side == Side::below ? SearchInterval{-reach_, 0.0, side}
                                                  : SearchInterval{24.0, 24.0 + reach_, side};
    const ThresholdPolynomials t = threshold_polys(c);
    const double edge_s = side == Side::below ? t.a_minus : t.a_plus;
    const double edge_a = threshold_a12(c.mu2, side);
    const AFunctionEvaluator& eval = *eval_;
    SideZeros out;
    out.s = detail::zeros_from_samples([&](double x) { return delta_s(c, x, eval); }, z, fs, iv,
                                       edge_s, 2);
    out.a12 = detail::zeros_from_samples([&](double x) { return delta_a12(c.mu2, x, eval); }, z,
                                         fa, iv, edge_a, 1);
    return out;
  }

 private:
  const AFunctionEvaluator* eval_;
  double reach_;
  std::vector<double> below_z_;
  std::vector<AFunctions> below_a_;
};

namespace detail {
inline SectorSpectrum assemble_sector(Sector sector, const SideZeros& lo, const SideZeros& hi) {
  SectorSpectrum s;
  s.sector = sector;
  const bool sym = sector == Sector::s;
  s.below = sym ? lo.s.roots : lo.a12.roots;
  s.above = sym ? hi.s.roots : hi.a12.roots;
  s.marginal_below = sym ? lo.s.marginal : lo.a12.marginal;
  s.marginal_above = sym ? hi.s.marginal : hi.a12.marginal;
  const std::size_t bound = sym ? 2 : 1;
  if (s.below.size() + s.above.size() > bound) {
    throw InconsistencyError("sector_spectrum: " + std::string(to_string(sector)) + " has " +
                             std::to_string(s.below.size() + s.above.size()) +
                             " eigenvalues, rank bound is " + std::to_string(bound));
  }
  return s;
}
}  // namespace detail

/// MIX is unitarily equivalent to A12 and reuses its zeros.
inline SectorSpectrum sector_spectrum(Sector sector, const CouplingPair& c,
                                      const SpectrumScanner& scanner) {
  return detail::assemble_sector(sector, scanner.scan(c, Side::below),
                                 scanner.scan(c, Side::above));
}

inline SectorSpectrum sector_spectrum(Sector sector, const CouplingPair& c,
                                      const AFunctionEvaluator& eval = default_evaluator()) {
  return sector_spectrum(sector, c, SpectrumScanner(c, eval));
}

/// One entry of the assembled K = 0 discrete spectrum.
struct SpectralLine {
  double energy = 0.0;
  int multiplicity = 1;
  Sector sector = Sector::s;  ///< S, or A12 standing for the A12 + MIX pair
  bool coincident = false;    ///< an S root and an A12 root agree to 1e-9
};

struct FullSpectrum {
  SectorSpectrum s;
  SectorSpectrum a12;
  SectorSpectrum mix;
  std::vector<SpectralLine> below;
  std::vector<SpectralLine> above;

  const std::vector<SpectralLine>& on(Side side) const noexcept {
    return side == Side::below ? below : above;
  }
  int count(Side side) const noexcept {
    int n = 0;
    for (const auto& l : on(side)) n += l.multiplicity;
    return n;
  }
  /// Energies repeated according to multiplicity, ascending.
  std::vector<double> energies(Side side) const {
    std::vector<double> e;
    for (const auto& l : on(side))
      for (int m = 0; m < l.multiplicity; ++m) e.push_back(l.energy);
    return e;
  }
};

inline constexpr double coincidence_tolerance = 1e-9;

namespace detail {
inline std::vector<SpectralLine> merge_lines(const std::vector<double>& s,
                                             const std::vector<double>& a) {
  std::vector<SpectralLine> out;
  for (double z : s) out.push_back({z, 1, Sector::s, false});
  for (double z : a) out.push_back({z, 2, Sector::a12, false});
  for (auto& x : out)
    for (const auto& y : out)
      if (&x != &y && x.sector != y.sector && std::abs(x.energy - y.energy) < coincidence_tolerance)
        x.coincident = true;
  std::sort(out.begin(), out.end(), [](const SpectralLine& x, const SpectralLine& y) {
    return x.energy < y.energy || (x.energy == y.energy && x.sector < y.sector);
  });
  return out;
}
}  // namespace detail

/// Discrete spectrum of H(0) = H^s + H^a12 + H^mix with multiplicities.
inline FullSpectrum full_spectrum_zero_k(const CouplingPair& c, const SpectrumScanner& scanner) {
  const SideZeros lo = scanner.scan(c, Side::below);
  const SideZeros hi = scanner.scan(c, Side::above);
  FullSpectrum f;
  f.s = detail::assemble_sector(Sector::s, lo, hi);
  f.a12 = detail::assemble_sector(Sector::a12, lo, hi);
  f.mix = f.a12;
  f.mix.sector = Sector::mix;
  f.below = detail::merge_lines(f.s.below, f.a12.below);
  f.above = detail::merge_lines(f.s.above, f.a12.above);
  return f;
}

inline FullSpectrum full_spectrum_zero_k(const CouplingPair& c,
                                         const AFunctionEvaluator& eval = default_evaluator()) {
  return full_spectrum_zero_k(c, SpectrumScanner(c, eval));
}

// ---------------------------------------------------------------------------
// Eigenfunctions

inline constexpr double root_tolerance = 1e-8;

/// Symmetric-sector eigenfunction
///   f(p) = -C (mu1 c1 alpha_1(p) + mu2 c2 alpha_2(p)) / (E_0(p) - z),
/// where (c1, c2) solves the 2x2 system (I - B(z)) c = 0. The standard
/// choice (c1, c2) = (-mu2 a12, 1 + mu1 a11) gives
/// C (mu1 mu2 a12 alpha_1 - mu2 (1 + mu1 a11) alpha_2) / (E_0 - z).
struct EigenfunctionS {
  CouplingPair couplings;
  double z = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double norm_constant = 1.0;  ///< C, chosen for unit quadrature norm
  bool degenerate = false;     ///< the row-1 vector vanished; row-2 solution used
  AFunctions a;                ///< a-functions at z

  double operator()(const MomentumPoint& p) const noexcept {
    const double q1 = std::cos(p[0]), q2 = std::cos(p[1]), q3 = std::cos(p[2]);
    return value_cos(q1, q2, q3);
  }
  double value_cos(double q1, double q2, double q3) const noexcept {
    const double num = couplings.mu1 * c1 * basis_value_cos(BasisTag::s1, q1, q2, q3) +
                       couplings.mu2 * c2 * basis_value_cos(BasisTag::s2, q1, q2, q3);
    return -norm_constant * num / (dispersion_zero_k(q1, q2, q3) - z);
  }

  /// || (I - B(z)) c || / || c || for the homogeneous 2x2 system.
  double system_residual() const noexcept {
    const double m00 = 1.0 + couplings.mu1 * a.a11, m01 = couplings.mu2 * a.a12;
    const double m10 = couplings.mu1 * a.a12, m11 = 1.0 + couplings.mu2 * a.a22;
    const double r0 = m00 * c1 + m01 * c2;
    const double r1 = m10 * c1 + m11 * c2;
    return std::hypot(r0, r1) / std::hypot(c1, c2);
  }
};

inline EigenfunctionS eigenfunction_s(const CouplingPair& c, double z,
                                      const AFunctionEvaluator& eval = default_evaluator()) {
  EigenfunctionS f;
  f.couplings = c;
  f.z = z;
  f.a = eval(z);
  const double det = delta_s(c, f.a);
  if (!(std::abs(det) < root_tolerance)) {
    throw PreconditionError("eigenfunction_s: z = " + std::to_string(z) +
                            " is not a root of the symmetric-sector determinant (|delta| = " +
                            std::to_string(std::abs(det)) + ")");
  }
  const double m00 = 1.0 + c.mu1 * f.a.a11, m01 = c.mu2 * f.a.a12;
  const double m10 = c.mu1 * f.a.a12, m11 = 1.0 + c.mu2 * f.a.a22;
  const double v1x = -m01, v1y = m00;  // null vector of row 1
  const double v2x = m11, v2y = -m10;  // null vector of row 2
  const double n1 = std::hypot(v1x, v1y);
  const double n2 = std::hypot(v2x, v2y);
  if (n1 < 1e-12 && n2 < 1e-12) {
    throw NumericError("eigenfunction_s: degenerate eigenvector (both coefficient pairs vanish)");
  }
  if (n1 >= 1e-6 * n2) {
    f.c1 = v1x;
    f.c2 = v1y;
  } else {
    f.c1 = v2x;
    f.c2 = v2y;
    f.degenerate = true;
  }
  f.norm_constant = 1.0;
  const double nrm2 = integrate_torus_even(
      [&](const MomentumPoint& p) {
        const double v = f(p);
        return v * v;
      },
      eval.grid());
  f.norm_constant = 1.0 / std::sqrt(nrm2);
  return f;
}

/// a12- or mix-sector eigenfunction  f(p) = -mu2 c alpha_3(p) / (E_0(p) - z),
/// alpha_3 being the sector's basis function and c > 0 fixed by unit norm.
struct EigenfunctionA12 {
  double mu2 = 0.0;
  double z = 0.0;
  Sector sector = Sector::a12;
  double norm_constant = 1.0;

  BasisTag basis() const noexcept { return sector == Sector::mix ? BasisTag::mix : BasisTag::a12; }
  double operator()(const MomentumPoint& p) const noexcept {
    const double q1 = std::cos(p[0]), q2 = std::cos(p[1]), q3 = std::cos(p[2]);
    return value_cos(q1, q2, q3);
  }
  double value_cos(double q1, double q2, double q3) const noexcept {
    return -mu2 * norm_constant * basis_value_cos(basis(), q1, q2, q3) /
           (dispersion_zero_k(q1, q2, q3) - z);
  }
};

inline EigenfunctionA12 eigenfunction_a12(double mu2, double z, Sector sector,
                                          const AFunctionEvaluator& eval = default_evaluator()) {
  if (sector == Sector::s) throw PreconditionError("eigenfunction_a12: sector must be A12 or MIX");
  const double det = delta_a12(mu2, z, eval);
  if (!(std::abs(det) < root_tolerance)) {
    throw PreconditionError("eigenfunction_a12: z = " + std::to_string(z) +
                            " is not a root of the a12-sector determinant (|delta| = " +
                            std::to_string(std::abs(det)) + ")");
  }
  EigenfunctionA12 f{mu2, z, sector, 1.0};
  const double nrm2 = integrate_torus_even(
      [&](const MomentumPoint& p) {
        const double v = f(p);
        return v * v;
      },
      eval.grid());
  f.norm_constant = 1.0 / std::sqrt(nrm2);
  return f;
}

}  // namespace lbs
