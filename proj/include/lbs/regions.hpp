#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lbs/determinant.hpp"
#include "lbs/parallel.hpp"
#include "lbs/spectrum.hpp"

namespace lbs {

/// Distance in mu2 below which a point counts as lying on a curve.
inline constexpr double boundary_tolerance = 1e-9;

/// Hyperbolas where the symmetric-sector count changes:
///   minus: mu2 = 24 / (mu1 + 12) - mu0,   plus: mu2 = 24 / (mu1 - 12) + mu0.
inline double critical_curve(Side side, double mu1) {
  const double mu0 = band_edge_constants().mu0;
  if (side == Side::below) {
    if (mu1 == -12.0) throw DomainError("critical_curve: pole of the lower curve at mu1 = -12");
    return 24.0 / (mu1 + 12.0) - mu0;
  }
  if (mu1 == 12.0) throw DomainError("critical_curve: pole of the upper curve at mu1 = 12");
  return 24.0 / (mu1 - 12.0) + mu0;
}

enum BoundaryFlag : unsigned {
  on_tau_minus = 1u << 0,
  on_tau_plus = 1u << 1,
  on_b_minus = 1u << 2,
  on_b_plus = 1u << 3,
};

/// Space-separated flag names, empty when no flag is set.
inline std::string boundary_names(unsigned flags) {
  std::string s;
  auto add = [&](unsigned bit, const char* name) {
    if (flags & bit) {
      if (!s.empty()) s += ' ';
      s += name;
    }
  };
  add(on_tau_minus, "OnTauMinus");
  add(on_tau_plus, "OnTauPlus");
  add(on_b_minus, "OnBMinus");
  add(on_b_plus, "OnBPlus");
  return s;
}

using Count = std::optional<int>;
using CountPair = std::optional<std::pair<int, int>>;

/// Region memberships of one coupling pair. Empty optionals mark counts
/// that are undefined because the point lies on a boundary.
struct RegionReport {
  CouplingPair couplings;
  Count a_minus, a_plus;
  Count b_minus, b_plus;
  /// Table labels with the three-eigenvalue region confined to mu1 = 0.
  Count d_minus, d_plus;
  CountPair g_label;
  /// Same labels with the three-eigenvalue region taken off the axis too.
  Count d_minus_offaxis, d_plus_offaxis;
  CountPair g_label_offaxis;
  unsigned boundary = 0;
  /// (n_S + 2 n_A12) below and above, from the region memberships alone.
  CountPair sector_sum;

  Count a(Side s) const noexcept { return s == Side::below ? a_minus : a_plus; }
  Count b(Side s) const noexcept { return s == Side::below ? b_minus : b_plus; }
};

namespace detail {

inline Count symmetric_count(const CouplingPair& c, Side side, unsigned& flags) {
  const double pole = side == Side::below ? -12.0 : 12.0;
  if (c.mu1 == pole) return 1;
  const double curve = critical_curve(side, c.mu1);
  if (std::abs(c.mu2 - curve) < boundary_tolerance) {
    flags |= side == Side::below ? on_tau_minus : on_tau_plus;
    return std::nullopt;
  }
  if (side == Side::below) {
    const bool above_curve = c.mu2 > curve;
    if (c.mu1 > pole) return above_curve ? 0 : 1;
    return above_curve ? 1 : 2;
  }
  const bool below_curve = c.mu2 < curve;
  if (c.mu1 < pole) return below_curve ? 0 : 1;
  return below_curve ? 1 : 2;
}

inline Count antisymmetric_count(double mu2, Side side, unsigned& flags) {
  const double crit = band_edge_constants().mu2_crit;
  if (side == Side::below) {
    if (std::abs(mu2 + crit) < boundary_tolerance) {
      flags |= on_b_minus;
      return std::nullopt;
    }
    return mu2 < -crit ? 1 : 0;
  }
  if (std::abs(mu2 - crit) < boundary_tolerance) {
    flags |= on_b_plus;
    return std::nullopt;
  }
  return mu2 > crit ? 1 : 0;
}

inline Count table_label(Count a, Count b, bool on_axis) {
  if (!a) return std::nullopt;
  if (*a != 1) return *a;
  if (!on_axis) return 1;
  if (!b) return std::nullopt;
  return *b == 1 ? 3 : 1;
}

inline CountPair pair_of(Count x, Count y) {
  if (!x || !y) return std::nullopt;
  return std::make_pair(*x, *y);
}

}  // namespace detail

inline RegionReport classify(const CouplingPair& c) {
  RegionReport r;
  r.couplings = c;
  r.a_minus = detail::symmetric_count(c, Side::below, r.boundary);
  r.a_plus = detail::symmetric_count(c, Side::above, r.boundary);
  r.b_minus = detail::antisymmetric_count(c.mu2, Side::below, r.boundary);
  r.b_plus = detail::antisymmetric_count(c.mu2, Side::above, r.boundary);

  const bool axis = c.mu1 == 0.0;
  r.d_minus = detail::table_label(r.a_minus, r.b_minus, axis);
  r.d_plus = detail::table_label(r.a_plus, r.b_plus, axis);
  r.g_label = detail::pair_of(r.d_minus, r.d_plus);
  r.d_minus_offaxis = detail::table_label(r.a_minus, r.b_minus, true);
  r.d_plus_offaxis = detail::table_label(r.a_plus, r.b_plus, true);
  r.g_label_offaxis = detail::pair_of(r.d_minus_offaxis, r.d_plus_offaxis);

  if (r.a_minus && r.a_plus && r.b_minus && r.b_plus) {
    r.sector_sum = std::make_pair(*r.a_minus + 2 * *r.b_minus, *r.a_plus + 2 * *r.b_plus);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Inclusions between regions, checked on a sample grid

struct InclusionViolation {
  std::string relation;
  CouplingPair couplings;
};

struct InclusionReport {
  int points = 0;
  std::vector<InclusionViolation> violations;
  int g12_points = 0;  ///< sampled points labelled (1, 2); expected 0
  int g21_points = 0;

  bool ok() const noexcept { return violations.empty() && g12_points == 0 && g21_points == 0; }
};

inline InclusionReport inclusion_checks(int n = 200, double lo = -60.0, double hi = 60.0) {
  if (n < 2) throw PreconditionError("inclusion_checks: need at least 2 points per axis");
  InclusionReport rep;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const CouplingPair c{lo + (hi - lo) * i / (n - 1), lo + (hi - lo) * j / (n - 1)};
      const RegionReport r = classify(c);
      ++rep.points;
      auto check = [&](bool premise, Count target, int want, const char* rel) {
        if (premise && (!target || *target != want)) rep.violations.push_back({rel, c});
      };
      check(r.a_plus == 2, r.a_minus, 0, "A2+ in A0-");
      check(r.a_minus == 2, r.a_plus, 0, "A2- in A0+");
      check(r.b_plus == 1, r.b_minus, 0, "B1+ in B0-");
      check(r.b_minus == 1, r.b_plus, 0, "B1- in B0+");
      if (r.g_label && *r.g_label == std::make_pair(1, 2)) ++rep.g12_points;
      if (r.g_label && *r.g_label == std::make_pair(2, 1)) ++rep.g21_points;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Phase-plane scans

/// lo, lo + step, ..., hi with n >= 2 points.
struct ScanAxis {
  double lo = 0.0;
  double hi = 0.0;
  int n = 2;

  double at(int i) const noexcept {
    return i == n - 1 ? hi : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  }
};

struct ScanRow {
  RegionReport report;
  CountPair det_counts;  ///< determinant counts, filled when verification was requested
};

struct ScanOptions {
  bool verify = false;
  const AFunctionEvaluator* evaluator = nullptr;  ///< defaults to default_evaluator()
  unsigned threads = 0;                           ///< 0: thread_count()
};

/// Row-major scan: mu1 varies slowest. Output order is independent of the
/// number of worker threads.
inline std::vector<ScanRow> phase_scan(const ScanAxis& mu1, const ScanAxis& mu2,
                                       const ScanOptions& opt = {}) {
  if (mu1.n < 2 || mu2.n < 2) throw PreconditionError("phase_scan: need n >= 2 per axis");
  const std::size_t total = static_cast<std::size_t>(mu1.n) * mu2.n;
  std::vector<ScanRow> rows(total);
  std::optional<SpectrumScanner> scanner;
  if (opt.verify) {
    const double reach =
        std::max({std::abs(mu1.lo), std::abs(mu1.hi), std::abs(mu2.lo), std::abs(mu2.hi)}) + 1.0;
    scanner.emplace(reach, opt.evaluator ? *opt.evaluator : default_evaluator());
  }
  parallel_for(
      total,
      [&](std::size_t idx) {
        const int i = static_cast<int>(idx / mu2.n);
        const int j = static_cast<int>(idx % mu2.n);
        const CouplingPair c{mu1.at(i), mu2.at(j)};
        ScanRow& row = rows[idx];
        row.report = classify(c);
        if (scanner) {
          const FullSpectrum f = full_spectrum_zero_k(c, *scanner);
          row.det_counts = std::make_pair(f.count(Side::below), f.count(Side::above));
        }
      },
      opt.threads == 0 ? thread_count() : opt.threads);
  return rows;
}

/// Scan points where the region arithmetic predicts more than three
/// eigenvalues on one side, a count no labelled region reaches.
inline std::vector<ScanRow> overfull_points(const std::vector<ScanRow>& rows) {
  std::vector<ScanRow> out;
  for (const auto& r : rows) {
    const auto& s = r.report.sector_sum;
    if (s && (s->first > 3 || s->second > 3)) out.push_back(r);
  }
  return out;
}

}  // namespace lbs
