// Acceptance run: one PASS/FAIL line per criterion, details indented below.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "lbs/lbs.hpp"
#include "reference_values.hpp"

using namespace lbs;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("violated: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.notes.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) {
    o.pass = false;
    o.notes.push_back(fmt("runtime %.2f s exceeds %.0f s", secs, limit_s));
  }
  if (!o.pass) ++failures;
  std::printf("%s criterion %d: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title, secs);
  for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
  std::fflush(stdout);
}

std::vector<double> identity_points() {
  std::vector<double> z;
  for (int k = 0; k < 10; ++k) z.push_back(-50.0 * std::pow(50.0 / 0.001, -k / 9.0));
  for (int k = 0; k < 10; ++k) z.push_back(24.0 + 0.001 * std::pow(50.0 / 0.001, k / 9.0));
  return z;
}

struct Sample {
  const char* region;
  CouplingPair c;
};

// One coupling strictly inside each region, at distance >= 0.5 from every
// critical curve and critical point.
const std::vector<Sample>& region_samples() {
  static const std::vector<Sample> s{
      {"A0-", {-5, 2}},      {"A1-", {-30, 0}},    {"A2-", {-60, -10.25}},
      {"A0+", {5, -2}},      {"A1+", {30, 0}},     {"A2+", {60, 10.25}},
      {"B1-", {0, -16}},     {"B1+", {0, 16}},     {"origin", {0, 0}},
  };
  return s;
}

double curve_distance(const CouplingPair& c) {
  const double crit = band_edge_constants().mu2_crit;
  double d = std::min(std::abs(c.mu2 + crit), std::abs(c.mu2 - crit));
  if (c.mu1 != -12.0) d = std::min(d, std::abs(c.mu2 - critical_curve(Side::below, c.mu1)));
  if (c.mu1 != 12.0) d = std::min(d, std::abs(c.mu2 - critical_curve(Side::above, c.mu1)));
  return d;
}

double nearest(const std::vector<double>& ev, double z) {
  double d = INFINITY;
  for (double e : ev) d = std::min(d, std::abs(e - z));
  return d;
}

double fitted_exponent(AKind kind) {
  const double edge = a_bessel(kind, 0.0);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = 6;
  for (int k = 0; k < n; ++k) {
    const double z = -1e-4 * std::pow(4.0, k);
    const double x = std::log(-z);
    const double y = std::log(edge - a_bessel(kind, z));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::string count_text(const Count& c) { return c ? std::to_string(*c) : "-"; }
std::string pair_text(const CountPair& p) {
  return p ? "(" + std::to_string(p->first) + "," + std::to_string(p->second) + ")" : "-";
}

}  // namespace

int main() {
  const auto& eval = default_evaluator();
  const double pi = std::numbers::pi;

  criterion(1, "band-edge constant a11(0) against the Gamma-product closed form", 5.0,
            [&](Outcome& o) {
              const double a = bessel_a_functions(0.0).a11;
              const double closed = ref::a11_edge_gamma_product();
              o.note(fmt("a11(0) = %.15f, closed form = %.15f, |diff| = %.2e", a, closed,
                         std::abs(a - closed)));
              o.note("closed form used: sqrt(6)/(96 pi^3) G(1/24)G(5/24)G(7/24)G(11/24)/4");
              o.require(std::abs(a - closed) < 1e-6, "|a11(0) - closed form| < 1e-6");
              o.require(a > 11.0 / 102.0, "a11(0) > 11/102");
              o.require(std::abs(band_edge_constants().at_edge.a11 - closed) < 1e-6,
                        "memoized constant agrees");
            });

  criterion(2, "identity suite at 20 points of [-50,-0.001] U [24.001,74]", 30.0, [&](Outcome& o) {
    const double r6 = 2.0 * std::sqrt(6.0);
    double worst = 0.0;
    for (double z : identity_points()) {
      const AFunctions a = eval(z);
      const double e1 = std::abs(a.a12 - ((12.0 - z) / r6 * a.a11 - 1.0 / r6));
      const double e2 = std::abs(a.a22 - (12.0 - z) / r6 * a.a12);
      worst = std::max({worst, e1, e2});
      o.require(e1 < 1e-7 && e2 < 1e-7, fmt("identities at z = %.6g (errors %.2e, %.2e)", z, e1, e2));
    }
    o.note(fmt("largest identity error %.2e", worst));
  });

  criterion(3, "reflection identities and full-spectrum mirror", 0.0, [&](Outcome& o) {
    double worst_a = 0.0, worst_det = 0.0;
    const std::vector<CouplingPair> cs{{-20, -10}, {7, -3}, {0, 16}, {-13, -40}};
    for (double z : identity_points()) {
      const AFunctions lo = eval(z);
      const AFunctions hi = eval(24.0 - z);
      worst_a = std::max({worst_a, std::abs(hi.a11 + lo.a11), std::abs(hi.a12 - lo.a12),
                          std::abs(hi.a22 + lo.a22), std::abs(hi.a_a12 + lo.a_a12)});
      for (const auto& c : cs) {
        worst_det = std::max({worst_det, std::abs(delta_s(c, lo) - delta_s(-c, hi)),
                              std::abs(delta_a12(c.mu2, lo) - delta_a12(-c.mu2, hi))});
      }
    }
    o.note(fmt("a-function reflection error %.2e, determinant reflection error %.2e", worst_a,
               worst_det));
    o.require(worst_a < 1e-7, "a-function reflection within 1e-7");
    o.require(worst_det < 1e-7, "determinant reflection within 1e-7");

    const SpectrumScanner scanner(61.0, eval);
    std::mt19937 rng(20241016);
    std::uniform_real_distribution<double> u(-60, 60);
    double worst_mirror = 0.0;
    for (int k = 0; k < 10; ++k) {
      const CouplingPair c{u(rng), u(rng)};
      const auto f = full_spectrum_zero_k(c, scanner);
      const auto g = full_spectrum_zero_k(-c, scanner);
      for (Side s : {Side::below, Side::above}) {
        const auto a = f.energies(s);
        const auto b = g.energies(s == Side::below ? Side::above : Side::below);
        if (a.size() != b.size()) {
          o.require(false, fmt("mirror count at (%.4f, %.4f)", c.mu1, c.mu2));
          continue;
        }
        for (std::size_t i = 0; i < a.size(); ++i)
          worst_mirror = std::max(worst_mirror, std::abs(a[i] - (24.0 - b[b.size() - 1 - i])));
      }
    }
    o.note(fmt("mirror error over 10 random couplings %.2e", worst_mirror));
    o.require(worst_mirror < 1e-9, "mirror within 1e-9");
  });

  criterion(4, "threshold exponents of a11 and a_a12 at the band bottom", 0.0, [&](Outcome& o) {
    const double s11 = fitted_exponent(AKind::a11);
    const double sa = fitted_exponent(AKind::a_a12);
    o.note(fmt("fitted exponents: a11 %.4f, a_a12 %.4f", s11, sa));
    o.require(std::abs(s11 - 0.5) <= 0.05, "a11 exponent 0.50 +/- 0.05");
    o.require(std::abs(sa - 1.0) <= 0.1, "a_a12 exponent 1.0 +/- 0.1");
  });

  std::map<std::string, FullSpectrum> spectra;
  criterion(5, "determinant counts equal region counts for 9 couplings", 60.0, [&](Outcome& o) {
    for (const auto& s : region_samples()) {
      const RegionReport r = classify(s.c);
      const FullSpectrum f = full_spectrum_zero_k(s.c, eval);
      spectra[s.region] = f;
      const int sb = static_cast<int>(f.s.below.size()), sa = static_cast<int>(f.s.above.size());
      const int ab = static_cast<int>(f.a12.below.size()), aa = static_cast<int>(f.a12.above.size());
      o.note(fmt("%-6s (%g, %g): regions a-=%s a+=%s b-=%s b+=%s | det S %d/%d A12 %d/%d, "
                 "curve distance %.3f",
                 s.region, s.c.mu1, s.c.mu2, count_text(r.a_minus).c_str(),
                 count_text(r.a_plus).c_str(), count_text(r.b_minus).c_str(),
                 count_text(r.b_plus).c_str(), sb, sa, ab, aa, curve_distance(s.c)));
      o.require(r.a_minus == sb && r.a_plus == sa && r.b_minus == ab && r.b_plus == aa,
                std::string("counts at ") + s.region);
      o.require(curve_distance(s.c) >= 0.5, std::string("sample inside ") + s.region);
    }
  });

  criterion(6, "grid oracle counts and roots at N=12, improving at N=16", 600.0, [&](Outcome& o) {
    for (const auto& s : region_samples()) {
      const FullSpectrum f =
          spectra.count(s.region) ? spectra[s.region] : full_spectrum_zero_k(s.c, eval);
      const OracleCounts oc = oracle_counts(s.c, Quasimomentum{}, 12);
      const auto ev12 = eigenvalues_dense(assemble(s.c, Quasimomentum{}, 12, GridReduction::even_parity));
      const auto ev16 = eigenvalues_dense(assemble(s.c, Quasimomentum{}, 16, GridReduction::even_parity));
      std::string roots;
      for (Side side : {Side::below, Side::above})
        for (const auto& l : f.on(side)) {
          const double d12 = nearest(ev12, l.energy), d16 = nearest(ev16, l.energy);
          roots += fmt(" %.6f[d12=%.1e d16=%.1e]", l.energy, d12, d16);
          o.require(d12 < 0.05, fmt("root %.6f within 0.05 at N=12 (%s)", l.energy, s.region));
          o.require(d16 <= d12, fmt("root %.6f closer at N=16 (%s)", l.energy, s.region));
        }
      o.note(fmt("%-6s det (%d,%d) oracle (%d,%d)%s", s.region, f.count(Side::below),
                 f.count(Side::above), oc.below, oc.above, roots.c_str()));
      o.require(oc.below == f.count(Side::below) && oc.above == f.count(Side::above),
                std::string("oracle counts at ") + s.region);
    }
  });

  const CouplingPair g30{0, -16}, g03{0, 16};
  criterion(7, "G-table counts at K=0 and lower bounds at K != 0", 600.0, [&](Outcome& o) {
    const auto f30 = full_spectrum_zero_k(g30, eval);
    const auto f03 = full_spectrum_zero_k(g03, eval);
    o.require(*classify(g30).g_label == std::make_pair(3, 0), "G30 sample labelled (3,0)");
    o.require(*classify(g03).g_label == std::make_pair(0, 3), "G03 sample labelled (0,3)");
    o.note(fmt("K=0 determinant counts: G30 (%d,%d), G03 (%d,%d)", f30.count(Side::below),
               f30.count(Side::above), f03.count(Side::below), f03.count(Side::above)));
    o.require(f30.count(Side::below) == 3 && f30.count(Side::above) == 0, "G30 counts (3,0)");
    o.require(f03.count(Side::below) == 0 && f03.count(Side::above) == 3, "G03 counts (0,3)");
    const std::vector<Quasimomentum> ks{{pi / 2, 0, 0}, {pi / 2, pi / 2, 0}, {pi, pi, pi}};
    for (const auto& K : ks) {
      const auto a = oracle_counts(g30, K, 12);
      const auto b = oracle_counts(g03, K, 12);
      o.note(fmt("K=(%.4f,%.4f,%.4f) N=12: G30 oracle (%d,%d), G03 oracle (%d,%d)", K[0], K[1],
                 K[2], a.below, a.above, b.below, b.above));
      o.require(a.below >= 3, "G30 lower bound 3 below");
      o.require(b.above >= 3, "G03 lower bound 3 above");
    }
  });

  criterion(8, "third variational level along the K1 axis, G30 sample", 0.0, [&](Outcome& o) {
    std::vector<Quasimomentum> path;
    for (int k = 0; k <= 4; ++k) path.emplace_back(k * pi / 4, 0.0, 0.0);
    for (int n : {12, 16}) {
      const auto prof = minmax_profile(g30, 3, path, n);
      std::string line = fmt("N=%d levels:", n);
      for (const auto& p : prof) line += fmt(" %.6f", p.level);
      o.note(line);
      for (std::size_t i = 1; i < prof.size(); ++i) {
        o.require(prof[i].level <= prof[0].level + 1e-6, fmt("maximum at K=0 (N=%d)", n));
        o.require(prof[i].level <= prof[i - 1].level + 1e-6, fmt("monotone on [0, pi] (N=%d)", n));
      }
    }
  });

  criterion(9, "eigenfunction closure at every determinant root", 0.0, [&](Outcome& o) {
    std::vector<CouplingPair> cs;
    for (const auto& s : region_samples()) cs.push_back(s.c);
    cs.push_back({-20, -10});
    cs.push_back({-13, -40});
    double worst_sys = 0.0, worst_grid = 0.0;
    int roots = 0;
    for (const auto& c : cs) {
      const auto f = full_spectrum_zero_k(c, eval);
      for (Side side : {Side::below, Side::above}) {
        for (double z : side == Side::below ? f.s.below : f.s.above) {
          const auto e = eigenfunction_s(c, z, eval);
          const double rs = e.system_residual();
          const double rg = grid_residual(c, Quasimomentum{}, 32, z, e);
          worst_sys = std::max(worst_sys, rs);
          worst_grid = std::max(worst_grid, rg);
          ++roots;
          o.require(rs < 1e-8, fmt("S system residual at (%g,%g) z=%.6f: %.2e", c.mu1, c.mu2, z, rs));
          o.require(rg <= 5e-3, fmt("S grid residual at (%g,%g) z=%.6f: %.2e", c.mu1, c.mu2, z, rg));
        }
        for (double z : side == Side::below ? f.a12.below : f.a12.above) {
          for (Sector sec : {Sector::a12, Sector::mix}) {
            const auto e = eigenfunction_a12(c.mu2, z, sec, eval);
            const double rs = std::abs(delta_a12(c.mu2, z, eval));
            const double rg = grid_residual(c, Quasimomentum{}, 32, z, e);
            worst_sys = std::max(worst_sys, rs);
            worst_grid = std::max(worst_grid, rg);
            ++roots;
            o.require(rs < 1e-8, fmt("A12 system residual at (%g,%g) z=%.6f", c.mu1, c.mu2, z));
            o.require(rg <= 5e-3, fmt("%s grid residual at (%g,%g) z=%.6f: %.2e",
                                      std::string(to_string(sec)).c_str(), c.mu1, c.mu2, z, rg));
          }
        }
      }
    }
    o.note(fmt("%d eigenfunctions; largest system residual %.2e, largest N=32 grid residual %.2e",
               roots, worst_sys, worst_grid));
  });

  criterion(10, "overfull points of the 100x100 phase scan over [-60,60]^2", 300.0, [&](Outcome& o) {
    const ScanAxis ax{-60.0, 60.0, 100};
    const auto rows = phase_scan(ax, ax);
    const auto over = overfull_points(rows);
    std::map<std::string, int> labels;
    int below = 0, above = 0;
    for (const auto& r : over) {
      const auto& rep = r.report;
      if (rep.sector_sum->first > 3) ++below;
      if (rep.sector_sum->second > 3) ++above;
      ++labels["sum=" + pair_text(rep.sector_sum) + " D-=" + count_text(rep.d_minus) +
               " D+=" + count_text(rep.d_plus) + " G=" + pair_text(rep.g_label)];
    }
    o.note(fmt("%zu scan points, %zu overfull (%d with 4 below, %d with 4 above)", rows.size(),
               over.size(), below, above));
    for (const auto& [k, v] : labels) o.note(fmt("%5d points: %s", v, k.c_str()));

    // Determinant counts at every overfull point confirm the region arithmetic.
    const SpectrumScanner scanner(61.0, eval);
    int confirmed = 0;
    for (const auto& r : over) {
      const auto f = full_spectrum_zero_k(r.report.couplings, scanner);
      if (std::make_pair(f.count(Side::below), f.count(Side::above)) == *r.report.sector_sum)
        ++confirmed;
      else
        o.require(false, fmt("determinant count at (%g,%g)", r.report.couplings.mu1,
                             r.report.couplings.mu2));
    }
    o.note(fmt("determinant counts confirm %d of %zu overfull points", confirmed, over.size()));
    if (!over.empty()) {
      const auto& c = over.front().report.couplings;
      o.note(fmt("example: (%g, %g) has 4 eigenvalues on one side while its table label is %s; "
                 "the labelled regions never exceed 3",
                 c.mu1, c.mu2, pair_text(over.front().report.g_label).c_str()));
    }
    const auto probe = oracle_counts({-13, -40}, Quasimomentum{}, 16, 0.05);
    o.note(fmt("(-13,-40): determinant 4 below; oracle N=16 margin 0.05 gives %d below", probe.below));
  });

  std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ALL PASS" : "SOME FAIL", failures);
  return failures == 0 ? 0 : 1;
}
