#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lbs/lbs.hpp"

namespace lbs::cli {

using json = nlohmann::json;

/// Settings shared by all subcommands; a --config file fills what the
/// flags leave unset.
struct RunConfig {
  int quadrature_n = default_quadrature_n;
  int grid_n = 12;
  double edge_delta = default_edge_delta;
  bool json_output = false;
  std::string out_path;

  void validate() const {
    if (quadrature_n < 8 || quadrature_n % 2 != 0)
      throw PreconditionError("quadrature_n must be even and >= 8");
    if (grid_n < oracle_min_n || grid_n > oracle_max_n || grid_n % 2 != 0)
      throw PreconditionError("grid_n must be even and in [4, 24]");
    if (!(edge_delta > 0.0 && edge_delta < 0.5))
      throw PreconditionError("edge_delta must lie in (0, 0.5)");
  }
};

/// %.12g text of x.
inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// x rounded to 12 significant digits, for stable JSON output.
inline double round12(double x) { return std::stod(fmt(x)); }

inline json num(double x) {
  if (!std::isfinite(x)) throw NumericError("non-finite value in output");
  return round12(x);
}

inline json num_array(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

/// Accepts a plain number or a multiple of pi: "pi", "-pi/2", "3pi/4", "0.5*pi".
inline double parse_angle(const std::string& s) {
  static const std::regex re(R"(^\s*([+-]?)([0-9]*\.?[0-9]*)\*?pi(?:/([0-9]*\.?[0-9]+))?\s*$)");
  std::smatch m;
  if (std::regex_match(s, m, re)) {
    double coef = m[2].length() ? std::stod(m[2].str()) : 1.0;
    if (m[1] == "-") coef = -coef;
    const double den = m[3].matched ? std::stod(m[3].str()) : 1.0;
    return coef * pi / den;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw PreconditionError("cannot parse angle '" + s + "'");
  }
  if (s.find_first_not_of(" \t", used) != std::string::npos)
    throw PreconditionError("cannot parse angle '" + s + "'");
  return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

inline Quasimomentum parse_quasimomentum(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw PreconditionError("--K expects kx,ky,kz");
  return Quasimomentum(parse_angle(parts[0]), parse_angle(parts[1]), parse_angle(parts[2]));
}

/// "lo:hi:n" with n >= 2.
inline ScanAxis parse_axis(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw PreconditionError("range '" + s + "' must have the form lo:hi:n");
  ScanAxis a;
  try {
    a.lo = std::stod(parts[0]);
    a.hi = std::stod(parts[1]);
    a.n = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw PreconditionError("range '" + s + "' must have the form lo:hi:n");
  }
  if (a.n < 2) throw PreconditionError("range '" + s + "' needs n >= 2");
  return a;
}

inline json count_json(const Count& c) { return c ? json(*c) : json(nullptr); }
inline json pair_json(const CountPair& p) {
  return p ? json::array({p->first, p->second}) : json(nullptr);
}

inline json report_json(const RegionReport& r) {
  json j;
  j["a_minus"] = count_json(r.a_minus);
  j["a_plus"] = count_json(r.a_plus);
  j["b_minus"] = count_json(r.b_minus);
  j["b_plus"] = count_json(r.b_plus);
  j["d_minus"] = count_json(r.d_minus);
  j["d_plus"] = count_json(r.d_plus);
  j["g_label"] = pair_json(r.g_label);
  j["d_minus_offaxis"] = count_json(r.d_minus_offaxis);
  j["d_plus_offaxis"] = count_json(r.d_plus_offaxis);
  j["g_label_offaxis"] = pair_json(r.g_label_offaxis);
  j["sector_sum"] = pair_json(r.sector_sum);
  json flags = json::array();
  for (const auto& f : split(boundary_names(r.boundary), ' ')) flags.push_back(f);
  j["boundary"] = flags;
  return j;
}

inline std::string count_text(const Count& c) { return c ? std::to_string(*c) : "undefined"; }
inline std::string pair_text(const CountPair& p) {
  return p ? "(" + std::to_string(p->first) + "," + std::to_string(p->second) + ")" : "undefined";
}

inline json document(json inputs, json results, json diagnostics = json::object()) {
  json d;
  d["inputs"] = std::move(inputs);
  d["results"] = std::move(results);
  d["diagnostics"] = std::move(diagnostics);
  return d;
}

/// Output stream for --out, falling back to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw PreconditionError("cannot open output file '" + path + "'");
      os_ = file_.get();
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

inline json settings_json(const RunConfig& cfg) {
  return {{"quadrature_n", cfg.quadrature_n},
          {"edge_delta", num(cfg.edge_delta)},
          {"grid_n", cfg.grid_n}};
}

// ---------------------------------------------------------------------------
// Subcommands

inline int cmd_band(const RunConfig& cfg, const std::string& k_text, std::ostream& out) {
  const Quasimomentum K = parse_quasimomentum(k_text);
  const Band b = band_edges(K);
  if (cfg.json_output) {
    out << document({{"K", num_array({K[0], K[1], K[2]})}},
                    {{"e_min", num(b.e_min)}, {"e_max", num(b.e_max)}})
               .dump(2)
        << '\n';
  } else {
    out << "e_min=" << fmt(b.e_min) << "\ne_max=" << fmt(b.e_max) << '\n';
  }
  return 0;
}

inline int cmd_afuncs(const RunConfig& cfg, const AFunctionEvaluator& eval, double z,
                      std::ostream& out) {
  const AFunctions a = eval(z);
  const char* path = eval.path_for(z) == EvaluationPath::torus ? "torus" : "bessel";
  const AFunctions t = torus_a_functions(z, eval.grid());
  const AFunctions b = z > 24.0 ? reflect(bessel_a_functions(24.0 - z)) : bessel_a_functions(z);
  double gap = 0.0;
  for (AKind k : {AKind::a11, AKind::a12, AKind::a22, AKind::a_a12})
    gap = std::max(gap, std::abs(select(t, k) - select(b, k)));
  auto values = [](const AFunctions& x) {
    return json{{"a11", num(x.a11)}, {"a12", num(x.a12)}, {"a22", num(x.a22)},
                {"a_a12", num(x.a_a12)}};
  };
  if (cfg.json_output) {
    json results = values(a);
    results["torus"] = values(t);
    results["bessel"] = values(b);
    out << document({{"z", num(z)}}, results,
                    {{"path", path},
                     {"reflected", z > 24.0},
                     {"path_discrepancy", num(gap)},
                     {"settings", settings_json(cfg)}})
               .dump(2)
        << '\n';
  } else {
    char line[160];
    out << "name          selected             torus                bessel\n";
    for (AKind k : {AKind::a11, AKind::a12, AKind::a22, AKind::a_a12}) {
      std::snprintf(line, sizeof line, "%-8s %20.12g %20.12g %20.12g\n",
                    std::string(to_string(k)).c_str(), select(a, k), select(t, k), select(b, k));
      out << line;
    }
    out << "path=" << path << "\ndiscrepancy=" << fmt(gap) << '\n';
  }
  return 0;
}

inline int cmd_consts(const RunConfig& cfg, std::ostream& out) {
  const BandEdgeConstants& k = band_edge_constants();
  const json r{{"a11_0", num(k.at_edge.a11)},   {"a12_0", num(k.at_edge.a12)},
               {"a22_0", num(k.at_edge.a22)},   {"a_a12_0", num(k.at_edge.a_a12)},
               {"mu0", num(k.mu0)},             {"mu2_crit", num(k.mu2_crit)}};
  if (cfg.json_output) {
    out << document(json::object(), r).dump(2) << '\n';
  } else {
    for (auto it = r.begin(); it != r.end(); ++it)
      out << it.key() << '=' << fmt(it.value().get<double>()) << '\n';
  }
  return 0;
}

inline int cmd_det(const RunConfig& cfg, const AFunctionEvaluator& eval, const CouplingPair& c,
                   double z, std::ostream& out) {
  const AFunctions a = eval(z);
  const double ds = delta_s(c, a);
  const double da = delta_a12(c.mu2, a);
  const ThresholdPolynomials t = threshold_polys(c);
  if (cfg.json_output) {
    out << document({{"mu1", num(c.mu1)}, {"mu2", num(c.mu2)}, {"z", num(z)}},
                    {{"delta_s", num(ds)},
                     {"delta_a12", num(da)},
                     {"threshold_minus", num(t.a_minus)},
                     {"threshold_plus", num(t.a_plus)}},
                    {{"settings", settings_json(cfg)}})
               .dump(2)
        << '\n';
  } else {
    out << "delta_s=" << fmt(ds) << "\ndelta_a12=" << fmt(da) << "\nthreshold_minus="
        << fmt(t.a_minus) << "\nthreshold_plus=" << fmt(t.a_plus) << '\n';
  }
  return 0;
}

inline json lines_json(const std::vector<SpectralLine>& lines) {
  json a = json::array();
  for (const auto& l : lines) {
    a.push_back({{"energy", num(l.energy)},
                 {"multiplicity", l.multiplicity},
                 {"sector", std::string(to_string(l.sector))},
                 {"coincident", l.coincident}});
  }
  return a;
}

inline int cmd_spectrum(const RunConfig& cfg, const AFunctionEvaluator& eval,
                        const CouplingPair& c, const std::string& side, std::ostream& out) {
  if (side != "below" && side != "above" && side != "both")
    throw PreconditionError("--side must be below, above or both");
  const bool want_below = side != "above";
  const bool want_above = side != "below";
  const FullSpectrum f = full_spectrum_zero_k(c, eval);

  auto sector_json = [&](const SectorSpectrum& s) {
    json j;
    j["below"] = want_below ? num_array(s.below) : json::array();
    j["above"] = want_above ? num_array(s.above) : json::array();
    return j;
  };
  auto empty = std::vector<SpectralLine>{};
  if (cfg.json_output) {
    json results{{"S", sector_json(f.s)},
                 {"A12", sector_json(f.a12)},
                 {"MIX", sector_json(f.mix)},
                 {"full",
                  {{"below", lines_json(want_below ? f.below : empty)},
                   {"above", lines_json(want_above ? f.above : empty)},
                   {"count_below", want_below ? f.count(Side::below) : 0},
                   {"count_above", want_above ? f.count(Side::above) : 0}}}};
    json marginal{{"S", {{"below", num_array(f.s.marginal_below)},
                         {"above", num_array(f.s.marginal_above)}}},
                  {"A12", {{"below", num_array(f.a12.marginal_below)},
                           {"above", num_array(f.a12.marginal_above)}}}};
    out << document({{"mu1", num(c.mu1)}, {"mu2", num(c.mu2)}, {"side", side}}, results,
                    {{"threshold_marginal", marginal}, {"settings", settings_json(cfg)}})
               .dump(2)
        << '\n';
    return 0;
  }
  for (Side s : {Side::below, Side::above}) {
    if ((s == Side::below && !want_below) || (s == Side::above && !want_above)) continue;
    out << to_string(s) << ": " << f.count(s) << " eigenvalue(s)\n";
    for (const auto& l : f.on(s)) {
      out << "  " << fmt(l.energy) << "  sector=" << to_string(l.sector)
          << (l.sector == Sector::a12 ? "+MIX" : "") << "  multiplicity=" << l.multiplicity
          << (l.coincident ? "  coincident" : "") << '\n';
    }
  }
  const auto& mb = f.s.marginal_below;
  if (!mb.empty() || !f.s.marginal_above.empty() || !f.a12.marginal_below.empty() ||
      !f.a12.marginal_above.empty()) {
    out << "threshold-marginal roots present (not counted)\n";
  }
  return 0;
}

inline int cmd_eigenfunction(const RunConfig& cfg, const AFunctionEvaluator& eval,
                             const CouplingPair& c, double z, const std::string& sector_name,
                             int samples, std::ostream& out) {
  if (samples < 1) throw PreconditionError("--samples must be >= 1");
  std::function<double(const MomentumPoint&)> f;
  json diag;
  if (sector_name == "S") {
    const EigenfunctionS e = eigenfunction_s(c, z, eval);
    f = e;
    diag = {{"c1", num(e.c1 * e.norm_constant)},
            {"c2", num(e.c2 * e.norm_constant)},
            {"system_residual", num(e.system_residual())},
            {"degenerate", e.degenerate}};
  } else if (sector_name == "A12" || sector_name == "MIX") {
    const EigenfunctionA12 e =
        eigenfunction_a12(c.mu2, z, sector_name == "A12" ? Sector::a12 : Sector::mix, eval);
    f = e;
    diag = {{"norm_constant", num(e.norm_constant)}};
  } else {
    throw PreconditionError("--sector must be S, A12 or MIX");
  }
  Sink sink(cfg.out_path, out);
  std::ostream& os = sink.stream();
  os << "p1,p2,p3,f\n";
  const double h = two_pi / samples;
  for (int i = 0; i < samples; ++i)
    for (int j = 0; j < samples; ++j)
      for (int k = 0; k < samples; ++k) {
        const double p1 = -pi + (i + 0.5) * h, p2 = -pi + (j + 0.5) * h,
                     p3 = -pi + (k + 0.5) * h;
        os << fmt(p1) << ',' << fmt(p2) << ',' << fmt(p3) << ','
           << fmt(f(MomentumPoint{p1, p2, p3})) << '\n';
      }
  if (!cfg.out_path.empty()) {
    if (cfg.json_output) {
      out << document({{"mu1", num(c.mu1)}, {"mu2", num(c.mu2)}, {"z", num(z)},
                       {"sector", sector_name}},
                      {{"out", cfg.out_path}, {"rows", samples * samples * samples}}, diag)
                 .dump(2)
          << '\n';
    } else {
      out << "wrote " << samples * samples * samples << " rows to " << cfg.out_path << '\n';
    }
  }
  return 0;
}

inline int cmd_classify(const RunConfig& cfg, const CouplingPair& c, std::ostream& out) {
  const RegionReport r = classify(c);
  if (cfg.json_output) {
    out << document({{"mu1", num(c.mu1)}, {"mu2", num(c.mu2)}}, report_json(r),
                    {{"mu0", num(band_edge_constants().mu0)},
                     {"mu2_crit", num(band_edge_constants().mu2_crit)}})
               .dump(2)
        << '\n';
  } else {
    out << "a_minus=" << count_text(r.a_minus) << "\na_plus=" << count_text(r.a_plus)
        << "\nb_minus=" << count_text(r.b_minus) << "\nb_plus=" << count_text(r.b_plus)
        << "\nd_minus=" << count_text(r.d_minus) << "\nd_plus=" << count_text(r.d_plus)
        << "\ng_label=" << pair_text(r.g_label)
        << "\ng_label_offaxis=" << pair_text(r.g_label_offaxis)
        << "\nsector_sum=" << pair_text(r.sector_sum)
        << "\nboundary=" << boundary_names(r.boundary) << '\n';
  }
  return 0;
}

inline const char* phase_header =
    "mu1,mu2,a_minus,a_plus,b_minus,b_plus,sum_below,sum_above,det_below,det_above,flags";

inline int cmd_phase_diagram(const RunConfig& cfg, const AFunctionEvaluator& eval,
                             const std::string& mu1_text, const std::string& mu2_text,
                             bool verify, std::ostream& out) {
  const ScanAxis ax1 = parse_axis(mu1_text);
  const ScanAxis ax2 = parse_axis(mu2_text);
  ScanOptions opt;
  opt.verify = verify;
  opt.evaluator = &eval;
  const auto rows = phase_scan(ax1, ax2, opt);
  const auto overfull = overfull_points(rows);
  int mismatches = 0;
  {
    Sink sink(cfg.out_path, out);
    std::ostream& os = sink.stream();
    auto opt_text = [](const Count& c) { return c ? std::to_string(*c) : std::string(); };
    os << phase_header << '\n';
    for (const auto& row : rows) {
      const auto& r = row.report;
      std::string flags = boundary_names(r.boundary);
      const auto& s = r.sector_sum;
      if (s && (s->first > 3 || s->second > 3)) flags += flags.empty() ? "Overfull" : " Overfull";
      if (row.det_counts && s && *row.det_counts != *s) {
        flags += flags.empty() ? "DetMismatch" : " DetMismatch";
        ++mismatches;
      }
      os << fmt(r.couplings.mu1) << ',' << fmt(r.couplings.mu2) << ',' << opt_text(r.a_minus)
         << ',' << opt_text(r.a_plus) << ',' << opt_text(r.b_minus) << ','
         << opt_text(r.b_plus) << ',' << (s ? std::to_string(s->first) : "") << ','
         << (s ? std::to_string(s->second) : "") << ','
         << (row.det_counts ? std::to_string(row.det_counts->first) : "") << ','
         << (row.det_counts ? std::to_string(row.det_counts->second) : "") << ',' << flags
         << '\n';
    }
  }
  if (!cfg.out_path.empty()) {
    if (cfg.json_output) {
      json pts = json::array();
      for (const auto& row : overfull) {
        json p = report_json(row.report);
        p["mu1"] = num(row.report.couplings.mu1);
        p["mu2"] = num(row.report.couplings.mu2);
        pts.push_back(p);
      }
      out << document({{"mu1", mu1_text}, {"mu2", mu2_text}, {"verify", verify}},
                      {{"rows", rows.size()}, {"out", cfg.out_path}},
                      {{"overfull_points", overfull.size()},
                       {"overfull", pts},
                       {"det_mismatches", mismatches}})
                 .dump(2)
          << '\n';
    } else {
      out << "rows=" << rows.size() << "\noverfull_points=" << overfull.size() << '\n';
      if (verify) out << "det_mismatches=" << mismatches << '\n';
    }
  }
  return mismatches == 0 ? 0 : 1;
}

inline int cmd_curves(const RunConfig& cfg, const std::string& side_text,
                      const std::string& mu1_text, std::ostream& out) {
  if (side_text != "minus" && side_text != "plus")
    throw PreconditionError("--side must be minus or plus");
  const Side side = side_text == "minus" ? Side::below : Side::above;
  const ScanAxis ax = parse_axis(mu1_text);
  Sink sink(cfg.out_path, out);
  std::ostream& os = sink.stream();
  os << "mu1,mu2_curve\n";
  const double pole = side == Side::below ? -12.0 : 12.0;
  for (int i = 0; i < ax.n; ++i) {
    const double m1 = ax.at(i);
    if (m1 == pole) continue;
    os << fmt(m1) << ',' << fmt(critical_curve(side, m1)) << '\n';
  }
  return 0;
}

inline int cmd_verify(const RunConfig& cfg, const AFunctionEvaluator& eval, const CouplingPair& c,
                      const std::string& k_text, std::optional<double> margin, std::ostream& out) {
  const Quasimomentum K = k_text.empty() ? Quasimomentum{} : parse_quasimomentum(k_text);
  const bool zero_k = K == Quasimomentum{};
  const OracleCounts oc =
      oracle_counts(c, K, cfg.grid_n, margin ? *margin : default_margin(cfg.grid_n));
  const FullSpectrum f = full_spectrum_zero_k(c, eval);
  const RegionReport r = classify(c);

  bool pass = true;
  json results;
  results["oracle_below"] = oc.below;
  results["oracle_above"] = oc.above;
  results["oracle_eigen_below"] = num_array(oc.eigen_below);
  results["oracle_eigen_above"] = num_array(oc.eigen_above);
  std::vector<double> distances;
  if (zero_k) {
    results["det_below"] = f.count(Side::below);
    results["det_above"] = f.count(Side::above);
    pass = oc.below == f.count(Side::below) && oc.above == f.count(Side::above);
    const auto ev = eigenvalues_dense(assemble(c, K, cfg.grid_n, GridReduction::even_parity));
    for (Side s : {Side::below, Side::above})
      for (const auto& l : f.on(s)) {
        double d = INFINITY;
        for (double e : ev) d = std::min(d, std::abs(e - l.energy));
        distances.push_back(d);
      }
    results["root_distances"] = num_array(distances);
  } else {
    // Lower bounds hold for table labels with alpha + beta < 3 or (3,0), (0,3).
    const auto& g = r.g_label;
    const bool covered = g && (g->first + g->second < 3 || *g == std::make_pair(3, 0) ||
                               *g == std::make_pair(0, 3));
    if (covered) {
      results["bound_below"] = g->first;
      results["bound_above"] = g->second;
      pass = oc.below >= g->first && oc.above >= g->second;
    } else {
      results["bound_below"] = nullptr;
      results["bound_above"] = nullptr;
    }
  }
  results["pass"] = pass;

  if (cfg.json_output) {
    out << document({{"mu1", num(c.mu1)},
                     {"mu2", num(c.mu2)},
                     {"K", num_array({K[0], K[1], K[2]})},
                     {"grid_n", cfg.grid_n}},
                    results,
                    {{"margin", num(oc.margin)},
                     {"band", num_array({oc.band.e_min, oc.band.e_max})},
                     {"g_label", pair_json(r.g_label)},
                     {"settings", settings_json(cfg)}})
               .dump(2)
        << '\n';
  } else {
    if (zero_k) {
      out << "det_below=" << f.count(Side::below) << "\ndet_above=" << f.count(Side::above)
          << '\n';
    } else if (!results["bound_below"].is_null()) {
      out << "bound_below=" << results["bound_below"].get<int>()
          << "\nbound_above=" << results["bound_above"].get<int>() << '\n';
    } else {
      out << "bound=none\n";
    }
    out << "oracle_below=" << oc.below << "\noracle_above=" << oc.above << '\n';
    for (std::size_t i = 0; i < distances.size(); ++i)
      out << "root_distance[" << i << "]=" << fmt(distances[i]) << '\n';
    out << (pass ? "PASS" : "FAIL") << '\n';
  }
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------

/// Applies values from a JSON config file to settings whose flags were not
/// given on the command line.
inline void merge_config(RunConfig& cfg, const std::string& path, const CLI::App& app,
                         const CLI::App& sub) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw PreconditionError("invalid config file '" + path + "': " + e.what());
  }
  auto unset = [&](const char* flag) { return app.count(flag) == 0 && sub.count(flag) == 0; };
  try {
    if (j.contains("quadrature_n") && unset("--quadrature-n"))
      cfg.quadrature_n = j["quadrature_n"].get<int>();
    if (j.contains("grid_n") && unset("--grid")) cfg.grid_n = j["grid_n"].get<int>();
    if (j.contains("edge_delta") && unset("--edge-delta"))
      cfg.edge_delta = j["edge_delta"].get<double>();
    if (j.contains("json") && unset("--json")) cfg.json_output = j["json"].get<bool>();
  } catch (const json::exception& e) {
    throw PreconditionError("invalid value in config file '" + path + "': " + e.what());
  }
}

/// Entry point. Exit codes: 0 success, 2 usage or domain error, 1 numeric
/// failure, inconsistency, or failed verification.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete spectrum of the two-boson lattice operator on Z^3"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  app.add_option("--config", config_path, "JSON file with default settings");
  app.add_option("--quadrature-n", cfg.quadrature_n, "Torus quadrature points per axis");
  app.add_option("--edge-delta", cfg.edge_delta, "Distance to the band below which the Bessel path is used");
  app.add_option("--grid", cfg.grid_n, "Oracle grid points per axis");
  app.add_flag("--json", cfg.json_output, "Machine-readable output");
  app.add_option("--out", cfg.out_path, "Output file for CSV data");

  double mu1 = 0.0, mu2 = 0.0, z = 0.0;
  std::string k_text, side = "both", range1, range2, sector = "S";
  int samples = 16;
  bool verify = false;
  std::optional<double> margin;

  auto add_couplings = [&](CLI::App* s) {
    s->add_option("--mu1", mu1, "On-site coupling")->required();
    s->add_option("--mu2", mu2, "Nearest-neighbour coupling")->required();
  };
  // Subcommand-level copies of the shared flags so they may follow the name.
  auto add_common = [&](CLI::App* s, const char* quadrature_names = "--quadrature-n") {
    s->add_flag("--json", cfg.json_output, "Machine-readable output");
    s->add_option("--out", cfg.out_path, "Output file");
    s->add_option("--grid", cfg.grid_n, "Oracle grid points per axis");
    s->add_option(quadrature_names, cfg.quadrature_n, "Torus quadrature points per axis");
    s->add_option("--edge-delta", cfg.edge_delta, "Bessel-path switch distance");
    s->add_option("--config", config_path, "JSON file with default settings");
  };

  auto* band = app.add_subcommand("band", "Band edges of the free operator at K");
  band->add_option("--K", k_text, "Quasimomentum kx,ky,kz (numbers or multiples of pi)")
      ->default_str("0,0,0");
  add_common(band);

  auto* afuncs = app.add_subcommand("afuncs", "Resolvent integrals at z outside [0, 24]");
  afuncs->add_option("--z", z, "Spectral parameter")->required();
  add_common(afuncs, "--quadrature-n,--n");

  auto* consts = app.add_subcommand("consts", "Band-edge constants");
  add_common(consts);

  auto* det = app.add_subcommand("det", "Sector determinants at z");
  add_couplings(det);
  det->add_option("--z", z, "Spectral parameter")->required();
  add_common(det);

  auto* spectrum = app.add_subcommand("spectrum", "Discrete spectrum at K = 0");
  add_couplings(spectrum);
  spectrum->add_option("--side", side, "below, above or both");
  add_common(spectrum);

  auto* eigen = app.add_subcommand("eigenfunction", "Sample an eigenfunction as CSV");
  add_couplings(eigen);
  eigen->add_option("--z", z, "Eigenvalue (a determinant root)")->required();
  eigen->add_option("--sector", sector, "S, A12 or MIX");
  eigen->add_option("--samples", samples, "Points per axis of the sampling grid");
  add_common(eigen);

  auto* cls = app.add_subcommand("classify", "Region memberships of a coupling pair");
  add_couplings(cls);
  add_common(cls);

  auto* phase = app.add_subcommand("phase-diagram", "Region scan over a coupling rectangle");
  phase->add_option("--mu1", range1, "lo:hi:n")->required();
  phase->add_option("--mu2", range2, "lo:hi:n")->required();
  phase->add_flag("--verify", verify, "Also count eigenvalues with determinants");
  add_common(phase);

  auto* curves = app.add_subcommand("curves", "Critical curve samples");
  curves->add_option("--side", side, "minus or plus")->required();
  curves->add_option("--mu1", range1, "lo:hi:n")->required();
  add_common(curves);

  auto* ver = app.add_subcommand("verify", "Compare determinant counts with the grid oracle");
  add_couplings(ver);
  ver->add_option("--K", k_text, "Quasimomentum kx,ky,kz");
  ver->add_option("--margin", margin, "Out-of-band margin for oracle counts (default 10/N)");
  add_common(ver);

  std::vector<const char*> argv{"lbs"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return 2;
  }

  try {
    if (!config_path.empty()) {
      merge_config(cfg, config_path, app, *app.get_subcommands().front());
    }
    cfg.validate();
    const AFunctionEvaluator eval(cfg.quadrature_n, cfg.edge_delta);
    const CouplingPair c{mu1, mu2};

    if (band->parsed()) return cmd_band(cfg, k_text.empty() ? "0,0,0" : k_text, out);
    if (afuncs->parsed()) return cmd_afuncs(cfg, eval, z, out);
    if (consts->parsed()) return cmd_consts(cfg, out);
    if (det->parsed()) return cmd_det(cfg, eval, c, z, out);
    if (spectrum->parsed()) return cmd_spectrum(cfg, eval, c, side, out);
    if (eigen->parsed()) return cmd_eigenfunction(cfg, eval, c, z, sector, samples, out);
    if (cls->parsed()) return cmd_classify(cfg, c, out);
    if (phase->parsed()) return cmd_phase_diagram(cfg, eval, range1, range2, verify, out);
    if (curves->parsed()) return cmd_curves(cfg, side, range1, out);
    if (ver->parsed()) return cmd_verify(cfg, eval, c, k_text, margin, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return 1;
  } catch (const InconsistencyError& e) {
    err << "inconsistency: " << e.what() << '\n';
    return 1;
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace lbs::cli
