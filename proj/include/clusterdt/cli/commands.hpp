#pragma once

// Report builders behind the clusterdt command-line tool. Each command returns
// a JSON document (keys sorted, so output is byte-stable), optional plain-text
// output (CSV or DOT) and the process exit code.

#include "clusterdt/cli/format.hpp"
#include "clusterdt/cli/quiver_file.hpp"
#include "clusterdt/coxeter.hpp"
#include "clusterdt/exchange_graph.hpp"
#include "clusterdt/stability.hpp"
#include "clusterdt/trichotomy.hpp"
#include "clusterdt/tropical.hpp"

#include "json.hpp"

#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace clusterdt::cli {

using nlohmann::json;

enum ExitCode : int {
  kOk = 0,
  kParseError = 2,
  kPrecondition = 3,
  kInconsistent = 4,
  kTruncated = 5,
};

struct CliOptions {
  std::size_t samples = 5;
  std::size_t max_iters = 100;
  std::size_t keller_depth = 8;
  std::size_t keller_max_seeds = 5000;
  std::optional<std::string> start;
  std::size_t iters = 10;
  Direction direction = Direction::Forward;
  int digits = 13;
  bool paper_style = false;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  bool require_complete = false;
  std::size_t max_seeds = 10000;
  bool csv = false;
  std::optional<std::string> export_path;

  FormatStyle style() const { return {digits, paper_style}; }
};

struct CommandOutput {
  json report;
  std::string text;  // CSV or DOT when requested
  int exit_code = kOk;
};

// ---------------------------------------------------------------------------
// JSON pieces.

inline json to_json(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return v.str();
}

template <class T>
json matrix_json(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<T, Integer>)
        row.push_back(to_json(m(i, j)));
      else
        row.push_back(m(i, j));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json point_json(const TropicalPoint& x) {
  json a = json::array();
  for (const auto& v : x) a.push_back(to_string(v));
  return a;
}

inline json quiver_json(const QuiverFile& q) {
  json j;
  j["name"] = q.name ? json(*q.name) : json(nullptr);
  j["n"] = q.n;
  j["b"] = matrix_json(q.matrix().matrix());
  return j;
}

inline json spectral_json(const SpectralResult& s, const FormatStyle& st) {
  json j;
  j["char_poly"] = s.char_poly.str();
  json c = json::array();
  for (const auto& v : s.char_poly.coeffs()) c.push_back(to_json(v));
  j["char_poly_coefficients_ascending"] = c;
  j["rho"] = format_rational(s.midpoint(), st);
  j["rho_enclosure"] = {to_string(s.lo), to_string(s.hi)};
  j["tolerance"] = format_double(s.tolerance, {std::max(st.digits, 20), true});
  j["unit_spectrum"] = s.unit_spectrum;
  return j;
}

inline json coxeter_json(const ExchangeMatrix& b, const FormatStyle& st) {
  const auto d = coxeter_data(b);
  json j;
  j["m"] = matrix_json(d.m.m);
  j["phi"] = matrix_json(d.phi.phi);
  j["phi_inverse"] = matrix_json(d.phi.inverse);
  j["spectrum"] = spectral_json(d.spectrum, st);
  j["palindromic"] = d.palindromic;
  j["admissible_order"] = admissible_labeling(b).order;
  return j;
}

/// Maximal runs of equal signs: [{"sign": "(-,-)", "from": 1, "to": 99}, ...].
inline json sign_runs(const std::vector<SignVector>& signs) {
  json runs = json::array();
  std::size_t i = 0;
  while (i < signs.size()) {
    std::size_t j = i;
    while (j + 1 < signs.size() && signs[j + 1] == signs[i]) ++j;
    runs.push_back({{"sign", signs[i].str()}, {"from", i}, {"to", j}});
    i = j + 1;
  }
  return runs;
}

inline json stability_json(const StabilityVerdict& v, const FormatStyle& st) {
  json j;
  j["status"] = to_string(v.status);
  j["stable_sign"] = v.stable_sign ? json(v.stable_sign->str()) : json(nullptr);
  j["stable_matrix"] = v.stable_matrix ? matrix_json(v.stable_matrix->e) : json(nullptr);
  j["stretch_factor"] = v.stretch_factor ? spectral_json(*v.stretch_factor, st) : json(nullptr);
  json samples = json::array();
  for (const auto& t : v.evidence) {
    json s;
    s["start"] = point_json(t.start);
    s["iterations"] = t.iterations;
    s["n0"] = t.n0;
    s["sign_runs"] = sign_runs(t.signs);
    if (t.recurrence)
      s["recurrence"] = {{"first", t.recurrence->first}, {"period", t.recurrence->period}};
    else
      s["recurrence"] = nullptr;
    samples.push_back(std::move(s));
  }
  j["samples"] = samples;
  if (v.witness) {
    json w;
    w["sample"] = v.witness->sample;
    w["other_sample"] = v.witness->other_sample ? json(*v.witness->other_sample) : json(nullptr);
    w["reason"] = v.witness->reason;
    const auto& t = v.evidence[v.witness->sample];
    if (t.recurrence) {
      json ray = json::array();
      for (const auto& c : t.recurrence->ray) ray.push_back(to_json(c));
      w["recurring_ray"] = ray;
    }
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

inline json keller_json(const KellerProbe& k) {
  return {{"sup_multiplicity_found", k.sup_multiplicity_found},
          {"exhaustive", k.exhaustive},
          {"classes_seen", k.classes_seen},
          {"depth_reached", k.depth_reached},
          {"canonical_keys", k.canonical}};
}

inline json entropy_json(const EntropyReport& e, const FormatStyle& st) {
  json j;
  j["type"] = to_string(e.type);
  j["h_algebraic"] = format_double(e.h_algebraic, st);
  j["h_categorical"] = format_double(e.h_categorical, st);
  j["log_rho_bounds"] = {format_double(e.log_lo, st), format_double(e.log_hi, st)};
  j["rho_enclosure"] = {to_string(e.rho.lo), to_string(e.rho.hi)};
  j["source"] = e.source;
  return j;
}

inline json vote_json(std::optional<RepresentationType> v) { return v ? json(to_string(*v)) : json(nullptr); }

inline json trichotomy_json(const TrichotomyReport& r, const FormatStyle& st) {
  json j;
  j["verdict"] = to_string(r.verdict);
  j["consistent"] = r.consistent;
  j["disagreements"] = r.disagreements;
  j["cartan"] = {{"matrix", matrix_json(r.by_cartan.matrix)},
                 {"class", to_string(r.by_cartan.cls)},
                 {"vote", to_string(r.cartan_vote)}};
  j["spectrum"] = spectral_json(r.by_spectrum, st);
  j["spectrum"]["vote"] = to_string(r.spectrum_vote);
  j["sign_stability"] = stability_json(r.by_sign_stability, st);
  j["sign_stability"]["vote"] = vote_json(r.sign_vote);
  if (r.keller_probe) {
    j["keller"] = keller_json(*r.keller_probe);
    j["keller"]["vote"] = vote_json(r.keller_vote);
  } else {
    j["keller"] = nullptr;
  }
  return j;
}

// ---------------------------------------------------------------------------

/// "1,1,-2/3" -> point; every coordinate must be nonzero.
inline TropicalPoint parse_start(const std::optional<std::string>& text, std::size_t n) {
  if (!text) return TropicalPoint(n, Rational(1));
  TropicalPoint x;
  std::stringstream ss(*text);
  std::string item;
  while (std::getline(ss, item, ',')) x.push_back(parse_rational(detail::trim(item)));
  if (x.size() != n)
    throw std::invalid_argument("--start has " + std::to_string(x.size()) + " coordinates, quiver has " +
                                std::to_string(n) + " vertices");
  if (!strictly_nonzero(x)) throw std::invalid_argument("--start must have nonzero coordinates");
  return x;
}

inline json base_report(const QuiverFile& q) {
  json j;
  j["quiver"] = quiver_json(q);
  return j;
}

inline CommandOutput cmd_coxeter(const QuiverFile& q, const CliOptions& o) {
  CommandOutput out;
  out.report = base_report(q);
  out.report["coxeter"] = coxeter_json(q.matrix(), o.style());
  return out;
}

inline CommandOutput cmd_signs(const QuiverFile& q, const CliOptions& o) {
  const auto b = q.matrix();
  const auto gamma = dt_path(b);
  TropicalPoint x = parse_start(o.start, b.size());
  CommandOutput out;
  out.report = base_report(q);
  json rows = json::array();
  std::ostringstream csv;
  csv << "n";
  for (std::size_t t = 0; t < gamma.length(); ++t) csv << ",s" << t;
  csv << '\n';
  json start = point_json(x);
  for (std::size_t n = 0; n <= o.iters; ++n) {
    const auto run = run_path(x, gamma);
    rows.push_back({{"n", n}, {"sign", run.sign.str()}, {"point", point_json(x)}});
    csv << n;
    for (auto s : run.sign.signs) csv << ',' << sign_char(s);
    csv << '\n';
    x = run.image;
  }
  out.report["signs"] = {{"start", start}, {"path", gamma.steps}, {"rows", rows}};
  if (o.csv) out.text = csv.str();
  return out;
}

inline CommandOutput cmd_orbit(const QuiverFile& q, const CliOptions& o) {
  const auto b = q.matrix();
  const TropicalPoint x = parse_start(o.start, b.size());
  const auto trace = orbit_trace(b, x, o.iters, o.direction);
  const auto st = o.style();
  CommandOutput out;
  out.report = base_report(q);
  json rows = json::array();
  std::ostringstream csv;
  csv << "n";
  for (std::size_t i = 0; i < b.size(); ++i) csv << ",u" << i;
  csv << '\n';
  for (const auto& r : trace.rows) {
    const auto unit = format_unit(r.exact, st);
    rows.push_back({{"n", r.n}, {"unit", unit}, {"exact", point_json(r.exact)}});
    csv << r.n;
    for (const auto& u : unit) csv << ',' << u;
    csv << '\n';
  }
  json orbit;
  orbit["start"] = point_json(x);
  orbit["direction"] = to_string(o.direction);
  orbit["digits"] = st.digits;
  orbit["paper_style"] = st.paper;
  orbit["rows"] = rows;
  orbit["limit_direction"] = trace.limit_direction ? json(format_high(*trace.limit_direction, st)) : json(nullptr);
  out.report["orbit"] = orbit;
  if (o.csv) out.text = csv.str();
  return out;
}

inline ClassifyOptions classify_options(const CliOptions& o) {
  ClassifyOptions c;
  c.stability.samples_per_cone = o.samples;
  c.stability.max_iters = o.max_iters;
  c.stability.seed = o.seed;
  c.stability.threads = o.threads;
  c.keller_depth = o.keller_depth;
  c.keller_max_seeds = o.keller_max_seeds;
  return c;
}

inline CommandOutput cmd_classify(const QuiverFile& q, const CliOptions& o) {
  const auto b = q.matrix();
  CommandOutput out;
  out.report = base_report(q);
  try {
    out.report["trichotomy"] = trichotomy_json(classify(b, classify_options(o)), o.style());
  } catch (const InconsistentMethods& e) {
    out.report["trichotomy"] = trichotomy_json(e.report, o.style());
    out.exit_code = kInconsistent;
    return out;
  }
  out.report["entropy"] = entropy_json(entropy_report(b), o.style());
  return out;
}

inline CommandOutput cmd_entropy(const QuiverFile& q, const CliOptions& o) {
  CommandOutput out;
  out.report = base_report(q);
  out.report["entropy"] = entropy_json(entropy_report(q.matrix()), o.style());
  return out;
}

inline CommandOutput cmd_graph(const QuiverFile& q, const CliOptions& o) {
  const auto b = q.matrix();
  const auto g = explore(b, o.max_seeds);
  CommandOutput out;
  out.report = base_report(q);
  json j;
  j["vertices"] = g.vertices.size();
  j["edges"] = g.undirected_edge_count();
  j["complete"] = g.complete;
  j["max_seeds"] = o.max_seeds;
  if (is_acyclic(b)) {
    const auto order = loop_order(b, dt_path(b), 100);
    j["dt_loop_order"] = order ? json(*order) : json(nullptr);
  } else {
    j["dt_loop_order"] = nullptr;
  }
  out.report["graph"] = j;
  if (o.export_path) {
    std::ofstream f(*o.export_path);
    if (!f) throw std::runtime_error("cannot write '" + *o.export_path + "'");
    f << to_dot(g, q.name.value_or("exchange_graph"));
  }
  if (o.require_complete && !g.complete) out.exit_code = kTruncated;
  return out;
}

}  // namespace clusterdt::cli
