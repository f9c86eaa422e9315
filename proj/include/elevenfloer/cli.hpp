#pragma once

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "elevenfloer/catalog.hpp"
#include "elevenfloer/complex.hpp"
#include "elevenfloer/error.hpp"
#include "elevenfloer/floer.hpp"
#include "elevenfloer/invariants.hpp"
#include "elevenfloer/io.hpp"
#include "elevenfloer/isomorphism.hpp"
#include "elevenfloer/pretzel.hpp"
#include "elevenfloer/render.hpp"

namespace elevenfloer::cli {

using json = io::json;

enum ExitCode : int { kOk = 0, kInvalidInput = 1, kConsistency = 2, kIoFailure = 3 };

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ResidueCoverage:
    case ErrorKind::NotEmbeddable:
    case ErrorKind::NotConnected:
    case ErrorKind::NotS3:
    case ErrorKind::BadBasepoint:
    case ErrorKind::BadParams:
    case ErrorKind::Parse:
      return kInvalidInput;
    case ErrorKind::Io:
      return kIoFailure;
    default:
      return kConsistency;
  }
}

/// Result of one command: exit code plus what goes to stdout and stderr.
struct Outcome {
  int code = kOk;
  std::string out;
  std::string err;
};

inline Outcome failure(const Error& e) {
  return Outcome{exit_code_for(e.kind()), "", std::string(e.what()) + "\n"};
}

/// Everything a run learns about one knot.
struct RunReport {
  std::string knot;
  HfkTable table;
  int tau = 0;
  BoundsReport bounds;
  json checks = json::object();
};

enum class Format { Text, Json };

// ---------------------------------------------------------------- rendering

inline std::string group_text(const HfkEntry& e) {
  std::ostringstream os;
  bool first = true;
  if (e.rank > 0) {
    os << "Z";
    if (e.rank > 1) os << "^" << e.rank;
    os << "_(" << e.maslov << ")";
    first = false;
  }
  for (Int t : e.torsion) {
    os << (first ? "" : " + ") << "(Z/" << t << ")_(" << e.maslov << ")";
    first = false;
  }
  return os.str();
}

/// One line per Alexander grading from g down to -g, empty gradings shown as 0.
inline std::string table_text(const HfkTable& t) {
  std::ostringstream os;
  if (t.by_alexander.empty()) return "  (zero)\n";
  const int hi = t.by_alexander.rbegin()->first;
  const int lo = t.by_alexander.begin()->first;
  for (int a = hi; a >= lo; --a) {
    os << "  i = " << std::setw(3) << a << " : ";
    auto it = t.by_alexander.find(a);
    if (it == t.by_alexander.end()) {
      os << "0";
    } else {
      for (std::size_t k = 0; k < it->second.size(); ++k) os << (k ? " + " : "") << group_text(it->second[k]);
    }
    os << "\n";
  }
  return os.str();
}

inline json report_json(const RunReport& r) {
  json j;
  j["knot"] = r.knot;
  j["hfk"] = io::hfk_to_json(r.table);
  j["tau"] = r.tau;
  j["genus"] = r.table.genus;
  j["bounds"] = io::bounds_to_json(r.bounds);
  j["checks"] = r.checks;
  return j;
}

struct TextSelection {
  bool tau = false;
  bool genus = false;
  bool any() const { return tau || genus; }
};

inline std::string report_text(const RunReport& r, TextSelection sel = {}) {
  std::ostringstream os;
  if (sel.any()) {
    if (sel.tau) os << "tau = " << r.tau << "\n";
    if (sel.genus) os << "genus = " << r.table.genus << "\n";
    return os.str();
  }
  os << "HFK(" << r.knot << ")\n" << table_text(r.table);
  os << "tau = " << r.tau << ", genus = " << r.table.genus << "\n";
  for (const auto& s : r.bounds.statements) os << "  " << s << "\n";
  for (const auto& [k, v] : r.checks.items()) os << "check " << k << ": " << v.dump() << "\n";
  return os.str();
}

inline std::string render(const RunReport& r, Format f, TextSelection sel = {}) {
  return f == Format::Json ? report_json(r).dump(2) + "\n" : report_text(r, sel);
}

// ---------------------------------------------------------------- pipeline

/// Consistency checks shared by every complex; throws on the fatal ones.
inline json complex_checks(const FilteredComplex& c, const BigradedHomology& h) {
  json checks;
  checks["d_squared_zero"] = !verify_d_squared(c).has_value();
  checks["unit_coefficients"] =
      std::all_of(c.terms.begin(), c.terms.end(), [](const Term& t) { return t.sign == 1 || t.sign == -1; });
  auto hat = graded_homology(hat_complex(c));
  std::erase_if(hat, [](const auto& kv) { return kv.second.rank == 0 && kv.second.torsion.empty(); });
  checks["hat_homology_Z_in_degree_0"] = hat.size() == 1 && hat.begin()->first == 0 && hat.begin()->second == Group{1, {}};
  checks["torsion_free"] = h.torsion_free();
  checks["symmetric"] = !symmetry_violation(h).has_value();
  auto poly = euler_poly(h);
  checks["euler_symmetric"] = laurent_symmetric(poly);
  checks["euler_at_one"] = evaluate_at_one(poly);
  return checks;
}

inline RunReport report_for_complex(FilteredComplex c, const std::string& knot) {
  bool graded = std::all_of(c.generators.begin(), c.generators.end(),
                            [](const ComplexGenerator& g) { return g.maslov.has_value(); });
  if (!graded) c = normalize_gradings(std::move(c));
  RunReport r;
  r.knot = knot;
  BigradedHomology h = homology(c);
  r.checks = complex_checks(c, h);
  r.table = hfk_table(h, knot);
  r.tau = tau(c);
  r.table.tau = r.tau;
  r.bounds = bounds(r.tau, r.table.genus);
  return r;
}

inline RunReport report_for_diagram(const DiagramDescription& desc, const EngineOptions& opt,
                                    std::string* svg = nullptr) {
  Diagram11 d = validate(desc);
  EngineResult e = run_engine(d, opt);
  RunReport r = report_for_complex(e.complex, desc.name.empty() ? "diagram" : desc.name);
  r.checks["window_stable"] = true;
  r.checks["generators"] = e.complex.size();
  r.checks["bigon_classes"] = e.bigons.size();
  if (svg) *svg = render_svg(e.lifted);
  return r;
}

inline RunReport report_for_table(const HfkTable& t, int tau_value) {
  RunReport r;
  r.knot = t.knot;
  r.table = t;
  r.tau = tau_value;
  r.table.tau = tau_value;
  BigradedHomology h = t.to_homology();
  r.checks["symmetric"] = !symmetry_violation(h).has_value();
  r.checks["torsion_free"] = h.torsion_free();
  r.checks["euler_at_one"] = evaluate_at_one(euler_poly(h));
  r.bounds = bounds(tau_value, t.genus);
  return r;
}

// ---------------------------------------------------------------- commands

struct ComputeOptions {
  TextSelection select;
  std::string svg_path;
  Format format = Format::Text;
  int jobs = 1;
};

inline Outcome compute_one(const std::string& path, const ComputeOptions& opt) {
  try {
    json j = io::parse(io::read_text(path));
    RunReport r;
    std::string svg;
    if (j.is_object() && j.contains("terms")) {
      FilteredComplex c = io::complex_from_json(j);
      const std::string knot = c.name.empty() ? path : c.name;
      r = report_for_complex(std::move(c), knot);
      if (!opt.svg_path.empty()) throw Error(ErrorKind::Parse, "--svg needs a diagram file, not a complex");
    } else {
      DiagramDescription d = io::diagram_from_json(j);
      if (d.name.empty()) d.name = path;
      r = report_for_diagram(d, EngineOptions::from_environment(), opt.svg_path.empty() ? nullptr : &svg);
    }
    if (!opt.svg_path.empty()) io::write_text(opt.svg_path, svg);
    return Outcome{kOk, render(r, opt.format, opt.select), ""};
  } catch (const Error& e) {
    Outcome o = failure(e);
    o.err = path + ": " + o.err;
    return o;
  }
}

/// Runs every input, `jobs` at a time; output keeps input order.
inline Outcome cmd_compute(const std::vector<std::string>& paths, const ComputeOptions& opt) {
  if (paths.size() > 1 && !opt.svg_path.empty())
    return Outcome{kInvalidInput, "", "--svg accepts a single input\n"};
  std::vector<Outcome> results(paths.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < paths.size(); i = next++) results[i] = compute_one(paths[i], opt);
  };
  const std::size_t threads = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(opt.jobs, 1)), 1, paths.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Outcome all;
  const bool array = opt.format == Format::Json && paths.size() > 1;
  if (array) all.out += "[\n";
  bool first = true;
  for (const Outcome& r : results) {
    all.code = std::max(all.code, r.code);
    all.err += r.err;
    if (r.out.empty()) continue;
    if (!first) all.out += array ? ",\n" : opt.format == Format::Text ? "\n" : "";
    first = false;
    all.out += array ? r.out.substr(0, r.out.size() - 1) : r.out;
  }
  if (array) all.out += "\n]\n";
  return all;
}

enum class PretzelMode { ClosedForm, Oracle, Diagram, Compare };

inline Outcome cmd_pretzel(int m, int n, PretzelMode mode, Format format) {
  try {
    pretzel::Params p = pretzel::checked_params(m, n, mode == PretzelMode::ClosedForm ? 3 : 5);
    const std::string name = p.knot_name();
    auto oracle = [&] { return report_for_complex(pretzel::oracle_complex(m, n), name); };
    auto engine = [&] {
      DiagramDescription d = pretzel::build_diagram(m, n);
      return report_for_diagram(d, EngineOptions::from_environment());
    };
    RunReport r;
    switch (mode) {
      case PretzelMode::ClosedForm:
        r = report_for_table(pretzel::closed_form(m, n), -p.genus());
        break;
      case PretzelMode::Oracle:
        r = oracle();
        break;
      case PretzelMode::Diagram:
        r = engine();
        r.knot = name;
        r.table.knot = name;
        break;
      case PretzelMode::Compare: {
        RunReport from_oracle = oracle();
        RunReport from_engine = engine();
        HfkTable closed = pretzel::closed_form(m, n);
        const bool oracle_closed = from_oracle.table.same_groups(closed) && from_oracle.tau == -p.genus();
        const bool engine_closed = from_engine.table.same_groups(closed) && from_engine.tau == -p.genus();
        FilteredComplex geometric = run_engine(validate(pretzel::build_diagram(m, n))).complex;
        const bool iso = find_isomorphism(geometric, normalize_gradings(pretzel::oracle_complex(m, n)), true).has_value();
        r = from_oracle;
        r.checks["oracle_equals_closed_form"] = oracle_closed;
        r.checks["engine_equals_closed_form"] = engine_closed;
        r.checks["engine_isomorphic_to_oracle"] = iso;
        if (!(oracle_closed && engine_closed && iso)) {
          Outcome o{kConsistency, render(r, format), ""};
          o.err = std::string(Error(ErrorKind::CompareMismatch,
                                    name + " disagrees (oracle~closed-form " + (oracle_closed ? "yes" : "no") +
                                        ", engine~closed-form " + (engine_closed ? "yes" : "no") + ", engine~oracle " +
                                        (iso ? "yes" : "no") + ")")
                                  .what()) +
                  "\n";
          return o;
        }
        std::string text = render(r, format);
        if (format == Format::Text) text = "oracle = closed-form = engine\n" + text;
        return Outcome{kOk, text, ""};
      }
    }
    return Outcome{kOk, render(r, format), ""};
  } catch (const Error& e) {
    return failure(e);
  }
}

inline Outcome cmd_catalog_list() {
  std::ostringstream os;
  os << "fixtures:\n  10_161 (complex)\n";
  os << "table rows:\n";
  for (const auto& row : catalog::table1()) {
    os << "  " << row.name;
    for (const auto& a : row.aliases) os << " (alias " << a << ")";
    os << "\n";
  }
  os << "diagrams:\n";
  for (const auto& [name, d] : catalog::builtin_diagrams()) os << "  " << name << " (n=" << d.n << ")\n";
  return Outcome{kOk, os.str(), ""};
}

inline Outcome cmd_catalog_show(const std::string& name, Format format) {
  try {
    if (auto row = catalog::table1_row(name)) {
      RunReport r;
      if (row->name == "10_161") {
        r = report_for_complex(catalog::fixture_10_161(), row->name);
        r.checks["matches_table_row"] = r.table.same_groups(row->table) && r.tau == row->tau;
      } else {
        r = report_for_table(row->table, row->tau);
      }
      return Outcome{kOk, render(r, format), ""};
    }
    if (auto d = catalog::builtin_diagram(name))
      return Outcome{kOk, render(report_for_diagram(*d, EngineOptions::from_environment()), format), ""};
    return Outcome{kInvalidInput, "", "unknown catalog entry " + name + "\n"};
  } catch (const Error& e) {
    return failure(e);
  }
}

/// Table rows export as HFK tables with symmetry-derived entries flagged; the
/// 10_161 fixture also carries its complex; built-in diagrams export as diagram files.
inline Outcome cmd_catalog_export(const std::string& name) {
  if (auto row = catalog::table1_row(name)) {
    json j;
    j["knot"] = row->name;
    j["aliases"] = row->aliases;
    j["tau"] = row->tau;
    j["genus"] = row->table.genus;
    j["hfk"] = io::hfk_to_json(row->table, true);
    if (row->name == "10_161") j["complex"] = io::complex_to_json(catalog::fixture_10_161());
    return Outcome{kOk, j.dump(2) + "\n", ""};
  }
  if (auto d = catalog::builtin_diagram(name)) return Outcome{kOk, io::diagram_to_json(*d).dump(2) + "\n", ""};
  return Outcome{kInvalidInput, "", "unknown catalog entry " + name + "\n"};
}

inline Outcome cmd_verify_table() {
  std::ostringstream os;
  bool ok = true;
  int passing = 0;
  auto rows = catalog::table1();
  for (const auto& row : rows) {
    BigradedHomology h = row.table.to_homology();
    const bool sym = !symmetry_violation(h).has_value();
    const Int p1 = evaluate_at_one(euler_poly(h));
    const bool free = h.torsion_free();
    const bool pass = sym && (p1 == 1 || p1 == -1) && free;
    passing += pass;
    ok = ok && pass;
    os << row.name << ": symmetry " << (sym ? "ok" : "FAIL") << ", P(1) = " << p1 << ", "
       << (free ? "free" : "TORSION") << (pass ? "" : "  <- FAIL") << "\n";
  }
  os << passing << "/" << rows.size() << " rows pass symmetry and P(1)=+-1\n";

  auto r129 = catalog::table1_row("10_129");
  const bool alt = r129 && r129->tau == 0 && r129->table.same_groups(alternating_model(std::vector<Int>{9, -6, 2}));
  os << "10_129 equals the alternating model (9, -6, 2) with tau = 0: " << (alt ? "ok" : "FAIL") << "\n";
  ok = ok && alt;

  auto r161 = catalog::table1_row("10_161");
  FilteredComplex fixture = normalize_gradings(catalog::fixture_10_161());
  HfkTable computed = hfk_table(homology(fixture), "10_161");
  const bool fix = r161 && computed.same_groups(r161->table) && tau(fixture) == r161->tau;
  os << "10_161 fixture homology matches its row: " << (fix ? "ok" : "FAIL") << "\n";
  ok = ok && fix;
  return Outcome{ok ? kOk : kConsistency, os.str(), ok ? "" : "verify-table: failures above\n"};
}

// ---------------------------------------------------------------- argv

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Knot Floer homology of (1,1)-knots over the integers"};
  app.require_subcommand(1);
  int jobs = 1;
  app.add_option("--jobs", jobs, "Parallel pipelines for batch compute")->check(CLI::PositiveNumber);

  std::string format_name = "text";
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--out", format_name, "Output format")->check(CLI::IsMember({"text", "json"}));
  };

  auto* compute = app.add_subcommand("compute", "Compute HFK, tau and bounds from diagram or complex files");
  std::vector<std::string> inputs;
  ComputeOptions copt;
  compute->add_option("files", inputs, "Diagram or complex JSON files")->required();
  compute->add_flag("--tau", copt.select.tau, "Print tau");
  compute->add_flag("--genus", copt.select.genus, "Print the genus");
  compute->add_option("--svg", copt.svg_path, "Write the lifted diagram as SVG");
  compute->add_option("--jobs", jobs, "Parallel pipelines")->check(CLI::PositiveNumber);
  add_format(compute);

  auto* pz = app.add_subcommand("pretzel", "The P(-2, m, n) family");
  int m = 0, n = 0;
  pz->add_option("--m", m, "Odd m >= n")->required();
  pz->add_option("--n", n, "Odd n")->required();
  bool closed = false, oracle = false, diagram = false, compare = false;
  auto* f1 = pz->add_flag("--closed-form", closed, "Evaluate the closed formula");
  auto* f2 = pz->add_flag("--oracle", oracle, "Homology of the lemma complex");
  auto* f3 = pz->add_flag("--diagram", diagram, "Run the geometric engine on the built diagram");
  auto* f4 = pz->add_flag("--compare", compare, "Check that all three agree");
  f1->excludes(f2, f3, f4);
  f2->excludes(f3, f4);
  f3->excludes(f4);
  add_format(pz);

  auto* cat = app.add_subcommand("catalog", "Built-in fixtures, table rows and diagrams");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "List entries");
  auto* cat_show = cat->add_subcommand("show", "Show an entry");
  auto* cat_export = cat->add_subcommand("export", "Export an entry as JSON");
  std::string entry;
  cat_show->add_option("name", entry)->required();
  cat_export->add_option("name", entry)->required();
  add_format(cat_show);

  auto* verify = app.add_subcommand("verify-table", "Check every table row");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, r;
    int code = app.exit(e, o, r);
    out << o.str();
    err << r.str();
    return code == 0 ? kOk : kInvalidInput;
  }

  const Format format = format_name == "json" ? Format::Json : Format::Text;
  Outcome result;
  if (compute->parsed()) {
    copt.format = format;
    copt.jobs = jobs;
    result = cmd_compute(inputs, copt);
  } else if (pz->parsed()) {
    PretzelMode mode = oracle    ? PretzelMode::Oracle
                       : diagram ? PretzelMode::Diagram
                       : compare ? PretzelMode::Compare
                                 : PretzelMode::ClosedForm;
    result = cmd_pretzel(m, n, mode, format);
  } else if (cat_list->parsed()) {
    result = cmd_catalog_list();
  } else if (cat_show->parsed()) {
    result = cmd_catalog_show(entry, format);
  } else if (cat_export->parsed()) {
    result = cmd_catalog_export(entry);
  } else if (verify->parsed()) {
    result = cmd_verify_table();
  }
  out << result.out;
  err << result.err;
  return result.code;
}

}  // namespace elevenfloer::cli
