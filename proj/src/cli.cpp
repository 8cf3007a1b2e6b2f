#include "malle/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "json_util.hpp"
#include "malle/bound.hpp"
#include "malle/corpus.hpp"
#include "malle/error.hpp"
#include "malle/group_db.hpp"
#include "malle/invariants.hpp"
#include "malle/table.hpp"

#ifndef MALLE_DATA_DIR
#define MALLE_DATA_DIR "data"
#endif

namespace malle {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

fs::path data_directory() {
  if (const char* env = std::getenv("MALLE_DB_PATH"); env && *env && fs::is_directory(env)) return env;
  return MALLE_DATA_DIR;
}

std::vector<fs::path> default_databases() {
  if (const char* env = std::getenv("MALLE_DB_PATH"); env && *env && fs::is_regular_file(env)) return {env};
  std::vector<std::pair<int, fs::path>> found;
  const std::regex pattern(R"(transitive_deg(\d+)\.db)");
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(data_directory(), ec)) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (std::regex_match(name, m, pattern)) found.emplace_back(std::stoi(m[1]), entry.path());
  }
  std::sort(found.begin(), found.end());
  std::vector<fs::path> out;
  for (auto& [deg, p] : found) out.push_back(std::move(p));
  return out;
}

namespace {

struct Loaded {
  std::vector<GroupRecord> records;
  std::vector<std::string> warnings;
};

Loaded load_all(const std::vector<fs::path>& paths) {
  Loaded out;
  for (const auto& p : paths) {
    GroupDatabase db = [&] {
      try {
        return load_group_db(p);
      } catch (const Error& e) {
        throw Error(e.code(), p.string() + ": " + e.detail(), e.line());
      }
    }();
    for (auto& w : db.warnings) out.warnings.push_back(p.string() + ": " + w);
    for (auto& r : db.records) out.records.push_back(std::move(r));
  }
  return out;
}

std::vector<fs::path> databases_or_default(const std::vector<std::string>& given, std::optional<int> degree) {
  if (!given.empty()) return {given.begin(), given.end()};
  if (degree) {
    const fs::path p = data_directory() / ("transitive_deg" + std::to_string(*degree) + ".db");
    if (!fs::exists(p)) throw Error(ErrorCode::ParseError, "no shipped database for degree " + std::to_string(*degree));
    return {p};
  }
  auto all = default_databases();
  if (all.empty()) throw Error(ErrorCode::ParseError, "no databases found in " + data_directory().string());
  return all;
}

GroupRecord find_record(const std::string& label, const std::vector<std::string>& dbs) {
  for (auto& r : load_all(databases_or_default(dbs, std::nullopt)).records)
    if (r.label == label) return r;
  throw Error(ErrorCode::UnknownLabel, "no group labelled " + label);
}

std::string join(const std::vector<std::size_t>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

std::string generators_text(const PermutationGroup& g, const Subgroup& h) {
  std::string s;
  for (ElementId id : small_generating_set(g, h)) s += (s.empty() ? "" : ", ") + g.element(id).to_cycle_string();
  return s.empty() ? "()" : s;
}

std::string prime_text(const std::map<std::uint64_t, int>& m) {
  std::string s;
  for (const auto& [p, e] : m) s += (s.empty() ? "" : " * ") + std::to_string(p) + "^" + std::to_string(e);
  return s.empty() ? "1" : s;
}

// --- subcommands ----------------------------------------------------------

struct TableArgs {
  std::vector<std::string> dbs;
  std::optional<int> degree;
  std::string torsion = "minkowski";
  bool optimize = false;
  std::string format = "md";
  unsigned jobs = 0;
};

int cmd_table(const TableArgs& a, std::ostream& out, std::ostream& err) {
  const TorsionModel model = TorsionModel::parse(a.torsion);
  const TableFormat format = parse_table_format(a.format);
  Loaded loaded = load_all(databases_or_default(a.dbs, a.degree));
  for (const auto& w : loaded.warnings) err << "warning: " << w << '\n';
  if (a.degree && !a.dbs.empty())
    std::erase_if(loaded.records, [&](const GroupRecord& r) { return r.degree != *a.degree; });
  const Table t = build_table(loaded.records, model, a.optimize ? SeriesStrategy::Exhaustive : SeriesStrategy::Greedy,
                              a.jobs);
  out << emit_table(t, format);
  return t.errors.empty() ? 0 : 1;
}

struct GroupArgs {
  std::string label;
  std::vector<std::string> dbs;
  std::string torsion = "minkowski";
  bool show_series = false;
  bool optimize = false;
  std::optional<std::string> a_override;
  std::string format = "text";
};

int cmd_group(const GroupArgs& a, std::ostream& out) {
  const TorsionModel model = TorsionModel::parse(a.torsion);
  std::optional<Rational> a_override;
  if (a.a_override) a_override = parse_rational(*a.a_override);
  const GroupRecord rec = find_record(a.label, a.dbs);
  const PermutationGroup g = rec.group();
  auto [series, rep] =
      evaluate_with_series(g, model, a.optimize ? SeriesStrategy::Exhaustive : SeriesStrategy::Greedy, a_override);
  rep.group_label = rec.label;
  const BigInt constant = series_constant(series);

  if (a.format == "json") {
    Json j;
    j["label"] = rec.label;
    j["name"] = rec.display_name;
    j["degree"] = rec.degree;
    j["order"] = rep.group_order;
    j["nilpotent"] = rep.nilpotent;
    j["a"] = rational_json(rep.a);
    j["a_overridden"] = rep.a_overridden;
    j["malle_exponent"] = rational_json(rep.malle_exponent);
    j["model"] = rep.model;
    j["series_strategy"] = rep.series_strategy;
    j["series_orders"] = rep.series_orders;
    if (a.show_series) {
      j["series_generators"] = Json::array();
      for (const auto& term : series.terms) j["series_generators"].push_back(generators_text(g, term));
    }
    j["factors"] = Json::array();
    for (const auto& f : rep.factors) {
      Json pe = Json::object();
      for (const auto& [p, e] : f.prime_exponents) pe[std::to_string(p)] = e;
      j["factors"].push_back({{"index", f.index},
                              {"factor_order", f.factor_order},
                              {"prime_exponents", pe},
                              {"N", f.n},
                              {"E", f.e},
                              {"quotient_order", f.quotient_order},
                              {"tame_exponent", rational_json(tame_disc_exponent_bound(f))}});
    }
    j["terms"] = Json::array();
    for (const auto& t : rep.terms) {
      Json c = Json::object();
      for (const auto& [p, v] : t.contributions) c[std::to_string(p)] = rational_json(v);
      j["terms"].push_back({{"index", t.index},
                            {"N", t.n},
                            {"E", t.e},
                            {"weight", rational_json(t.weight)},
                            {"contributions", c},
                            {"value", rational_json(t.value)}});
    }
    j["total_exponent"] = rational_json(rep.total_exponent);
    j["series_constant"] = constant.str();
    out << j.dump(2) << '\n';
    return 0;
  }
  if (a.format != "text") throw Error(ErrorCode::PreconditionViolated, "unknown format '" + a.format + "'");

  out << "group " << rec.label << (rec.display_name.empty() ? "" : " (" + rec.display_name + ")") << ", degree "
      << rec.degree << ", order " << rep.group_order << '\n';
  out << "nilpotent: " << (rep.nilpotent ? "yes" : "no") << '\n';
  out << "a: " << to_string(rep.a) << (rep.a_overridden ? " (override)" : "") << ", malle exponent "
      << to_string(rep.malle_exponent) << '\n';
  out << "torsion model: " << rep.model << ", series: " << rep.series_strategy << ", orders "
      << join(rep.series_orders, " < ") << '\n';
  if (a.show_series)
    for (std::size_t i = 0; i < series.terms.size(); ++i)
      out << "  G_" << i << " = <" << generators_text(g, series.terms[i]) << ">\n";
  for (const auto& f : rep.factors)
    out << "factor " << f.index << ": order " << f.factor_order << " = " << prime_text(f.prime_exponents)
        << ", N = " << f.n << ", E = " << f.e << ", |G/G_" << f.index - 1 << "| = " << f.quotient_order
        << ", tame exponent " << to_string(tame_disc_exponent_bound(f)) << '\n';
  for (const auto& t : rep.terms) {
    out << "term " << t.index << ": N(E-1)/E = " << to_string(t.weight) << ", torsion";
    for (const auto& [p, v] : t.contributions) out << ' ' << p << ':' << to_string(v);
    out << ", value " << to_string(t.value) << '\n';
  }
  out << "total exponent: " << to_string(rep.total_exponent) << '\n';
  out << "series constant C: " << constant.str() << '\n';
  return 0;
}

int cmd_invariants(const std::string& label, const std::vector<std::string>& dbs, const std::string& format,
                   std::ostream& out, std::ostream& err) {
  const GroupRecord rec = find_record(label, dbs);
  const PermutationGroup g = rec.group();
  const InvariantRecord inv = compute_invariants(g);
  if (!inv.transitive) err << "warning: " << label << " is not transitive\n";
  if (format == "json") {
    Json j;
    j["label"] = rec.label;
    j["a"] = inv.a;
    j["b_over_Q"] = inv.b_over_Q;
    j["transitive"] = inv.transitive;
    j["classes"] = Json::array();
    for (const auto& cls : inv.classes) {
      Json c = Json::array();
      for (ElementId x : cls) c.push_back(g.element(x).to_cycle_string());
      j["classes"].push_back(std::move(c));
    }
    out << j.dump(2) << '\n';
    return 0;
  }
  if (format != "text") throw Error(ErrorCode::PreconditionViolated, "unknown format '" + format + "'");
  out << "group " << rec.label << ", degree " << rec.degree << ", order " << g.order() << '\n';
  out << "a = " << inv.a << ", b over Q = " << inv.b_over_Q << '\n';
  out << inv.minimal_index_elements.size() << " elements of index " << inv.a << ":\n";
  for (std::size_t k = 0; k < inv.classes.size(); ++k) {
    out << "  class " << k + 1 << ":";
    for (ElementId x : inv.classes[k]) out << ' ' << g.element(x).to_cycle_string();
    out << '\n';
  }
  return 0;
}

struct VerifyArgs {
  std::size_t max_h = 16;
  std::size_t max_g = 24;
  std::string lemma = "all";
  std::vector<std::string> dbs;
  std::uint64_t cap = kDefaultSearchCap;
  unsigned jobs = 0;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  CorpusOptions opt;
  opt.max_h = a.max_h;
  opt.max_g = a.max_g;
  opt.lemmas = parse_lemmas(a.lemma);
  opt.cap = a.cap;
  opt.jobs = a.jobs;
  std::vector<fs::path> paths(a.dbs.begin(), a.dbs.end());
  if (paths.empty()) paths.push_back(data_directory() / "small_groups.db");
  Loaded loaded = load_all(paths);
  for (const auto& w : loaded.warnings) err << "warning: " << w << '\n';
  std::vector<CorpusEntry> groups;
  for (const auto& r : loaded.records) groups.push_back({r.label, r.group()});

  const CorpusResult res = run_corpus(groups, opt);
  out << "pairs (H, G) with |H| <= " << a.max_h << ", |G| <= " << a.max_g << ": " << res.pairs << '\n';
  for (const auto& t : res.tallies)
    out << to_string(t.lemma) << ": " << t.cases << " cases, " << t.checks << " checks, " << t.failures
        << " failures\n";
  for (const auto& f : res.failures) {
    out << "FAIL " << to_string(f.lemma) << " H=" << f.h_label << " G=" << f.g_label << " " << f.context << ": "
        << f.report.counterexample->description;
    if (!f.report.counterexample->map.empty()) {
      out << " [map";
      for (ElementId x : f.report.counterexample->map) out << ' ' << x;
      out << ']';
    }
    out << '\n';
  }
  out << (res.ok() ? "all checks hold\n" : "violations found\n");
  return res.ok() ? 0 : 1;
}

int cmd_check_golden(const std::vector<std::string>& dbs, unsigned jobs, std::ostream& out, std::ostream& err) {
  Loaded loaded = load_all(databases_or_default(dbs, std::nullopt));
  for (const auto& w : loaded.warnings) err << "warning: " << w << '\n';
  const TorsionModel model = TorsionModel::minkowski();
  const Table t = build_table(loaded.records, model, SeriesStrategy::Greedy, jobs);

  std::size_t compared = 0, exact = 0, explained = 0, unexplained = 0;
  for (const auto& e : t.errors) {
    out << "ERROR " << e.label << ": " << e.message << '\n';
    ++unexplained;
  }
  for (const auto& row : t.rows) {
    const GroupRecord& rec = *std::find_if(loaded.records.begin(), loaded.records.end(),
                                           [&](const GroupRecord& r) { return r.label == row.label; });
    bool row_ok = true;
    const auto compare = [&](const char* key, const Rational& got) {
      const auto ref = rec.reference(key);
      if (!ref || *ref == got) return;
      row_ok = false;
      if (std::string_view(key) == "result") {
        const Rational best = evaluate_group(rec.group(), model, SeriesStrategy::Exhaustive).total_exponent;
        if (best <= *ref) {
          ++explained;
          out << "MISMATCH " << row.label << " result: greedy " << to_string(got) << ", reference " << to_string(*ref)
              << ", best series " << to_string(best) << " (explained)\n";
          return;
        }
      }
      if (std::string_view(key) == "malle" && *ref > 0 && rec.reference("result") == row.result) {
        // A reference Malle value 1/a that cannot reproduce the reference
        // Result along the same series contradicts its own row.
        const Rational with_ref_a =
            evaluate_group(rec.group(), model, SeriesStrategy::Greedy, 1 / *ref).total_exponent;
        if (with_ref_a != *rec.reference("result")) {
          ++explained;
          out << "MISMATCH " << row.label << " malle: computed " << to_string(got) << ", reference "
              << to_string(*ref) << "; the reference Result " << to_string(row.result)
              << " needs the computed value (reference a gives " << to_string(with_ref_a) << ", explained)\n";
          return;
        }
      }
      ++unexplained;
      out << "MISMATCH " << row.label << ' ' << key << ": computed " << to_string(got) << ", reference "
          << to_string(*ref) << '\n';
    };
    if (!rec.reference("result")) continue;
    ++compared;
    compare("result", row.result);
    compare("malle", row.malle);
    compare("schmidt", row.schmidt);
    compare("nilpotent", Rational(row.nilpotent ? 1 : 0));
    if (row_ok) ++exact;
  }
  out << "rows compared: " << compared << ", exact: " << exact << ", explained mismatches: " << explained
      << ", unexplained mismatches: " << unexplained << '\n';
  return unexplained == 0 ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounds for counting solvable Galois extensions, from finite group data"};
  app.require_subcommand(1);

  TableArgs table;
  auto* t = app.add_subcommand("table", "Bound table for a group database");
  t->add_option("--db", table.dbs, "Database file (repeatable); default: shipped databases");
  t->add_option("--degree", table.degree, "Only this degree");
  t->add_option("--torsion", table.torsion, "minkowski | grh | epsilon | custom:<file>");
  t->add_flag("--optimize-series", table.optimize, "Minimum over every minimal-normal series");
  t->add_option("--format", table.format, "md | csv | json")->check(CLI::IsMember({"md", "markdown", "csv", "json"}));
  t->add_option("--jobs", table.jobs, "Worker threads (0: all cores)");

  GroupArgs group;
  auto* g = app.add_subcommand("group", "Bound report for one group");
  g->add_option("label", group.label, "Label such as 5T2")->required();
  g->add_option("--db", group.dbs, "Database file (repeatable)");
  g->add_option("--torsion", group.torsion, "minkowski | grh | epsilon | custom:<file>");
  g->add_flag("--series", group.show_series, "Print generators of the series terms");
  g->add_flag("--optimize-series", group.optimize, "Minimum over every minimal-normal series");
  g->add_option("--a-override", group.a_override, "Replace a(G) by this positive rational");
  g->add_option("--format", group.format, "text | json")->check(CLI::IsMember({"text", "json"}));

  std::string inv_label, inv_format = "text";
  std::vector<std::string> inv_dbs;
  auto* inv = app.add_subcommand("invariants", "a(G) and b(Q,G)");
  inv->add_option("label", inv_label, "Label such as 5T2")->required();
  inv->add_option("--db", inv_dbs, "Database file (repeatable)");
  inv->add_option("--format", inv_format, "text | json")->check(CLI::IsMember({"text", "json"}));

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Exhaustive checks of the homomorphism counting lemmas");
  v->add_option("--max-h", verify.max_h, "Largest |H|");
  v->add_option("--max-g", verify.max_g, "Largest |G|");
  v->add_option("--lemma", verify.lemma, "fiber | restriction | product | nilpotent | all")
      ->check(CLI::IsMember({"fiber", "restriction", "product", "nilpotent", "all"}));
  v->add_option("--db", verify.dbs, "Group corpus (repeatable); default: shipped small groups");
  v->add_option("--cap", verify.cap, "Search cap on candidate generator images");
  v->add_option("--jobs", verify.jobs, "Worker threads (0: all cores)");

  std::vector<std::string> golden_dbs;
  unsigned golden_jobs = 0;
  auto* c = app.add_subcommand("check-golden", "Compare computed columns with reference values");
  c->add_option("--db", golden_dbs, "Database file (repeatable); default: shipped databases");
  c->add_option("--jobs", golden_jobs, "Worker threads (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*t) return cmd_table(table, out, err);
    if (*g) return cmd_group(group, out);
    if (*inv) return cmd_invariants(inv_label, inv_dbs, inv_format, out, err);
    if (*v) return cmd_verify(verify, out, err);
    if (*c) return cmd_check_golden(golden_dbs, golden_jobs, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace malle
