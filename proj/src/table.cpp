#include "malle/table.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>
#include <variant>

#include "json.hpp"

#include "malle/error.hpp"
#include "json_util.hpp"

namespace malle {

Table build_table(const std::vector<GroupRecord>& records, const TorsionModel& model, SeriesStrategy strategy,
                  unsigned jobs) {
  using Slot = std::variant<std::monostate, TableRow, TableError>;
  std::vector<Slot> slots(records.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < records.size();) {
      const GroupRecord& rec = records[i];
      try {
        const PermutationGroup g = rec.group();
        const BoundReport rep = evaluate_group(g, model, strategy);
        TableRow row;
        row.label = rec.label;
        row.name = rec.display_name;
        row.degree = rec.degree;
        row.order = g.order();
        row.nilpotent = rep.nilpotent;
        row.result = rep.total_exponent;
        row.malle = rep.malle_exponent;
        row.schmidt = schmidt_bound(rec.degree);
        row.dummit = rec.reference("dummit");
        row.series_orders = rep.series_orders;
        slots[i] = std::move(row);
      } catch (const Error& e) {
        slots[i] = TableError{rec.label, e.what()};
      }
    }
  };
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(records.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Table table;
  table.model = model.name();
  table.strategy = strategy == SeriesStrategy::Greedy ? "greedy" : "exhaustive-min";
  for (auto& s : slots) {
    if (auto* row = std::get_if<TableRow>(&s)) table.rows.push_back(std::move(*row));
    if (auto* err = std::get_if<TableError>(&s)) table.errors.push_back(std::move(*err));
  }
  return table;
}

TableFormat parse_table_format(std::string_view text) {
  if (text == "md" || text == "markdown") return TableFormat::Markdown;
  if (text == "csv") return TableFormat::Csv;
  if (text == "json") return TableFormat::Json;
  throw Error(ErrorCode::PreconditionViolated, "unknown table format '" + std::string(text) + "'");
}

namespace {

std::string emit_markdown(const Table& t) {
  std::ostringstream out;
  out << "Torsion model: " << t.model << "; series: " << t.strategy << "; * marks nilpotent groups.\n\n";
  out << "| Label | Group | Result | Malle | Dummit/Q | Schmidt |\n";
  out << "|---|---|---|---|---|---|\n";
  for (const auto& r : t.rows) {
    out << "| " << r.label << (r.nilpotent ? "*" : "") << " | " << r.name << " | " << to_string(r.result) << " | "
        << to_string(r.malle) << " | " << (r.dummit ? to_string(*r.dummit) : "") << " | " << to_string(r.schmidt)
        << " |\n";
  }
  if (!t.errors.empty()) {
    out << "\nErrors:\n\n";
    for (const auto& e : t.errors) out << "- " << e.label << ": " << e.message << '\n';
  }
  return out.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::string emit_csv(const Table& t) {
  std::ostringstream out;
  out << "label,name,degree,order,nilpotent,result,malle,dummit,schmidt,status\n";
  for (const auto& r : t.rows) {
    out << csv_field(r.label) << ',' << csv_field(r.name) << ',' << r.degree << ',' << r.order << ','
        << (r.nilpotent ? 1 : 0) << ',' << to_string(r.result) << ',' << to_string(r.malle) << ','
        << (r.dummit ? to_string(*r.dummit) : "") << ',' << to_string(r.schmidt) << ",ok\n";
  }
  for (const auto& e : t.errors) out << csv_field(e.label) << ",,,,,,,,," << csv_field("error: " + e.message) << '\n';
  return out.str();
}

std::string emit_json(const Table& t) {
  nlohmann::ordered_json j;
  j["model"] = t.model;
  j["strategy"] = t.strategy;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json row;
    row["label"] = r.label;
    row["name"] = r.name;
    row["degree"] = r.degree;
    row["order"] = r.order;
    row["nilpotent"] = r.nilpotent;
    row["result"] = rational_json(r.result);
    row["malle"] = rational_json(r.malle);
    row["dummit"] = r.dummit ? rational_json(*r.dummit) : nlohmann::ordered_json(nullptr);
    row["schmidt"] = rational_json(r.schmidt);
    row["series_orders"] = r.series_orders;
    j["rows"].push_back(std::move(row));
  }
  j["errors"] = nlohmann::ordered_json::array();
  for (const auto& e : t.errors) j["errors"].push_back({{"label", e.label}, {"message", e.message}});
  return j.dump(2) + "\n";
}

}  // namespace

std::string emit_table(const Table& table, TableFormat format) {
  switch (format) {
    case TableFormat::Markdown:
      return emit_markdown(table);
    case TableFormat::Csv:
      return emit_csv(table);
    case TableFormat::Json:
      return emit_json(table);
  }
  return {};
}

}  // namespace malle
