#pragma once

#include <optional>
#include <string>
#include <vector>

#include "malle/bound.hpp"
#include "malle/group_db.hpp"

namespace malle {

struct TableRow {
  std::string label;
  std::string name;
  int degree = 0;
  std::size_t order = 0;
  bool nilpotent = false;
  Rational result;
  Rational malle;
  Rational schmidt;
  std::optional<Rational> dummit;  // reference data only, never computed
  std::vector<std::size_t> series_orders;
};

struct TableError {
  std::string label;
  std::string message;
};

struct Table {
  std::string model;
  std::string strategy;
  std::vector<TableRow> rows;  // database order
  std::vector<TableError> errors;
};

/// Rows are computed on up to `jobs` threads (0: hardware concurrency) and
/// kept in input order. Per-record failures go to `errors`.
Table build_table(const std::vector<GroupRecord>& records, const TorsionModel& model, SeriesStrategy strategy,
                  unsigned jobs = 0);

enum class TableFormat { Markdown, Csv, Json };
TableFormat parse_table_format(std::string_view text);

std::string emit_table(const Table& table, TableFormat format);

}  // namespace malle
