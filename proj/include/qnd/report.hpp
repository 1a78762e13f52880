#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qnd/config.hpp"

namespace qnd {

/// One cell of emitted output; std::monostate renders as "n/a".
using Value = std::variant<std::monostate, double, long long, bool, std::string>;

/// Six significant digits, lowercase exponent: 5.61231e+02.
std::string format_value(const Value& v);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
};

struct Report {
  std::string command;
  std::vector<std::pair<std::string, Value>> scalars;  // emitted in order
  std::optional<Table> table;

  void add(std::string key, Value v) { scalars.emplace_back(std::move(key), std::move(v)); }
};

/// table:      "key  value" lines, then an aligned table if present.
/// csv:        scalars as "# key = value" lines followed by header and rows
///             when a table is present; otherwise a one-row CSV of scalars.
/// json-lines: one object for the scalars, one per table row.
std::string render(const Report& report, OutputFormat format);

struct ParsedCsv {
  std::map<std::string, std::string> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// Reads text produced by render(..., Csv). Throws Parse on a missing header,
/// ragged rows, or cells that are not numbers, booleans, "n/a" or bare words.
ParsedCsv parse_csv(std::string_view text);

}  // namespace qnd
