#include "qnd/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "qnd/errors.hpp"

namespace qnd {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

nlohmann::json to_json(const Value& v) {
  return std::visit(
      overloaded{[](std::monostate) { return nlohmann::json(nullptr); },
                 [](double d) {
                   // Round through the formatted text so JSON agrees with the tables.
                   return nlohmann::json(std::stod(format_value(d)));
                 },
                 [](long long i) { return nlohmann::json(i); },
                 [](bool b) { return nlohmann::json(b); },
                 [](const std::string& s) { return nlohmann::json(s); }},
      v);
}

std::string pad(const std::string& s, std::size_t width) {
  return s + std::string(width > s.size() ? width - s.size() : 0, ' ');
}

bool valid_cell(std::string_view cell) {
  if (cell.empty()) return false;
  if (cell == "n/a" || cell == "true" || cell == "false") return true;
  double d = 0.0;
  const auto* end = cell.data() + cell.size();
  if (auto [p, ec] = std::from_chars(cell.data(), end, d); ec == std::errc() && p == end) return true;
  return std::all_of(cell.begin(), cell.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::string format_value(const Value& v) {
  return std::visit(overloaded{[](std::monostate) { return std::string("n/a"); },
                               [](double d) {
                                 char buf[32];
                                 std::snprintf(buf, sizeof buf, "%.5e", d);
                                 return std::string(buf);
                               },
                               [](long long i) { return std::to_string(i); },
                               [](bool b) { return std::string(b ? "true" : "false"); },
                               [](const std::string& s) { return s; }},
                    v);
}

std::string render(const Report& report, OutputFormat format) {
  std::ostringstream out;
  switch (format) {
    case OutputFormat::Table: {
      std::size_t width = 0;
      for (const auto& [k, v] : report.scalars) width = std::max(width, k.size());
      for (const auto& [k, v] : report.scalars) out << pad(k, width + 2) << format_value(v) << '\n';
      if (report.table) {
        const auto& t = *report.table;
        std::vector<std::size_t> widths(t.columns.size());
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
          widths[c] = t.columns[c].size();
          for (const auto& row : t.rows) widths[c] = std::max(widths[c], format_value(row[c]).size());
        }
        if (!report.scalars.empty()) out << '\n';
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
          out << (c ? "  " : "") << (c + 1 < t.columns.size() ? pad(t.columns[c], widths[c]) : t.columns[c]);
        }
        out << '\n';
        for (const auto& row : t.rows) {
          for (std::size_t c = 0; c < row.size(); ++c) {
            const auto cell = format_value(row[c]);
            out << (c ? "  " : "") << (c + 1 < row.size() ? pad(cell, widths[c]) : cell);
          }
          out << '\n';
        }
      }
      break;
    }
    case OutputFormat::Csv: {
      if (report.table) {
        for (const auto& [k, v] : report.scalars) out << "# " << k << " = " << format_value(v) << '\n';
        const auto& t = *report.table;
        for (std::size_t c = 0; c < t.columns.size(); ++c) out << (c ? "," : "") << t.columns[c];
        out << '\n';
        for (const auto& row : t.rows) {
          for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_value(row[c]);
          out << '\n';
        }
      } else {
        for (std::size_t i = 0; i < report.scalars.size(); ++i) {
          out << (i ? "," : "") << report.scalars[i].first;
        }
        out << '\n';
        for (std::size_t i = 0; i < report.scalars.size(); ++i) {
          out << (i ? "," : "") << format_value(report.scalars[i].second);
        }
        out << '\n';
      }
      break;
    }
    case OutputFormat::JsonLines: {
      nlohmann::ordered_json head;
      head["record"] = "summary";
      head["command"] = report.command;
      for (const auto& [k, v] : report.scalars) head[k] = to_json(v);
      out << head.dump() << '\n';
      if (report.table) {
        for (const auto& row : report.table->rows) {
          nlohmann::ordered_json line;
          line["record"] = "row";
          for (std::size_t c = 0; c < row.size(); ++c) line[report.table->columns[c]] = to_json(row[c]);
          out << line.dump() << '\n';
        }
      }
      break;
    }
  }
  return out.str();
}

ParsedCsv parse_csv(std::string_view text) {
  ParsedCsv parsed;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto eq = line.find(" = ");
      if (eq == std::string::npos || line.size() < 3) {
        fail(ErrorKind::Parse, "csv line " + std::to_string(line_no) + ": malformed metadata");
      }
      parsed.metadata[line.substr(2, eq - 2)] = line.substr(eq + 3);
      continue;
    }
    auto cells = split(line);
    if (parsed.columns.empty()) {
      parsed.columns = std::move(cells);
      continue;
    }
    if (cells.size() != parsed.columns.size()) {
      fail(ErrorKind::Parse, "csv line " + std::to_string(line_no) + ": expected " +
                                 std::to_string(parsed.columns.size()) + " cells");
    }
    for (const auto& cell : cells) {
      if (!valid_cell(cell)) {
        fail(ErrorKind::Parse, "csv line " + std::to_string(line_no) + ": bad cell '" + cell + "'");
      }
    }
    parsed.rows.push_back(std::move(cells));
  }
  if (parsed.columns.empty()) fail(ErrorKind::Parse, "csv: missing header row");
  return parsed;
}

}  // namespace qnd
