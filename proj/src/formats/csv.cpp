// SPDX-License-Identifier: Apache-2.0
#include <string>
#include <string_view>

#include "format_internal.hpp"
#include "text_util.hpp"

namespace hitree {

namespace {

// RFC 4180 records; quoted fields may hold commas, quotes and newlines.
std::vector<std::vector<std::string>> read_records(std::string_view s) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < s.size() && s[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && text::trim(field).empty()) {
      // Leading spaces before a quote are not part of the value.
      field.clear();
      quoted = true;
      any = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < s.size() && s[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
      }
      record.clear();
      field.clear();
      any = false;
    } else {
      field.push_back(c);
    }
  }
  if (any || !field.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

Cell make_cell(std::string_view raw) {
  Cell cell;
  std::size_t spaces = 0;
  while (spaces < raw.size() && raw[spaces] == ' ') ++spaces;
  cell.indent = static_cast<int>(spaces / 2);
  cell.content = text::collapse_whitespace(raw.substr(spaces));
  return cell;
}

std::string quote_field(const std::string& value) {
  bool needs = value.find_first_of(",\"\n\r") != std::string::npos ||
               (!value.empty() && (value.front() == ' ' || value.back() == ' '));
  if (!needs) return value;
  return "\"" + text::replace_all(value, "\"", "\"\"") + "\"";
}

}  // namespace

ParseResult parse_csv(std::string_view input) {
  auto records = read_records(input);
  if (records.empty()) throw ParseError("no CSV records found");
  std::vector<std::vector<Cell>> rows;
  for (const auto& record : records) {
    std::vector<Cell> row;
    for (const std::string& field : record) row.push_back(make_cell(field));
    rows.push_back(std::move(row));
  }
  return detail::grid_from_flat_rows(std::move(rows), {}, "CSV");
}

std::string serialize_csv(const Grid& grid, bool flatten) {
  auto view = detail::flat_view(grid, flatten, "CSV");
  std::string out;
  for (const auto& row : view) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += ",";
      out += quote_field(text::repeat("  ", static_cast<std::size_t>(row[c]->indent)) +
                         row[c]->content);
    }
    out += "\n";
  }
  return out;
}

}  // namespace hitree
