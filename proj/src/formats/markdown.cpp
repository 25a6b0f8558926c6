// SPDX-License-Identifier: Apache-2.0
#include <string>
#include <string_view>

#include "format_internal.hpp"
#include "text_util.hpp"

namespace hitree {

namespace {

bool is_delimiter_row(std::string_view line) {
  line = text::trim(line);
  if (line.empty() || line.find('-') == std::string_view::npos) return false;
  bool saw_dash = false;
  for (char c : line) {
    if (c == '-') saw_dash = true;
    else if (c != '|' && c != ':' && !text::is_space(c)) return false;
  }
  return saw_dash && line.find('|') != std::string_view::npos;
}

// Cells between unescaped pipes; the outer pipes are optional.
std::vector<std::string> split_row(std::string_view line) {
  std::string_view s = text::trim(line);
  if (!s.empty() && s.front() == '|') s.remove_prefix(1);
  if (!s.empty() && s.back() == '|' && !(s.size() >= 2 && s[s.size() - 2] == '\\'))
    s.remove_suffix(1);
  std::vector<std::string> cells;
  std::string current;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size() && s[i + 1] == '|') {
      current.push_back('|');
      ++i;
    } else if (s[i] == '|') {
      cells.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(s[i]);
    }
  }
  cells.push_back(std::move(current));
  return cells;
}

Cell make_cell(std::string_view raw, bool header) {
  Cell cell;
  cell.header_hint = header;
  // One space of padding after the pipe belongs to the table syntax.
  if (!raw.empty() && raw.front() == ' ') raw.remove_prefix(1);
  int spaces = 0;
  int nbsp = 0;
  std::size_t i = 0;
  while (i < raw.size()) {
    if (raw[i] == ' ') {
      ++spaces;
      ++i;
    } else if (raw.substr(i, 6) == "&nbsp;") {
      ++nbsp;
      i += 6;
    } else {
      break;
    }
  }
  cell.indent = spaces / 2 + nbsp / 2;
  std::string_view body = text::trim(raw.substr(i));
  if (body.size() >= 4 && body.substr(0, 2) == "**" && body.substr(body.size() - 2) == "**") {
    cell.emphasis.bold = true;
    body = text::trim(body.substr(2, body.size() - 4));
  }
  cell.content = text::collapse_whitespace(body);
  return cell;
}

std::string escape_md(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else out.push_back(c);
  }
  return out;
}

}  // namespace

ParseResult parse_markdown(std::string_view input) {
  std::vector<std::string> lines = text::split_lines(input);
  std::size_t header = lines.size();
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (is_delimiter_row(lines[i]) && lines[i - 1].find('|') != std::string::npos) {
      header = i - 1;
      break;
    }
  }
  if (header == lines.size()) throw ParseError("no Markdown pipe table found");

  std::size_t end = header + 2;
  while (end < lines.size() && !text::trim(lines[end]).empty() &&
         lines[end].find('|') != std::string::npos)
    ++end;

  std::vector<std::string> annotations;
  auto note = [&](std::size_t i) {
    std::string n = text::collapse_whitespace(lines[i]);
    if (!n.empty()) annotations.push_back(std::move(n));
  };
  for (std::size_t i = 0; i < header; ++i) note(i);

  std::vector<std::vector<Cell>> rows;
  for (std::size_t i = header; i < end; ++i) {
    if (i == header + 1) continue;
    std::vector<Cell> row;
    for (const std::string& raw : split_row(lines[i])) row.push_back(make_cell(raw, i == header));
    rows.push_back(std::move(row));
  }
  bool more_tables = false;
  for (std::size_t i = end; i < lines.size(); ++i) {
    if (i + 1 < lines.size() && is_delimiter_row(lines[i + 1]) &&
        lines[i].find('|') != std::string::npos)
      more_tables = true;
    note(i);
  }
  ParseResult result = detail::grid_from_flat_rows(std::move(rows), std::move(annotations), "Markdown");
  if (more_tables) result.warnings.push_back("additional tables ignored; only the first is parsed");
  return result;
}

std::string serialize_markdown(const Grid& grid, bool flatten) {
  auto view = detail::flat_view(grid, flatten, "Markdown");
  if (grid.empty()) {
    std::string out;
    for (const std::string& n : grid.annotations()) out += n + "\n";
    return out;
  }
  std::string out;
  auto emit_row = [&](const std::vector<const Cell*>& row) {
    out += "|";
    for (const Cell* cell : row) {
      std::string body = escape_md(cell->content);
      if (cell->emphasis.bold && !body.empty()) body = "**" + body + "**";
      out += " " + text::repeat("  ", static_cast<std::size_t>(cell->indent)) + body + " |";
    }
    out += "\n";
  };
  emit_row(view.front());
  out += "|";
  for (std::size_t c = 0; c < grid.n_cols(); ++c) out += " --- |";
  out += "\n";
  for (std::size_t r = 1; r < view.size(); ++r) emit_row(view[r]);
  if (!grid.annotations().empty()) {
    out += "\n";
    for (const std::string& n : grid.annotations()) out += n + "\n";
  }
  return out;
}

}  // namespace hitree
