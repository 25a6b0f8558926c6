// SPDX-License-Identifier: Apache-2.0
//
// LaTeX tabular reader/writer. Supported subset: tabular, tabular*, tabularx
// with \multicolumn, \multirow (including negative row counts), \hline,
// \cline, booktabs rules, \rowcolor/\cellcolor, \textbf and \quad/\qquad/
// \hspace indentation. Any other command inside a cell is kept as text.

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include "format_internal.hpp"
#include "text_util.hpp"

namespace hitree {

namespace {

constexpr std::string_view kEscapable = "&%$#_";

bool is_letter(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

// Removes unescaped '%' comments up to (not including) the newline.
std::string strip_comments(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\\' && i + 1 < text.size()) {
      out.push_back(c);
      out.push_back(text[++i]);
      continue;
    }
    if (c == '%') {
      while (i < text.size() && text[i] != '\n') ++i;
      if (i < text.size()) out.push_back('\n');
      continue;
    }
    out.push_back(c);
  }
  return out;
}

// If `s[pos]` (after whitespace) opens a balanced group delimited by
// open/close, returns its contents and advances pos past it.
std::optional<std::string_view> read_group(std::string_view s, std::size_t& pos, char open = '{',
                                           char close = '}') {
  std::size_t i = pos;
  while (i < s.size() && text::is_space(s[i])) ++i;
  if (i >= s.size() || s[i] != open) return std::nullopt;
  int depth = 0;
  for (std::size_t j = i; j < s.size(); ++j) {
    char c = s[j];
    if (c == '\\') {
      ++j;
      continue;
    }
    if (c == open) ++depth;
    else if (c == close && --depth == 0) {
      pos = j + 1;
      return s.substr(i + 1, j - i - 1);
    }
  }
  return std::nullopt;
}

void skip_optional(std::string_view s, std::size_t& pos) { (void)read_group(s, pos, '[', ']'); }

// Matches `\name` at pos (not followed by another letter); advances past it.
bool eat_command(std::string_view s, std::size_t& pos, std::string_view name) {
  if (s.substr(pos, name.size() + 1) != std::string("\\") + std::string(name)) return false;
  std::size_t end = pos + name.size() + 1;
  if (end < s.size() && is_letter(s[end])) return false;
  pos = end;
  return true;
}

std::string unescape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size() && kEscapable.find(s[i + 1]) != std::string_view::npos) {
      out.push_back(s[++i]);
      continue;
    }
    out.push_back(s[i]);
  }
  return out;
}

std::string escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (kEscapable.find(c) != std::string_view::npos) out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

int count_columns(std::string_view spec) {
  int n = 0;
  std::size_t i = 0;
  while (i < spec.size()) {
    char c = spec[i];
    if (c == '*') {
      std::size_t pos = i + 1;
      auto times = read_group(spec, pos);
      auto inner = read_group(spec, pos);
      if (!times || !inner) return -1;
      n += std::atoi(std::string(*times).c_str()) * count_columns(*inner);
      i = pos;
      continue;
    }
    if (c == '@' || c == '!' || c == '>' || c == '<') {
      std::size_t pos = i + 1;
      if (!read_group(spec, pos)) return -1;
      i = pos;
      continue;
    }
    if (c == 'p' || c == 'm' || c == 'b' || c == 'w' || c == 'W') {
      std::size_t pos = i + 1;
      if (c == 'w' || c == 'W') (void)read_group(spec, pos);
      (void)read_group(spec, pos);
      ++n;
      i = pos;
      continue;
    }
    if (c == '{') {
      // Stray group, e.g. the argument of a custom column type.
      std::size_t pos = i;
      if (!read_group(spec, pos)) return -1;
      i = pos;
      continue;
    }
    if (is_letter(c)) ++n;
    ++i;
  }
  return n;
}

struct TableSpan {
  std::size_t begin = 0;       // start of \begin{...}
  std::size_t body_begin = 0;  // after the column spec
  std::size_t body_end = 0;    // start of \end{...}
  std::size_t end = 0;         // after \end{...}
  int declared_cols = -1;
};

std::optional<TableSpan> find_table(std::string_view text, std::size_t from,
                                    std::string& error) {
  static constexpr std::array<std::string_view, 3> kEnvs = {"tabularx", "tabular*", "tabular"};
  std::size_t at = text.find("\\begin{tabular", from);
  if (at == std::string_view::npos) return std::nullopt;
  std::size_t pos = at + 6;
  auto env = read_group(text, pos);
  if (!env || std::find(kEnvs.begin(), kEnvs.end(), *env) == kEnvs.end()) {
    error = "unsupported table environment";
    return std::nullopt;
  }
  TableSpan span;
  span.begin = at;
  if (*env != "tabular") {
    if (!read_group(text, pos)) {
      error = "missing width argument for " + std::string(*env);
      return std::nullopt;
    }
  }
  skip_optional(text, pos);
  auto spec = read_group(text, pos);
  if (!spec) {
    error = "missing column specification";
    return std::nullopt;
  }
  span.declared_cols = count_columns(*spec);
  span.body_begin = pos;

  const std::string begin_tag = "\\begin{" + std::string(*env) + "}";
  const std::string end_tag = "\\end{" + std::string(*env) + "}";
  int depth = 1;
  std::size_t scan = pos;
  while (true) {
    std::size_t next_end = text.find(end_tag, scan);
    if (next_end == std::string_view::npos) {
      error = "unterminated " + std::string(*env) + " environment";
      return std::nullopt;
    }
    std::size_t next_begin = text.find(begin_tag, scan);
    if (next_begin != std::string_view::npos && next_begin < next_end) {
      ++depth;
      scan = next_begin + begin_tag.size();
      continue;
    }
    if (--depth == 0) {
      span.body_end = next_end;
      span.end = next_end + end_tag.size();
      break;
    }
    scan = next_end + end_tag.size();
  }
  return span;
}

// Splits at depth-0 occurrences of a separator: "\\" (rows) or "&" (cells).
std::vector<std::string_view> split_top_level(std::string_view body, bool rows) {
  std::vector<std::string_view> parts;
  int depth = 0;
  int env_depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (c == '\\') {
      if (i + 1 < body.size() && body[i + 1] == '\\' && rows && depth == 0 && env_depth == 0) {
        parts.push_back(body.substr(start, i - start));
        i += 2;
        if (i < body.size() && body[i] == '*') ++i;
        std::size_t pos = i;
        if (read_group(body, pos, '[', ']')) i = pos;
        start = i;
        --i;
        continue;
      }
      if (body.substr(i, 7) == "\\begin{") ++env_depth;
      else if (body.substr(i, 5) == "\\end{" && env_depth > 0) --env_depth;
      else if (rows && depth == 0 && env_depth == 0 &&
               body.substr(i, 15) == "\\tabularnewline") {
        parts.push_back(body.substr(start, i - start));
        start = i + 15;
        i = start - 1;
        continue;
      }
      ++i;
      continue;
    }
    if (c == '{') ++depth;
    else if (c == '}') --depth;
    else if (c == '&' && !rows && depth == 0 && env_depth == 0) {
      parts.push_back(body.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(body.substr(start));
  return parts;
}

struct RowPrefix {
  bool midrule = false;
  bool rowcolor = false;
  std::string_view rest;
};

// Strips rule and colour commands that precede the first cell of a row.
RowPrefix strip_row_prefix(std::string_view row) {
  RowPrefix out;
  std::size_t pos = 0;
  while (true) {
    while (pos < row.size() && text::is_space(row[pos])) ++pos;
    if (pos >= row.size() || row[pos] != '\\') break;
    if (eat_command(row, pos, "hline") || eat_command(row, pos, "toprule") ||
        eat_command(row, pos, "bottomrule") || eat_command(row, pos, "addlinespace") ||
        eat_command(row, pos, "hdashline")) {
      skip_optional(row, pos);
      continue;
    }
    if (eat_command(row, pos, "midrule")) {
      skip_optional(row, pos);
      out.midrule = true;
      continue;
    }
    if (eat_command(row, pos, "cline") || eat_command(row, pos, "cmidrule")) {
      (void)read_group(row, pos, '(', ')');
      (void)read_group(row, pos);
      continue;
    }
    if (eat_command(row, pos, "rowcolor")) {
      skip_optional(row, pos);
      (void)read_group(row, pos);
      out.rowcolor = true;
      continue;
    }
    if (eat_command(row, pos, "noalign")) {
      (void)read_group(row, pos);
      continue;
    }
    break;
  }
  out.rest = row.substr(pos);
  return out;
}

struct SourceCell {
  long rowspan = 1;
  std::size_t colspan = 1;
  Cell proto;
};

// Strips indentation, colour and bold markers around a cell body.
void parse_cell_content(std::string_view s, Cell& cell) {
  std::size_t pos = 0;
  while (true) {
    while (pos < s.size() && text::is_space(s[pos])) ++pos;
    if (pos >= s.size()) break;
    std::size_t save = pos;
    if (eat_command(s, pos, "cellcolor")) {
      skip_optional(s, pos);
      if (read_group(s, pos)) {
        cell.emphasis.background = true;
        continue;
      }
      pos = save;
      break;
    }
    if (eat_command(s, pos, "qquad")) {
      cell.indent += 2;
      continue;
    }
    if (eat_command(s, pos, "quad")) {
      cell.indent += 1;
      continue;
    }
    if (eat_command(s, pos, "hspace")) {
      if (pos < s.size() && s[pos] == '*') ++pos;
      if (read_group(s, pos)) {
        cell.indent += 1;
        continue;
      }
      pos = save;
      break;
    }
    if (eat_command(s, pos, "textbf")) {
      std::size_t after = pos;
      auto inner = read_group(s, after);
      if (inner && text::trim(s.substr(after)).empty()) {
        cell.emphasis.bold = true;
        s = *inner;
        pos = 0;
        continue;
      }
      pos = save;
      break;
    }
    break;
  }
  std::string_view rest = text::trim(s.substr(pos));
  if (rest == "{}") rest = {};
  cell.content = text::collapse_whitespace(unescape(rest));
}

SourceCell parse_source_cell(std::string_view raw, std::size_t row) {
  SourceCell out;
  std::string_view s = text::trim(raw);
  std::size_t pos = 0;
  if (eat_command(s, pos, "multicolumn")) {
    auto n = read_group(s, pos);
    auto spec = read_group(s, pos);
    auto body = read_group(s, pos);
    if (!n || !spec || !body) throw StructureError(row, "malformed \\multicolumn");
    int cols = std::atoi(std::string(*n).c_str());
    if (cols < 1) throw StructureError(row, "\\multicolumn count must be positive");
    out.colspan = static_cast<std::size_t>(cols);
    s = text::trim(*body);
    pos = 0;
  }
  if (eat_command(s, pos, "multirow")) {
    skip_optional(s, pos);
    auto n = read_group(s, pos);
    skip_optional(s, pos);
    auto width = read_group(s, pos);
    skip_optional(s, pos);
    auto body = read_group(s, pos);
    if (!n || !width || !body) throw StructureError(row, "malformed \\multirow");
    out.rowspan = std::atol(std::string(*n).c_str());
    if (out.rowspan == 0) out.rowspan = 1;
    s = *body;
    pos = 0;
  }
  parse_cell_content(s, out.proto);
  return out;
}

// Commands that only wrap or decorate the table float; dropped (with their
// immediate arguments) when collecting annotation text.
bool is_float_command(std::string_view name) {
  static constexpr std::array<std::string_view, 30> kNames = {
      "begin",      "end",       "label",     "centering",  "raggedright", "raggedleft",
      "small",      "footnotesize", "scriptsize", "tiny",   "normalsize",  "large",
      "Large",      "resizebox", "scalebox",  "vspace",     "vskip",       "hspace",
      "renewcommand", "setlength", "toprule", "midrule",    "bottomrule",  "hline",
      "par",        "noindent",  "medskip",   "smallskip",  "bigskip",     "newline"};
  return std::find(kNames.begin(), kNames.end(), name) != kNames.end();
}

void collect_annotations(std::string_view text, std::vector<std::string>& out) {
  std::string cleaned;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\\' && i + 1 < text.size() && is_letter(text[i + 1])) {
      std::size_t j = i + 1;
      while (j < text.size() && is_letter(text[j])) ++j;
      std::string_view name = text.substr(i + 1, j - i - 1);
      if (name == "caption") {
        std::size_t pos = j;
        skip_optional(text, pos);
        if (auto body = read_group(text, pos)) {
          cleaned += '\n';
          cleaned += *body;
          cleaned += '\n';
          i = pos;
          continue;
        }
      }
      if (is_float_command(name)) {
        std::size_t pos = j;
        if (pos < text.size() && text[pos] == '*') ++pos;
        while (true) {
          std::size_t before = pos;
          skip_optional(text, pos);
          if (!read_group(text, pos) && pos == before) break;
        }
        i = pos;
        continue;
      }
      cleaned.append(text.substr(i, j - i));
      i = j;
      continue;
    }
    if (c == '\\' && i + 1 < text.size()) {
      cleaned.append(text.substr(i, 2));
      i += 2;
      continue;
    }
    if (c == '{' || c == '}') {
      ++i;
      continue;
    }
    cleaned.push_back(c);
    ++i;
  }
  for (const std::string& line : text::split_lines(cleaned)) {
    std::string note = text::collapse_whitespace(unescape(text::trim(line)));
    if (!note.empty()) out.push_back(std::move(note));
  }
}

bool is_blank_placeholder(const SourceCell& sc) {
  return sc.proto.content.empty() && sc.rowspan == 1;
}

}  // namespace

ParseResult parse_latex(std::string_view input) {
  const std::string text = strip_comments(input);
  std::string error;
  auto span = find_table(text, 0, error);
  if (!span) throw ParseError(error.empty() ? "no tabular environment found" : error);

  ParseResult result;
  std::vector<std::string> annotations;
  collect_annotations(std::string_view(text).substr(0, span->begin), annotations);
  std::string_view after = std::string_view(text).substr(span->end);
  std::string ignored;
  if (auto extra = find_table(after, 0, ignored)) {
    result.warnings.push_back("additional tables ignored; only the first is parsed");
    collect_annotations(after.substr(0, extra->begin), annotations);
  } else {
    collect_annotations(after, annotations);
  }

  std::string_view body = std::string_view(text).substr(span->body_begin,
                                                        span->body_end - span->body_begin);

  // Gather non-empty rows of source cells.
  std::vector<std::vector<SourceCell>> rows;
  std::vector<bool> row_colored;
  std::optional<std::size_t> header_rows;
  for (std::string_view chunk : split_top_level(body, true)) {
    RowPrefix prefix = strip_row_prefix(chunk);
    if (prefix.midrule && !header_rows && !rows.empty()) header_rows = rows.size();
    if (text::trim(prefix.rest).empty() && !prefix.rowcolor) continue;
    std::vector<SourceCell> cells;
    for (std::string_view raw : split_top_level(prefix.rest, false))
      cells.push_back(parse_source_cell(raw, rows.size() + 1));
    rows.push_back(std::move(cells));
    row_colored.push_back(prefix.rowcolor);
  }

  const std::size_t n_rows = rows.size();
  std::size_t n_cols = span->declared_cols > 0 ? static_cast<std::size_t>(span->declared_cols) : 0;
  for (std::size_t r = 0; r < n_rows; ++r) {
    std::size_t width = 0;
    for (const SourceCell& sc : rows[r]) width += sc.colspan;
    if (span->declared_cols > 0 && width > n_cols) {
      throw StructureError(r + 1, "row has " + std::to_string(width) +
                                      " columns but the tabular declares " +
                                      std::to_string(n_cols));
    }
    n_cols = std::max(n_cols, width);
  }
  if (n_rows == 0) n_cols = 0;

  // owner[r][c] = index into `cells` of the cell covering (r,c), or -1.
  std::vector<Cell> cells;
  std::vector<std::vector<long>> owner(n_rows, std::vector<long>(n_cols, -1));
  for (std::size_t r = 0; r < n_rows; ++r) {
    std::size_t c = 0;
    for (const SourceCell& sc : rows[r]) {
      if (c + sc.colspan > n_cols) throw StructureError(r + 1, "cell extends past last column");
      bool covered = owner[r][c] >= 0;
      if (covered) {
        if (!is_blank_placeholder(sc))
          throw StructureError(r + 1, "content in a position covered by \\multirow");
        for (std::size_t k = c; k < c + sc.colspan; ++k) {
          if (owner[r][k] < 0)
            throw StructureError(r + 1, "placeholder spans columns not covered by \\multirow");
        }
        c += sc.colspan;
        continue;
      }
      Cell cell = sc.proto;
      if (row_colored[r]) cell.emphasis.background = true;
      cell.col_start = c + 1;
      cell.col_end = c + sc.colspan;
      if (sc.rowspan >= 1) {
        std::size_t span_rows = static_cast<std::size_t>(sc.rowspan);
        if (r + span_rows > n_rows)
          throw StructureError(r + 1, "\\multirow extends past the last row");
        cell.row_start = r + 1;
        cell.row_end = r + span_rows;
      } else {
        // Negative \multirow: the content sits in the bottom row of the
        // region; the rows above must hold empty placeholders.
        std::size_t span_rows = static_cast<std::size_t>(-sc.rowspan);
        if (span_rows > r + 1) throw StructureError(r + 1, "\\multirow extends above the first row");
        cell.row_start = r + 2 - span_rows;
        cell.row_end = r + 1;
        for (std::size_t rr = cell.row_start - 1; rr < r; ++rr) {
          for (std::size_t k = c; k < c + sc.colspan; ++k) {
            long o = owner[rr][k];
            if (o < 0 || !cells[static_cast<std::size_t>(o)].content.empty() ||
                cells[static_cast<std::size_t>(o)].area() != 1)
              throw StructureError(r + 1, "negative \\multirow over non-empty cells");
          }
        }
        for (std::size_t rr = cell.row_start - 1; rr < r; ++rr) {
          for (std::size_t k = c; k < c + sc.colspan; ++k) {
            // Mark the placeholder for removal; indices stay stable.
            cells[static_cast<std::size_t>(owner[rr][k])].row_start = 0;
          }
        }
      }
      long idx = static_cast<long>(cells.size());
      for (std::size_t rr = cell.row_start - 1; rr < cell.row_end; ++rr) {
        for (std::size_t k = c; k < c + sc.colspan; ++k) {
          if (rr > r && owner[rr][k] >= 0)
            throw StructureError(rr + 1, "overlapping \\multirow regions");
          owner[rr][k] = idx;
        }
      }
      cells.push_back(std::move(cell));
      c += sc.colspan;
    }
  }
  std::erase_if(cells, [](const Cell& cell) { return cell.row_start == 0; });

  // Trailing positions a row left out are empty cells.
  for (std::size_t r = 1; r <= n_rows; ++r) {
    for (std::size_t c = 1; c <= n_cols; ++c) {
      bool covered = std::any_of(cells.begin(), cells.end(),
                                 [&](const Cell& cell) { return cell.covers(r, c); });
      if (!covered) {
        Cell pad;
        pad.row_start = pad.row_end = r;
        pad.col_start = pad.col_end = c;
        pad.emphasis.background = row_colored[r - 1];
        cells.push_back(std::move(pad));
      }
    }
  }

  if (header_rows) {
    for (Cell& cell : cells) {
      if (cell.row_start <= *header_rows) cell.header_hint = true;
    }
  }

  result.grid = Grid::checked(n_rows, n_cols, std::move(cells), std::move(annotations));
  return result;
}

namespace {

std::string cell_markup(const Cell& cell) {
  std::string inner;
  if (cell.emphasis.background) inner += "\\cellcolor{gray!20}";
  for (int i = 0; i < cell.indent; ++i) inner += "\\quad ";
  if (cell.emphasis.bold) inner += "\\textbf{" + escape(cell.content) + "}";
  else inner += escape(cell.content);
  return inner;
}

// Rows 1..k carry header hints and nothing else does; k = 0 if the hint
// pattern is not a clean top band.
std::size_t hinted_top_band(const Grid& grid) {
  std::size_t band = 0;
  for (const Cell& c : grid.cells()) {
    if (c.header_hint) band = std::max(band, c.row_end);
  }
  if (band == 0 || band >= grid.n_rows()) return 0;
  for (const Cell& c : grid.cells()) {
    bool in_band = c.row_start <= band;
    if (in_band != c.header_hint || (in_band && c.row_end > band)) return 0;
  }
  return band;
}

}  // namespace

std::string serialize_latex(const Grid& grid) {
  std::string out = "\\begin{tabular}{";
  for (std::size_t c = 0; c < grid.n_cols(); ++c) out += c == 0 ? 'l' : 'c';
  out += "}\n";
  const std::size_t band = hinted_top_band(grid);
  if (!grid.empty()) out += band ? "\\toprule\n" : "\\hline\n";
  for (std::size_t r = 1; r <= grid.n_rows(); ++r) {
    std::string line;
    std::size_t c = 1;
    while (c <= grid.n_cols()) {
      const Cell& cell = grid.cell_at(r, c);
      if (c > 1) line += " & ";
      std::string piece;
      if (cell.row_start == r) {
        piece = cell_markup(cell);
        if (cell.row_span() > 1)
          piece = "\\multirow{" + std::to_string(cell.row_span()) + "}{*}{" + piece + "}";
      }
      // A lone empty piece would read back as a blank line.
      if (piece.empty() && grid.n_cols() == 1) piece = "{}";
      if (cell.col_span() > 1)
        piece = "\\multicolumn{" + std::to_string(cell.col_span()) + "}{c}{" + piece + "}";
      line += piece;
      c = cell.col_end + 1;
    }
    out += line + " \\\\\n";
    if (band && r == band) out += "\\midrule\n";
  }
  if (!grid.empty()) out += band ? "\\bottomrule\n" : "\\hline\n";
  out += "\\end{tabular}\n";
  for (const std::string& note : grid.annotations()) out += escape(note) + "\n";
  return out;
}

}  // namespace hitree
