// SPDX-License-Identifier: Apache-2.0
//
// HTML table reader/writer for the table/thead/tbody/tfoot/tr/th/td subset
// with rowspan/colspan. Placement follows the HTML table model: each row
// fills the leftmost position not already taken by a rowspan from above.

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <cstring>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "format_internal.hpp"
#include "text_util.hpp"

namespace hitree {

namespace {

constexpr std::string_view kNbsp = "\xC2\xA0";

struct Tag {
  std::string name;  // lower-case, without '/'
  bool closing = false;
  std::map<std::string, std::string> attrs;
  std::size_t begin = 0;
  std::size_t end = 0;  // one past '>'
};

// Parses the tag starting at text[pos] == '<'. Comments and doctypes yield a
// tag with an empty name.
std::optional<Tag> read_tag(std::string_view text, std::size_t pos) {
  if (pos >= text.size() || text[pos] != '<') return std::nullopt;
  Tag tag;
  tag.begin = pos;
  if (text.substr(pos, 4) == "<!--") {
    std::size_t close = text.find("-->", pos + 4);
    tag.end = close == std::string_view::npos ? text.size() : close + 3;
    return tag;
  }
  std::size_t close = text.find('>', pos);
  if (close == std::string_view::npos) return std::nullopt;
  tag.end = close + 1;
  std::string_view inner = text.substr(pos + 1, close - pos - 1);
  if (!inner.empty() && (inner[0] == '!' || inner[0] == '?')) return tag;
  std::size_t i = 0;
  if (i < inner.size() && inner[i] == '/') {
    tag.closing = true;
    ++i;
  }
  std::size_t name_start = i;
  while (i < inner.size() && (std::isalnum(static_cast<unsigned char>(inner[i])) != 0)) ++i;
  tag.name = text::to_lower(inner.substr(name_start, i - name_start));
  if (tag.name.empty()) return std::nullopt;
  while (i < inner.size()) {
    while (i < inner.size() && (text::is_space(inner[i]) || inner[i] == '/')) ++i;
    std::size_t key_start = i;
    while (i < inner.size() && !text::is_space(inner[i]) && inner[i] != '=' && inner[i] != '/')
      ++i;
    std::string key = text::to_lower(inner.substr(key_start, i - key_start));
    if (key.empty()) {
      ++i;
      continue;
    }
    while (i < inner.size() && text::is_space(inner[i])) ++i;
    std::string value;
    if (i < inner.size() && inner[i] == '=') {
      ++i;
      while (i < inner.size() && text::is_space(inner[i])) ++i;
      if (i < inner.size() && (inner[i] == '"' || inner[i] == '\'')) {
        char quote = inner[i++];
        std::size_t v = i;
        while (i < inner.size() && inner[i] != quote) ++i;
        value = std::string(inner.substr(v, i - v));
        if (i < inner.size()) ++i;
      } else {
        std::size_t v = i;
        while (i < inner.size() && !text::is_space(inner[i])) ++i;
        value = std::string(inner.substr(v, i - v));
      }
    }
    tag.attrs[key] = value;
  }
  return tag;
}

void append_utf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string decode_entities(std::string_view s) {
  static const std::map<std::string, std::string, std::less<>> kNamed = {
      {"amp", "&"},   {"lt", "<"},    {"gt", ">"},           {"quot", "\""},
      {"apos", "'"},  {"nbsp", std::string(kNbsp)},           {"ensp", " "},
      {"emsp", " "},  {"thinsp", " "}, {"ndash", "\xE2\x80\x93"}, {"mdash", "\xE2\x80\x94"}};
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out.push_back(s[i]);
      continue;
    }
    std::size_t semi = s.find(';', i);
    if (semi == std::string_view::npos || semi - i > 10) {
      out.push_back('&');
      continue;
    }
    std::string_view name = s.substr(i + 1, semi - i - 1);
    if (!name.empty() && name[0] == '#') {
      bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
      std::string digits(name.substr(hex ? 2 : 1));
      char* end = nullptr;
      unsigned long cp = std::strtoul(digits.c_str(), &end, hex ? 16 : 10);
      if (!digits.empty() && end && *end == '\0') {
        append_utf8(out, cp);
        i = semi;
        continue;
      }
    } else if (auto it = kNamed.find(name); it != kNamed.end()) {
      out += it->second;
      i = semi;
      continue;
    }
    out.push_back('&');
  }
  return out;
}

std::string escape_html(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

bool is_block_tag(std::string_view name) {
  static constexpr std::string_view kBlocks[] = {"p",  "div", "br", "li", "h1", "h2", "h3",
                                                 "h4", "h5",  "h6", "tr", "table", "caption",
                                                 "ul", "ol",  "section", "footer", "header"};
  return std::find(std::begin(kBlocks), std::end(kBlocks), name) != std::end(kBlocks);
}

// Visible text of an HTML fragment; block-level tags become line breaks.
std::string visible_text(std::string_view html) {
  std::string out;
  std::size_t i = 0;
  while (i < html.size()) {
    if (html[i] == '<') {
      if (auto tag = read_tag(html, i)) {
        if ((tag->name == "script" || tag->name == "style" || tag->name == "head") &&
            !tag->closing) {
          std::string close = "</" + tag->name;
          std::size_t end = text::find_ci(html, close, tag->end);
          i = end == std::string_view::npos ? html.size() : html.find('>', end) + 1;
          if (i == 0) i = html.size();
          continue;
        }
        if (is_block_tag(tag->name)) out.push_back('\n');
        else if (tag->name == "td" || tag->name == "th") out.push_back(' ');
        i = tag->end;
        continue;
      }
    }
    char c = html[i++];
    out.push_back(c == '\n' || c == '\r' ? ' ' : c);
  }
  return decode_entities(out);
}

void collect_annotations(std::string_view html, std::vector<std::string>& out) {
  for (const std::string& line : text::split_lines(visible_text(html))) {
    std::string note = text::collapse_whitespace(line);
    if (!note.empty()) out.push_back(std::move(note));
  }
}

std::optional<double> css_length_em(std::string_view style, std::string_view property) {
  std::string lower = text::to_lower(style);
  std::size_t at = lower.find(property);
  if (at == std::string::npos) return std::nullopt;
  std::size_t colon = lower.find(':', at);
  if (colon == std::string::npos) return std::nullopt;
  std::string value(text::trim(std::string_view(lower).substr(colon + 1)));
  char* end = nullptr;
  double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str()) return std::nullopt;
  std::string unit(end, end + std::min<std::size_t>(2, std::strlen(end)));
  if (unit == "px") return v / 16.0;
  if (unit == "pt") return v / 12.0;
  return v;
}

bool style_has(std::string_view style, std::string_view property) {
  return text::to_lower(style).find(property) != std::string::npos;
}

struct SourceCell {
  std::size_t rowspan = 1;
  std::size_t colspan = 1;
  bool open_rowspan = false;  // rowspan="0": to the end of the table
  Cell proto;
};

std::size_t span_attr(const Tag& tag, const char* key, bool& zero) {
  auto it = tag.attrs.find(key);
  if (it == tag.attrs.end()) return 1;
  long v = std::atol(it->second.c_str());
  if (v == 0 && std::string_view(key) == "rowspan" && text::trim(it->second) == "0") {
    zero = true;
    return 1;
  }
  return v < 1 ? 1 : static_cast<std::size_t>(v);
}

// Inner markup of a cell -> content, indent and emphasis.
void fill_cell(const Tag& open, std::string_view inner, SourceCell& sc) {
  Cell& cell = sc.proto;
  cell.header_hint = open.name == "th";
  auto style_it = open.attrs.find("style");
  std::string style = style_it == open.attrs.end() ? "" : style_it->second;
  if (open.attrs.count("bgcolor") || style_has(style, "background")) cell.emphasis.background = true;
  if (style_has(style, "font-weight:bold") || style_has(style, "font-weight: bold"))
    cell.emphasis.bold = true;
  if (auto pad = css_length_em(style, "padding-left")) {
    if (*pad >= 1.0) cell.indent += static_cast<int>(*pad);
  }

  // Unwrap <b>/<strong> that encloses all visible content.
  std::string_view body = text::trim(inner);
  std::string lead;
  while (true) {
    std::size_t i = 0;
    while (i < body.size()) {
      if (text::is_space(body[i])) ++i;
      else if (body.substr(i, 6) == "&nbsp;") i += 6;
      else if (body.substr(i, 2) == kNbsp) i += 2;
      else break;
    }
    std::string_view rest = body.substr(i);
    auto tag = read_tag(rest, 0);
    if (!tag || tag->closing || (tag->name != "b" && tag->name != "strong")) break;
    std::string close = "</" + tag->name + ">";
    std::string_view trimmed = text::trim(rest);
    if (!text::starts_with_ci(trimmed.substr(trimmed.size() >= close.size()
                                                 ? trimmed.size() - close.size()
                                                 : 0),
                              close))
      break;
    // The closing tag must belong to this opening tag.
    std::string_view between =
        trimmed.substr(tag->end, trimmed.size() - close.size() - tag->end);
    if (text::find_ci(between, "</" + tag->name) != std::string_view::npos) break;
    cell.emphasis.bold = true;
    lead.append(body.substr(0, i));
    body = between;
  }

  std::string decoded;
  {
    std::string raw = lead + std::string(body);
    std::string stripped;
    std::size_t i = 0;
    while (i < raw.size()) {
      if (raw[i] == '<') {
        if (auto tag = read_tag(raw, i)) {
          stripped.push_back(' ');
          i = tag->end;
          continue;
        }
      }
      stripped.push_back(raw[i++]);
    }
    decoded = decode_entities(stripped);
  }
  std::size_t i = 0;
  int nbsp = 0;
  while (i < decoded.size()) {
    if (decoded.compare(i, 2, kNbsp) == 0) {
      ++nbsp;
      i += 2;
    } else if (text::is_space(decoded[i])) {
      ++i;
    } else {
      break;
    }
  }
  cell.indent += nbsp / 2;
  cell.content = text::collapse_whitespace(std::string_view(decoded).substr(i));
}

}  // namespace

ParseResult parse_html(std::string_view html) {
  std::size_t table_at = text::find_ci(html, "<table");
  while (table_at != std::string_view::npos) {
    auto tag = read_tag(html, table_at);
    if (tag && tag->name == "table" && !tag->closing) break;
    table_at = text::find_ci(html, "<table", table_at + 1);
  }
  if (table_at == std::string_view::npos) throw ParseError("no <table> element found");

  ParseResult result;
  std::vector<std::string> annotations;
  collect_annotations(html.substr(0, table_at), annotations);

  std::vector<std::vector<SourceCell>> rows;
  std::vector<std::string> captions;
  bool row_open = false;
  std::optional<Tag> cell_open;
  std::size_t cell_body_start = 0;
  std::size_t caption_start = std::string_view::npos;
  int depth = 0;
  std::size_t pos = table_at;
  std::size_t table_end = html.size();
  bool terminated = false;

  auto close_cell = [&](std::size_t at) {
    if (!cell_open) return;
    if (!row_open) {
      rows.emplace_back();
      row_open = true;
    }
    SourceCell sc;
    bool zero = false;
    sc.rowspan = span_attr(*cell_open, "rowspan", zero);
    sc.open_rowspan = zero;
    bool unused = false;
    sc.colspan = span_attr(*cell_open, "colspan", unused);
    fill_cell(*cell_open, html.substr(cell_body_start, at - cell_body_start), sc);
    rows.back().push_back(std::move(sc));
    cell_open.reset();
  };

  while (pos < html.size()) {
    std::size_t lt = html.find('<', pos);
    if (lt == std::string_view::npos) break;
    auto tag = read_tag(html, lt);
    if (!tag) {
      pos = lt + 1;
      continue;
    }
    pos = tag->end;
    if (tag->name == "table") {
      if (!tag->closing) {
        ++depth;
      } else if (--depth == 0) {
        close_cell(tag->begin);
        table_end = tag->end;
        terminated = true;
        break;
      }
      continue;
    }
    if (depth != 1) continue;  // nested tables stay inside their cell text
    if (tag->name == "caption") {
      if (!tag->closing) caption_start = tag->end;
      else if (caption_start != std::string_view::npos) {
        collect_annotations(html.substr(caption_start, tag->begin - caption_start), captions);
        caption_start = std::string_view::npos;
      }
    } else if (tag->name == "tr") {
      close_cell(tag->begin);
      if (!tag->closing) {
        rows.emplace_back();
        row_open = true;
      } else {
        row_open = false;
      }
    } else if (tag->name == "td" || tag->name == "th") {
      close_cell(tag->begin);
      if (!tag->closing) {
        cell_open = *tag;
        cell_body_start = tag->end;
      }
    } else if (tag->name == "thead" || tag->name == "tbody" || tag->name == "tfoot") {
      close_cell(tag->begin);
      row_open = false;
    }
  }
  if (!terminated) {
    close_cell(html.size());
    result.warnings.push_back("unterminated <table> element");
  }
  annotations.insert(annotations.end(), captions.begin(), captions.end());
  std::string_view after = html.substr(table_end);
  if (text::find_ci(after, "<table") != std::string_view::npos)
    result.warnings.push_back("additional tables ignored; only the first is parsed");
  collect_annotations(after, annotations);

  const std::size_t n_rows = rows.size();

  std::vector<Cell> cells;
  std::vector<std::vector<bool>> taken(n_rows);
  std::size_t n_cols = 0;
  auto occupied = [&](std::size_t r, std::size_t c) {
    return c < taken[r].size() && taken[r][c];
  };
  for (std::size_t r = 0; r < n_rows; ++r) {
    std::size_t c = 0;
    for (const SourceCell& sc : rows[r]) {
      while (occupied(r, c)) ++c;
      std::size_t span_rows = sc.open_rowspan ? n_rows - r : sc.rowspan;
      if (r + span_rows > n_rows) {
        result.warnings.push_back("rowspan in row " + std::to_string(r + 1) +
                                  " clipped to the table end");
        span_rows = n_rows - r;
      }
      for (std::size_t rr = r; rr < r + span_rows; ++rr) {
        for (std::size_t k = c; k < c + sc.colspan; ++k) {
          if (occupied(rr, k))
            throw StructureError(r + 1, "cell overlaps a rowspan from an earlier row");
          if (taken[rr].size() <= k) taken[rr].resize(k + 1, false);
          taken[rr][k] = true;
        }
      }
      Cell cell = sc.proto;
      cell.row_start = r + 1;
      cell.row_end = r + span_rows;
      cell.col_start = c + 1;
      cell.col_end = c + sc.colspan;
      cells.push_back(std::move(cell));
      c += sc.colspan;
      n_cols = std::max(n_cols, c);
    }
  }
  bool padded = false;
  for (std::size_t r = 0; r < n_rows; ++r) {
    for (std::size_t c = 0; c < n_cols; ++c) {
      if (occupied(r, c)) continue;
      Cell pad;
      pad.row_start = pad.row_end = r + 1;
      pad.col_start = pad.col_end = c + 1;
      cells.push_back(std::move(pad));
      padded = true;
    }
  }
  if (padded) result.warnings.push_back("short rows padded with empty cells");

  result.grid = Grid::checked(n_rows, n_cols, std::move(cells), std::move(annotations));
  return result;
}

std::string serialize_html(const Grid& grid) {
  std::string out = "<table>\n";
  for (std::size_t r = 1; r <= grid.n_rows(); ++r) {
    out += "  <tr>";
    for (const Cell& cell : grid.cells()) {
      if (cell.row_start != r) continue;
      const char* tag = cell.header_hint ? "th" : "td";
      out += "<";
      out += tag;
      if (cell.row_span() > 1) out += " rowspan=\"" + std::to_string(cell.row_span()) + "\"";
      if (cell.col_span() > 1) out += " colspan=\"" + std::to_string(cell.col_span()) + "\"";
      if (cell.emphasis.background) out += " style=\"background-color:#e2efda\"";
      out += ">";
      out += text::repeat("&nbsp;&nbsp;", static_cast<std::size_t>(cell.indent));
      if (cell.emphasis.bold) out += "<b>" + escape_html(cell.content) + "</b>";
      else out += escape_html(cell.content);
      out += "</";
      out += tag;
      out += ">";
    }
    out += "</tr>\n";
  }
  out += "</table>\n";
  for (const std::string& note : grid.annotations()) out += "<p>" + escape_html(note) + "</p>\n";
  return out;
}

}  // namespace hitree
