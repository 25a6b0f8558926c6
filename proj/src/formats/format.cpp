// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <fstream>
#include <sstream>

#include "format_internal.hpp"
#include "text_util.hpp"

namespace hitree {

std::string_view to_string(Format format) {
  switch (format) {
    case Format::LaTeX: return "latex";
    case Format::HTML: return "html";
    case Format::Markdown: return "md";
    case Format::CSV: return "csv";
  }
  return "?";
}

Format parse_format(std::string_view name) {
  std::string n = text::to_lower(name);
  if (n == "latex" || n == "tex") return Format::LaTeX;
  if (n == "html" || n == "htm") return Format::HTML;
  if (n == "md" || n == "markdown") return Format::Markdown;
  if (n == "csv") return Format::CSV;
  throw Error("unknown format '" + std::string(name) + "'");
}

std::optional<Format> format_from_extension(std::string_view path) {
  std::size_t dot = path.rfind('.');
  std::size_t slash = path.find_last_of("/\\");
  if (dot == std::string_view::npos || (slash != std::string_view::npos && dot < slash))
    return std::nullopt;
  try {
    return parse_format(path.substr(dot + 1));
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::string_view extension_for(Format format) {
  switch (format) {
    case Format::LaTeX: return ".tex";
    case Format::HTML: return ".html";
    case Format::Markdown: return ".md";
    case Format::CSV: return ".csv";
  }
  return "";
}

Format detect_format(std::string_view text) {
  if (text.find("\\begin{tabular") != std::string_view::npos) return Format::LaTeX;
  if (text::find_ci(text, "<table") != std::string_view::npos) return Format::HTML;
  auto lines = text::split_lines(text);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::string_view l = text::trim(lines[i]);
    if (l.empty() || l.find("-") == std::string_view::npos || l.find('|') == std::string_view::npos)
      continue;
    if (std::all_of(l.begin(), l.end(),
                    [](char c) { return c == '-' || c == '|' || c == ':' || c == ' '; }) &&
        lines[i - 1].find('|') != std::string::npos)
      return Format::Markdown;
  }
  return Format::CSV;
}

SourceDocument load_document(const std::string& path, std::optional<Format> format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  SourceDocument doc;
  doc.text = buffer.str();
  doc.origin = path;
  if (format) doc.format = *format;
  else if (auto by_ext = format_from_extension(path)) doc.format = *by_ext;
  else doc.format = detect_format(doc.text);
  return doc;
}

ParseResult parse_document(const SourceDocument& doc) {
  switch (doc.format) {
    case Format::LaTeX: return parse_latex(doc.text);
    case Format::HTML: return parse_html(doc.text);
    case Format::Markdown: return parse_markdown(doc.text);
    case Format::CSV: return parse_csv(doc.text);
  }
  throw ParseError("unknown format");
}

std::string serialize(const Grid& grid, Format format, SerializeOptions options) {
  switch (format) {
    case Format::LaTeX: return serialize_latex(grid);
    case Format::HTML: return serialize_html(grid);
    case Format::Markdown: return serialize_markdown(grid, options.flatten);
    case Format::CSV: return serialize_csv(grid, options.flatten);
  }
  throw Error("unknown format");
}

Tokenizer parse_tokenizer(std::string_view name) {
  if (name == "whitespace") return Tokenizer::Whitespace;
  if (name == "byte4") return Tokenizer::Byte4;
  throw Error("unknown tokenizer '" + std::string(name) + "'");
}

std::size_t count_tokens(std::string_view text, Tokenizer tokenizer) {
  if (tokenizer == Tokenizer::Byte4) return (text.size() + 3) / 4;
  std::size_t count = 0;
  bool in_token = false;
  for (char c : text) {
    bool space = text::is_space(c);
    if (!space && !in_token) ++count;
    in_token = !space;
  }
  return count;
}

TokenBucket token_bucket(std::size_t tokens) {
  if (tokens < 10000) return TokenBucket::Under10K;
  if (tokens < 20000) return TokenBucket::From10KTo20K;
  return TokenBucket::Over20K;
}

namespace detail {

ParseResult grid_from_flat_rows(std::vector<std::vector<Cell>> rows,
                                std::vector<std::string> annotations, const char* format_name) {
  ParseResult result;
  std::size_t width = 0;
  for (const auto& row : rows) width = std::max(width, row.size());
  std::vector<Cell> cells;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() < width) {
      result.warnings.push_back(std::string(format_name) + " row " + std::to_string(r + 1) +
                                " has " + std::to_string(rows[r].size()) +
                                " fields; padded to " + std::to_string(width));
      rows[r].resize(width);
    }
    for (std::size_t c = 0; c < width; ++c) {
      Cell cell = std::move(rows[r][c]);
      cell.row_start = cell.row_end = r + 1;
      cell.col_start = cell.col_end = c + 1;
      cells.push_back(std::move(cell));
    }
  }
  result.grid = Grid::checked(rows.size(), width, std::move(cells), std::move(annotations));
  return result;
}

std::vector<std::vector<const Cell*>> flat_view(const Grid& grid, bool flatten,
                                                const char* format_name) {
  if (grid.has_spans() && !flatten) {
    throw UnsupportedFeatureError(std::string(format_name) +
                                  " cannot represent merged cells; use flatten");
  }
  std::vector<std::vector<const Cell*>> view(grid.n_rows());
  for (std::size_t r = 1; r <= grid.n_rows(); ++r) {
    for (std::size_t c = 1; c <= grid.n_cols(); ++c) view[r - 1].push_back(&grid.cell_at(r, c));
  }
  return view;
}

}  // namespace detail

}  // namespace hitree
