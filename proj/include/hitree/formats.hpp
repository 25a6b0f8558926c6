// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hitree/table_model.hpp"

namespace hitree {

enum class Format { LaTeX, HTML, Markdown, CSV };

std::string_view to_string(Format format);
// Accepts latex|tex|html|htm|md|markdown|csv (case-insensitive).
Format parse_format(std::string_view name);
std::optional<Format> format_from_extension(std::string_view path);
std::string_view extension_for(Format format);

struct SourceDocument {
  Format format = Format::LaTeX;
  std::string text;
  std::optional<std::string> origin;
};

// Sniffs the syntax of `text`; falls back to CSV when nothing else matches.
Format detect_format(std::string_view text);

// Reads a UTF-8 file. `format` overrides detection (extension first, then
// content sniffing).
SourceDocument load_document(const std::string& path, std::optional<Format> format = std::nullopt);

struct ParseResult {
  Grid grid;
  std::vector<std::string> warnings;
};

// Throws ParseError when no table is found, StructureError when rows cannot
// be reconciled.
ParseResult parse_document(const SourceDocument& doc);
inline Grid parse(const SourceDocument& doc) { return parse_document(doc).grid; }

ParseResult parse_latex(std::string_view text);
ParseResult parse_html(std::string_view text);
ParseResult parse_markdown(std::string_view text);
ParseResult parse_csv(std::string_view text);

struct SerializeOptions {
  // Markdown/CSV only: copy a merged cell's content into every covered
  // position instead of rejecting the grid.
  bool flatten = false;
};

// Throws UnsupportedFeatureError for spanned grids in Markdown/CSV unless
// `flatten` is set.
std::string serialize(const Grid& grid, Format format, SerializeOptions options = {});

std::string serialize_latex(const Grid& grid);
std::string serialize_html(const Grid& grid);
std::string serialize_markdown(const Grid& grid, bool flatten);
std::string serialize_csv(const Grid& grid, bool flatten);

enum class Tokenizer { Whitespace, Byte4 };

Tokenizer parse_tokenizer(std::string_view name);

std::size_t count_tokens(std::string_view text, Tokenizer tokenizer);

// Right-open buckets: [0,10K), [10K,20K), [20K,inf).
TokenBucket token_bucket(std::size_t tokens);

}  // namespace hitree
