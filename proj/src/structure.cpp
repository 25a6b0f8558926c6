// SPDX-License-Identifier: Apache-2.0
#include "hitree/structure.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "hitree/formats.hpp"

namespace hitree {

namespace {

bool row_hinted(const Grid& grid, std::size_t r) {
  for (std::size_t c = 1; c <= grid.n_cols(); ++c)
    if (!grid.cell_at(r, c).header_hint) return false;
  return true;
}

bool body_column_hinted(const Grid& grid, std::size_t c, std::size_t first_body_row) {
  if (first_body_row > grid.n_rows()) return false;
  for (std::size_t r = first_body_row; r <= grid.n_rows(); ++r)
    if (!grid.cell_at(r, c).header_hint) return false;
  return true;
}

}  // namespace

HeaderRegion detect_header_region(const Grid& grid) {
  if (grid.empty()) throw EmptyGridError("cannot detect headers of an empty grid");
  const std::size_t row_cap = grid.n_rows() - 1;
  const std::size_t col_cap = grid.n_cols() - 1;

  std::size_t rows = 1;
  std::size_t hinted = 0;
  while (hinted < grid.n_rows() && row_hinted(grid, hinted + 1)) ++hinted;
  rows = std::min(std::max(rows, hinted), row_cap);
  for (bool grew = true; grew;) {
    grew = false;
    for (const Cell& c : grid.cells()) {
      if (c.row_start > rows || c.col_span() == 1) continue;
      std::size_t target = std::min(c.row_end + 1, row_cap);
      if (target > rows) {
        rows = target;
        grew = true;
      }
    }
  }

  std::size_t cols = 1;
  std::size_t hinted_cols = 0;
  while (hinted_cols < grid.n_cols() && body_column_hinted(grid, hinted_cols + 1, rows + 1))
    ++hinted_cols;
  cols = std::min(std::max(cols, hinted_cols), col_cap);
  for (bool grew = true; grew;) {
    grew = false;
    for (const Cell& c : grid.cells()) {
      if (c.col_start > cols || c.row_span() == 1 || c.row_end <= rows ||
          c.col_span() == grid.n_cols())
        continue;
      std::size_t target = std::min(c.col_end + 1, col_cap);
      if (target > cols) {
        cols = target;
        grew = true;
      }
    }
  }
  return {rows, cols};
}

std::optional<Axis> header_axis(const Cell& cell, const HeaderRegion& region) {
  bool top = cell.row_start <= region.header_rows;
  bool left = cell.col_start <= region.header_cols;
  if (top && left) return cell.row_end > region.header_rows ? Axis::Row : Axis::Col;
  if (top) return Axis::Col;
  if (left) return Axis::Row;
  return std::nullopt;
}

int header_level(const Cell& cell, Axis axis) {
  if (axis == Axis::Col) return static_cast<int>(cell.row_start) - 1;
  return static_cast<int>(cell.col_start) - 1 + cell.indent;
}

std::optional<RepeatedBlocks> find_repeated_blocks(const Grid& grid, const HeaderRegion& region) {
  if (grid.empty() || region.header_rows == 0) return std::nullopt;
  std::vector<std::size_t> offsets{1};
  if (region.header_cols > 0 && region.header_cols + 1 <= grid.n_cols())
    offsets.push_back(region.header_cols + 1);

  // (content, start, end) relative to the block. A cell spanning the whole
  // repeated range, such as a title, is neutral.
  using Signature = std::tuple<std::string, std::size_t, std::size_t>;
  for (std::size_t first : offsets) {
    const std::size_t width = grid.n_cols() - first + 1;
    for (std::size_t p = 2; p <= width / 2; ++p) {
      if (width % p != 0) continue;
      const std::size_t count = width / p;
      bool ok = true;
      bool any_content = false;
      for (std::size_t r = 1; ok && r <= region.header_rows; ++r) {
        std::vector<Signature> reference;
        for (std::size_t b = 0; ok && b < count; ++b) {
          const std::size_t lo = first + b * p;
          const std::size_t hi = lo + p - 1;
          std::vector<Signature> sig;
          for (std::size_t c = lo; c <= hi; ++c) {
            const Cell& cell = grid.cell_at(r, c);
            if (cell.col_start <= first && cell.col_end >= grid.n_cols()) {
              sig.emplace_back("", 0, 0);
              continue;
            }
            if (cell.col_start < lo || cell.col_end > hi) {
              ok = false;
              break;
            }
            if (!cell.content.empty()) any_content = true;
            sig.emplace_back(cell.content, cell.col_start - lo, cell.col_end - lo);
          }
          if (!ok) break;
          if (b == 0) reference = std::move(sig);
          else if (sig != reference) ok = false;
        }
      }
      if (ok && any_content) return RepeatedBlocks{first, p, count};
    }
  }
  return std::nullopt;
}

StructureFlags detect_flags(const Grid& grid, const HeaderRegion& region) {
  StructureFlags flags;
  std::set<int> indents;
  for (const Cell& c : grid.cells()) {
    auto axis = header_axis(c, region);
    if (axis == Axis::Col && c.col_span() > 1) flags.hier_col_header = true;
    if (axis == Axis::Row && c.col_span() < grid.n_cols()) {
      if (c.row_span() > 1) flags.hier_row_header = true;
      if (!c.content.empty()) indents.insert(c.indent);
    }
    if (grid.n_cols() > 1 && c.row_start > region.header_rows && c.col_start == 1 &&
        c.col_end == grid.n_cols())
      flags.nested_sub_tables = true;
    if (c.emphasis.any()) flags.miscellany = true;
  }
  if (indents.size() > 1) flags.hier_row_header = true;
  if (!grid.annotations().empty()) flags.miscellany = true;
  flags.implicit_multi_table = find_repeated_blocks(grid, region).has_value();
  return flags;
}

namespace {

double depth_ratio(const std::set<int>& levels) {
  if (levels.empty()) return 0.0;
  return std::min(1.0, static_cast<double>(levels.size() - 1) / 2.0);
}

double score_from(const Grid& grid, const HeaderRegion& region, const StructureFlags& flags) {
  std::set<int> col_levels;
  std::set<int> row_levels;
  for (const Cell& c : grid.cells()) {
    if (c.content.empty()) continue;
    auto axis = header_axis(c, region);
    if (!axis) continue;
    (*axis == Axis::Col ? col_levels : row_levels).insert(header_level(c, *axis));
  }
  return 25.0 * depth_ratio(col_levels) + 25.0 * depth_ratio(row_levels) +
         20.0 * flags.nested_sub_tables + 20.0 * flags.implicit_multi_table +
         10.0 * flags.miscellany;
}

}  // namespace

double complexity_score(const Grid& grid, const HeaderRegion& region) {
  if (grid.empty()) return 0.0;
  return score_from(grid, region, detect_flags(grid, region));
}

StructureReport classify_structures(const Grid& grid, const HeaderRegion& region) {
  StructureReport report;
  report.header_row_count = region.header_rows;
  report.header_col_count = region.header_cols;
  report.token_bucket = token_bucket(count_tokens(serialize_latex(grid), Tokenizer::Byte4));
  if (grid.empty()) return report;
  report.flags = detect_flags(grid, region);
  report.complexity_score = score_from(grid, region, report.flags);
  return report;
}

}  // namespace hitree
