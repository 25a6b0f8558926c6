// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <numeric>
#include <random>

#include "hitree/structure.hpp"

namespace hitree {

namespace {

struct Span {
  std::size_t start;
  std::size_t end;
};

// Moves every cell through row_map/col_map (1-based, old -> new). A cell
// whose covered rows or columns stop being contiguous makes the move
// inapplicable.
Grid remap(const Grid& grid, const std::vector<std::size_t>& row_map,
           const std::vector<std::size_t>& col_map, const char* what) {
  std::vector<Cell> cells;
  cells.reserve(grid.cells().size());
  for (Cell c : grid.cells()) {
    std::size_t r_lo = row_map[c.row_start], r_hi = r_lo;
    for (std::size_t r = c.row_start; r <= c.row_end; ++r) {
      r_lo = std::min(r_lo, row_map[r]);
      r_hi = std::max(r_hi, row_map[r]);
    }
    std::size_t c_lo = col_map[c.col_start], c_hi = c_lo;
    for (std::size_t k = c.col_start; k <= c.col_end; ++k) {
      c_lo = std::min(c_lo, col_map[k]);
      c_hi = std::max(c_hi, col_map[k]);
    }
    if (r_hi - r_lo + 1 != c.row_span() || c_hi - c_lo + 1 != c.col_span()) {
      throw InapplicablePerturbationError(std::string(what) + ": a merged cell crosses the moved blocks");
    }
    c.row_start = r_lo;
    c.row_end = r_hi;
    c.col_start = c_lo;
    c.col_end = c_hi;
    cells.push_back(std::move(c));
  }
  return Grid::checked(grid.n_rows(), grid.n_cols(), std::move(cells), grid.annotations());
}

std::vector<std::size_t> identity_map(std::size_t n) {
  std::vector<std::size_t> map(n + 1);
  std::iota(map.begin(), map.end(), 0);
  return map;
}

bool closed_range(const Grid& grid, std::size_t lo, std::size_t hi) {
  for (const Cell& c : grid.cells()) {
    if (c.row_end < lo || c.row_start > hi) continue;
    if (c.row_start < lo || c.row_end > hi) return false;
  }
  return true;
}

// Sub-table blocks: each full-width body row opens a block that runs to the
// next one. Without such separators, blocks are the row spans of merged
// first-column body cells.
std::vector<Span> sibling_blocks(const Grid& grid, const HeaderRegion& region) {
  std::vector<std::size_t> separators;
  for (const Cell& c : grid.cells()) {
    if (grid.n_cols() > 1 && c.row_start > region.header_rows && c.col_start == 1 &&
        c.col_end == grid.n_cols())
      separators.push_back(c.row_start);
  }
  std::vector<Span> blocks;
  if (separators.size() >= 2) {
    std::sort(separators.begin(), separators.end());
    for (std::size_t i = 0; i < separators.size(); ++i) {
      std::size_t end = i + 1 < separators.size() ? separators[i + 1] - 1 : grid.n_rows();
      blocks.push_back({separators[i], end});
    }
    return blocks;
  }
  for (const Cell& c : grid.cells()) {
    if (c.col_start == 1 && c.row_start > region.header_rows && c.row_span() > 1)
      blocks.push_back({c.row_start, c.row_end});
  }
  std::sort(blocks.begin(), blocks.end(), [](Span a, Span b) { return a.start < b.start; });
  return blocks;
}

Grid swap_sibling_blocks(const Grid& grid, const HeaderRegion& region, std::mt19937_64& rng) {
  std::vector<Span> blocks = sibling_blocks(grid, region);
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i + 1 < blocks.size(); ++i) {
    if (blocks[i].end + 1 == blocks[i + 1].start &&
        closed_range(grid, blocks[i].start, blocks[i].end) &&
        closed_range(grid, blocks[i + 1].start, blocks[i + 1].end))
      candidates.push_back(i);
  }
  if (candidates.empty())
    throw InapplicablePerturbationError("swap-sibling-blocks: no two adjacent sibling blocks");
  std::size_t pick = candidates[rng() % candidates.size()];
  Span a = blocks[pick];
  Span b = blocks[pick + 1];
  std::size_t b_len = b.end - b.start + 1;
  auto rows = identity_map(grid.n_rows());
  for (std::size_t r = a.start; r <= a.end; ++r) rows[r] = r + b_len;
  for (std::size_t r = b.start; r <= b.end; ++r) rows[r] = a.start + (r - b.start);
  return remap(grid, rows, identity_map(grid.n_cols()), "swap-sibling-blocks");
}

// Header row `a` holds k parents of equal width m; row a+1 repeats the same
// m labels under each parent. The result lists the labels on top and the
// parents below, with data columns regrouped to match.
std::optional<Grid> try_transpose(const Grid& grid, const HeaderRegion& region, std::size_t a) {
  const std::size_t first = region.header_cols + 1;
  const std::size_t last = grid.n_cols();
  if (first > last) return std::nullopt;
  const std::size_t width = last - first + 1;

  std::vector<const Cell*> parents;
  for (std::size_t c = first; c <= last;) {
    const Cell& p = grid.cell_at(a, c);
    if (p.col_start != c || p.row_start != a || p.row_end != a || p.col_end > last)
      return std::nullopt;
    parents.push_back(&p);
    c = p.col_end + 1;
  }
  const std::size_t k = parents.size();
  const std::size_t m = parents.front()->col_span();
  if (k < 2 || m < 2 || k * m != width) return std::nullopt;
  for (const Cell* p : parents)
    if (p->col_span() != m) return std::nullopt;

  std::vector<const Cell*> labels;
  for (std::size_t c = first; c <= last; ++c) {
    const Cell& l = grid.cell_at(a + 1, c);
    if (l.area() != 1) return std::nullopt;
    std::size_t j = (c - first) % m;
    if (c - first >= m && labels[j]->content != l.content) return std::nullopt;
    if (c - first < m) labels.push_back(&l);
  }

  for (const Cell& c : grid.cells()) {
    if (c.row_end >= a || c.col_end < first) continue;
    if (c.col_start > first || c.col_end < last) return std::nullopt;
  }

  auto cols = identity_map(grid.n_cols());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < m; ++j) cols[first + i * m + j] = first + j * k + i;

  std::vector<Cell> rest;
  std::vector<Cell> rebuilt;
  for (const Cell& c : grid.cells()) {
    bool in_levels = (c.row_start == a || c.row_start == a + 1) && c.col_start >= first;
    if (!in_levels) rest.push_back(c);
  }
  for (std::size_t j = 0; j < m; ++j) {
    Cell top = *labels[j];
    top.row_start = top.row_end = a;
    top.col_start = first + j * k;
    top.col_end = top.col_start + k - 1;
    rebuilt.push_back(std::move(top));
    for (std::size_t i = 0; i < k; ++i) {
      Cell bottom = *parents[i];
      bottom.row_start = bottom.row_end = a + 1;
      bottom.col_start = bottom.col_end = first + j * k + i;
      rebuilt.push_back(std::move(bottom));
    }
  }
  std::vector<Cell> moved;
  for (Cell c : rest) {
    std::size_t lo = cols[c.col_start], hi = lo;
    for (std::size_t x = c.col_start; x <= c.col_end; ++x) {
      lo = std::min(lo, cols[x]);
      hi = std::max(hi, cols[x]);
    }
    if (hi - lo + 1 != c.col_span()) return std::nullopt;
    c.col_start = lo;
    c.col_end = hi;
    moved.push_back(std::move(c));
  }
  for (Cell& c : rebuilt) moved.push_back(std::move(c));
  return Grid::checked(grid.n_rows(), grid.n_cols(), std::move(moved), grid.annotations());
}

Grid transpose_header_levels(const Grid& grid, const HeaderRegion& region) {
  for (std::size_t a = 1; a + 1 <= region.header_rows; ++a) {
    if (auto out = try_transpose(grid, region, a)) return *out;
  }
  throw InapplicablePerturbationError(
      "transpose-header-levels: no two-level cross-product column header");
}

Grid reorder_sub_tables(const Grid& grid, const HeaderRegion& region, std::mt19937_64& rng) {
  auto blocks = find_repeated_blocks(grid, region);
  if (!blocks) throw InapplicablePerturbationError("reorder-sub-tables: no repeated header blocks");
  std::vector<std::size_t> order(blocks->count);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size() - 1; i > 0; --i) std::swap(order[i], order[rng() % (i + 1)]);
  if (std::is_sorted(order.begin(), order.end()))
    std::rotate(order.begin(), order.begin() + 1, order.end());
  auto cols = identity_map(grid.n_cols());
  for (std::size_t b = 0; b < blocks->count; ++b) {
    for (std::size_t t = 0; t < blocks->width; ++t)
      cols[blocks->first_col + b * blocks->width + t] =
          blocks->first_col + order[b] * blocks->width + t;
  }
  return remap(grid, identity_map(grid.n_rows()), cols, "reorder-sub-tables");
}

}  // namespace

std::string_view to_string(PerturbationKind kind) {
  switch (kind) {
    case PerturbationKind::SwapSiblingBlocks: return "swap-sibling-blocks";
    case PerturbationKind::TransposeHeaderLevels: return "transpose-header-levels";
    case PerturbationKind::ReorderSubTables: return "reorder-sub-tables";
  }
  return "?";
}

PerturbationKind parse_perturbation_kind(std::string_view name) {
  if (name == "swap-sibling-blocks" || name == "SwapSiblingBlocks")
    return PerturbationKind::SwapSiblingBlocks;
  if (name == "transpose-header-levels" || name == "TransposeHeaderLevels")
    return PerturbationKind::TransposeHeaderLevels;
  if (name == "reorder-sub-tables" || name == "ReorderSubTables")
    return PerturbationKind::ReorderSubTables;
  throw Error("unknown perturbation kind '" + std::string(name) + "'");
}

Grid perturb_structure(const Grid& grid, PerturbationKind kind, std::uint64_t seed) {
  return perturb_structure(grid, detect_header_region(grid), kind, seed);
}

Grid perturb_structure(const Grid& grid, const HeaderRegion& region, PerturbationKind kind,
                       std::uint64_t seed) {
  if (grid.empty()) throw InapplicablePerturbationError("empty grid");
  std::mt19937_64 rng(seed);
  switch (kind) {
    case PerturbationKind::SwapSiblingBlocks: return swap_sibling_blocks(grid, region, rng);
    case PerturbationKind::TransposeHeaderLevels: return transpose_header_levels(grid, region);
    case PerturbationKind::ReorderSubTables: return reorder_sub_tables(grid, region, rng);
  }
  throw Error("unknown perturbation kind");
}

}  // namespace hitree
