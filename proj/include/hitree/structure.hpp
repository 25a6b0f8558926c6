// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "hitree/table_model.hpp"

namespace hitree {

struct HeaderRegion {
  std::size_t header_rows = 0;
  std::size_t header_cols = 0;

  friend bool operator==(const HeaderRegion&, const HeaderRegion&) = default;
};

// Throws EmptyGridError on a 0-row or 0-column grid.
//
// Both counts start at 1 and grow while merged cells at the band edge reach
// further (column spans push the top band down, row spans in the left band
// push it right). A grid with a single row or column gets 0 on that axis.
HeaderRegion detect_header_region(const Grid& grid);

// Which axis, if any, a cell is a header for under `region`. Cells in the
// corner (top-left) that extend below the top band are row headers; all
// other corner cells are column headers.
std::optional<Axis> header_axis(const Cell& cell, const HeaderRegion& region);

// Tuple level for a header cell: row index - 1 for column headers,
// column index - 1 + indent for row headers.
int header_level(const Cell& cell, Axis axis);

// Repeating column-header block layout, when present.
struct RepeatedBlocks {
  std::size_t first_col = 1;  // first column of block 1
  std::size_t width = 0;      // columns per block
  std::size_t count = 0;      // number of blocks (>= 2)
};

std::optional<RepeatedBlocks> find_repeated_blocks(const Grid& grid, const HeaderRegion& region);

StructureFlags detect_flags(const Grid& grid, const HeaderRegion& region);

// 25*col_depth_ratio + 25*row_depth_ratio + 20*nested + 20*implicit + 10*misc,
// where depth_ratio = min(1, (levels - 1) / 2).
double complexity_score(const Grid& grid, const HeaderRegion& region);

StructureReport classify_structures(const Grid& grid, const HeaderRegion& region);

enum class PerturbationKind { SwapSiblingBlocks, TransposeHeaderLevels, ReorderSubTables };

std::string_view to_string(PerturbationKind kind);
// Accepts swap-sibling-blocks|transpose-header-levels|reorder-sub-tables and
// the CamelCase names.
PerturbationKind parse_perturbation_kind(std::string_view name);

// Throws InapplicablePerturbationError when the grid lacks the structure the
// kind rearranges.
Grid perturb_structure(const Grid& grid, PerturbationKind kind, std::uint64_t seed);
Grid perturb_structure(const Grid& grid, const HeaderRegion& region, PerturbationKind kind,
                       std::uint64_t seed);

}  // namespace hitree
