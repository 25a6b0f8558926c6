// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "hitree/formats.hpp"

namespace hitree::detail {

// Pads short rows of a span-free table with empty cells and builds the Grid.
// Used by the Markdown and CSV readers.
ParseResult grid_from_flat_rows(std::vector<std::vector<Cell>> rows,
                                std::vector<std::string> annotations, const char* format_name);

// Rejects spanned grids unless `flatten`; returns row-major content per
// position, with each merged cell's content copied into all positions it
// covers when flattening.
std::vector<std::vector<const Cell*>> flat_view(const Grid& grid, bool flatten,
                                                const char* format_name);

}  // namespace hitree::detail
