// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hitree/error.hpp"

namespace hitree {

using Json = nlohmann::ordered_json;

// Index into Grid::cells().
using CellRef = std::size_t;

inline constexpr CellRef kNoCell = static_cast<CellRef>(-1);

// Closed set of styling signals kept from the source; everything else is
// dropped at parse time.
struct EmphasisSet {
  bool background = false;
  bool bold = false;

  bool any() const noexcept { return background || bold; }
  friend bool operator==(const EmphasisSet&, const EmphasisSet&) = default;
};

// One logical cell. Indices are 1-based and inclusive; a merged region is a
// single Cell whose rectangle covers several grid positions.
struct Cell {
  std::size_t row_start = 1;
  std::size_t row_end = 1;
  std::size_t col_start = 1;
  std::size_t col_end = 1;
  std::string content;
  EmphasisSet emphasis;
  // Leading indentation units that preceded the content in the source.
  int indent = 0;
  // Source marked the cell as a header (HTML th, rows above a booktabs
  // \midrule, the Markdown header row).
  bool header_hint = false;

  std::size_t row_span() const noexcept { return row_end - row_start + 1; }
  std::size_t col_span() const noexcept { return col_end - col_start + 1; }
  std::size_t area() const noexcept { return row_span() * col_span(); }
  bool covers(std::size_t row, std::size_t col) const noexcept {
    return row >= row_start && row <= row_end && col >= col_start && col <= col_end;
  }

  friend bool operator==(const Cell&, const Cell&) = default;
};

// Normalized rectangular table. Immutable once constructed.
//
// The constructor accepts any cell list so that validate() can report on
// broken input; parsers and transformations go through Grid::checked(),
// which throws unless every invariant holds.
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t n_rows, std::size_t n_cols, std::vector<Cell> cells,
       std::vector<std::string> annotations = {});

  static Grid checked(std::size_t n_rows, std::size_t n_cols, std::vector<Cell> cells,
                      std::vector<std::string> annotations = {});

  std::size_t n_rows() const noexcept { return n_rows_; }
  std::size_t n_cols() const noexcept { return n_cols_; }
  bool empty() const noexcept { return n_rows_ == 0 || n_cols_ == 0; }

  const std::vector<Cell>& cells() const noexcept { return cells_; }
  const Cell& cell(CellRef ref) const { return cells_.at(ref); }
  const std::vector<std::string>& annotations() const noexcept { return annotations_; }

  // Throws BoundsError for positions outside the grid or not covered by any
  // cell (the latter only happens on grids that fail validate()).
  CellRef ref_at(std::size_t row, std::size_t col) const;
  const Cell& cell_at(std::size_t row, std::size_t col) const { return cells_[ref_at(row, col)]; }

  bool has_spans() const noexcept;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t n_rows_ = 0;
  std::size_t n_cols_ = 0;
  std::vector<Cell> cells_;
  std::vector<CellRef> index_;
  std::vector<std::string> annotations_;
};

// Same as operator== but ignores Cell::header_hint, for formats that cannot
// carry per-cell header marks.
bool equal_ignoring_hints(const Grid& a, const Grid& b);

struct Violation {
  enum class Kind { Ordering, Bounds, Overlap, Gap };
  Kind kind;
  std::string message;
};

std::string_view to_string(Violation::Kind kind);

std::vector<Violation> validate(const Grid& grid);

enum class Axis { Row, Col };

// (axis+level, start, end, content) encoding of a header cell.
struct HeaderTuple {
  Axis axis = Axis::Col;
  int level = 0;
  std::size_t start = 1;
  std::size_t end = 1;
  std::string content;
  std::optional<CellRef> origin;

  bool contains(const HeaderTuple& other) const noexcept {
    return start <= other.start && other.end <= end;
  }
  bool overlaps(const HeaderTuple& other) const noexcept {
    return start <= other.end && other.start <= end;
  }
  std::size_t width() const noexcept { return end - start + 1; }

  friend bool operator==(const HeaderTuple&, const HeaderTuple&) = default;
};

// "(R0, 1, 2, City)"
std::string to_string(const HeaderTuple& tuple);

struct TreeNode {
  std::optional<HeaderTuple> tuple;  // absent for ROOT
  std::vector<TreeNode> children;
  bool is_leaf = false;

  int level() const noexcept { return tuple ? tuple->level : -1; }
  bool is_root() const noexcept { return !tuple.has_value(); }

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct HeaderTree {
  TreeNode row_root;
  TreeNode col_root;

  const TreeNode& root(Axis axis) const noexcept {
    return axis == Axis::Row ? row_root : col_root;
  }

  friend bool operator==(const HeaderTree&, const HeaderTree&) = default;
};

enum class TokenBucket { Under10K, From10KTo20K, Over20K };

std::string_view to_string(TokenBucket bucket);
TokenBucket parse_token_bucket(std::string_view text);

struct StructureFlags {
  bool hier_col_header = false;
  bool hier_row_header = false;
  bool nested_sub_tables = false;
  bool implicit_multi_table = false;
  bool miscellany = false;

  friend bool operator==(const StructureFlags&, const StructureFlags&) = default;
};

struct StructureReport {
  StructureFlags flags;
  std::size_t header_row_count = 0;
  std::size_t header_col_count = 0;
  double complexity_score = 0.0;
  TokenBucket token_bucket = TokenBucket::Under10K;
};

// Canonical JSON. Field order is fixed so output is byte-stable.
Json to_json(const Cell& cell);
Json to_json(const Grid& grid);
Json to_json(const HeaderTuple& tuple);
Json to_json(const TreeNode& node);
Json to_json(const HeaderTree& tree);
Json to_json(const StructureReport& report);

Grid grid_from_json(const Json& json);
HeaderTuple tuple_from_json(const Json& json);

}  // namespace hitree
