// SPDX-License-Identifier: Apache-2.0
#include "hitree/table_model.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace hitree {

namespace {

std::string region_text(const Cell& c) {
  std::ostringstream out;
  out << "[r" << c.row_start << "-" << c.row_end << ", c" << c.col_start << "-" << c.col_end
      << "]";
  return out.str();
}

bool cell_order(const Cell& a, const Cell& b) {
  return std::tie(a.row_start, a.col_start, a.row_end, a.col_end) <
         std::tie(b.row_start, b.col_start, b.row_end, b.col_end);
}

}  // namespace

Grid::Grid(std::size_t n_rows, std::size_t n_cols, std::vector<Cell> cells,
           std::vector<std::string> annotations)
    : n_rows_(n_rows),
      n_cols_(n_cols),
      cells_(std::move(cells)),
      index_(n_rows * n_cols, kNoCell),
      annotations_(std::move(annotations)) {
  std::stable_sort(cells_.begin(), cells_.end(), cell_order);
  for (CellRef ref = 0; ref < cells_.size(); ++ref) {
    const Cell& c = cells_[ref];
    if (c.row_start < 1 || c.col_start < 1 || c.row_start > c.row_end || c.col_start > c.col_end)
      continue;
    for (std::size_t r = c.row_start; r <= std::min(c.row_end, n_rows_); ++r) {
      for (std::size_t col = c.col_start; col <= std::min(c.col_end, n_cols_); ++col) {
        CellRef& slot = index_[(r - 1) * n_cols_ + (col - 1)];
        if (slot == kNoCell) slot = ref;
      }
    }
  }
}

Grid Grid::checked(std::size_t n_rows, std::size_t n_cols, std::vector<Cell> cells,
                   std::vector<std::string> annotations) {
  Grid grid(n_rows, n_cols, std::move(cells), std::move(annotations));
  auto violations = validate(grid);
  if (!violations.empty()) {
    std::string message = "invalid grid: " + violations.front().message;
    if (violations.size() > 1)
      message += " (+" + std::to_string(violations.size() - 1) + " more)";
    throw Error(message);
  }
  return grid;
}

CellRef Grid::ref_at(std::size_t row, std::size_t col) const {
  if (row < 1 || row > n_rows_ || col < 1 || col > n_cols_) {
    throw BoundsError("position (" + std::to_string(row) + "," + std::to_string(col) +
                      ") outside " + std::to_string(n_rows_) + "x" + std::to_string(n_cols_) +
                      " grid");
  }
  CellRef ref = index_[(row - 1) * n_cols_ + (col - 1)];
  if (ref == kNoCell) {
    throw BoundsError("position (" + std::to_string(row) + "," + std::to_string(col) +
                      ") is not covered by any cell");
  }
  return ref;
}

bool Grid::has_spans() const noexcept {
  return std::any_of(cells_.begin(), cells_.end(), [](const Cell& c) { return c.area() > 1; });
}

bool equal_ignoring_hints(const Grid& a, const Grid& b) {
  if (a.n_rows() != b.n_rows() || a.n_cols() != b.n_cols() ||
      a.annotations() != b.annotations() || a.cells().size() != b.cells().size())
    return false;
  for (std::size_t i = 0; i < a.cells().size(); ++i) {
    Cell x = a.cells()[i];
    Cell y = b.cells()[i];
    x.header_hint = y.header_hint = false;
    if (!(x == y)) return false;
  }
  return true;
}

std::string_view to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::Ordering: return "ordering";
    case Violation::Kind::Bounds: return "bounds";
    case Violation::Kind::Overlap: return "overlap";
    case Violation::Kind::Gap: return "gap";
  }
  return "unknown";
}

std::vector<Violation> validate(const Grid& grid) {
  std::vector<Violation> out;
  const std::size_t rows = grid.n_rows();
  const std::size_t cols = grid.n_cols();
  std::vector<int> claimed(rows * cols, -1);

  const auto& cells = grid.cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& c = cells[i];
    if (c.row_start > c.row_end || c.col_start > c.col_end) {
      out.push_back({Violation::Kind::Ordering, "cell " + region_text(c) + " has start after end"});
      continue;
    }
    if (c.row_start < 1 || c.col_start < 1 || c.row_end > rows || c.col_end > cols) {
      out.push_back({Violation::Kind::Bounds, "cell " + region_text(c) + " lies outside the " +
                                                  std::to_string(rows) + "x" +
                                                  std::to_string(cols) + " grid"});
      continue;
    }
    bool reported = false;
    for (std::size_t r = c.row_start; r <= c.row_end; ++r) {
      for (std::size_t col = c.col_start; col <= c.col_end; ++col) {
        int& owner = claimed[(r - 1) * cols + (col - 1)];
        if (owner >= 0 && !reported) {
          out.push_back({Violation::Kind::Overlap,
                         "cells " + region_text(cells[static_cast<std::size_t>(owner)]) + " and " +
                             region_text(c) + " both claim (" + std::to_string(r) + "," +
                             std::to_string(col) + ")"});
          reported = true;
        } else if (owner < 0) {
          owner = static_cast<int>(i);
        }
      }
    }
  }
  for (std::size_t r = 1; r <= rows; ++r) {
    for (std::size_t col = 1; col <= cols; ++col) {
      if (claimed[(r - 1) * cols + (col - 1)] < 0) {
        out.push_back({Violation::Kind::Gap, "position (" + std::to_string(r) + "," +
                                                 std::to_string(col) + ") is not covered"});
      }
    }
  }
  return out;
}

std::string to_string(const HeaderTuple& t) {
  std::ostringstream out;
  out << '(' << (t.axis == Axis::Row ? 'R' : 'C') << t.level << ", " << t.start << ", " << t.end
      << ", " << t.content << ')';
  return out.str();
}

std::string_view to_string(TokenBucket bucket) {
  switch (bucket) {
    case TokenBucket::Under10K: return "<10K";
    case TokenBucket::From10KTo20K: return "10K-20K";
    case TokenBucket::Over20K: return ">20K";
  }
  return "?";
}

TokenBucket parse_token_bucket(std::string_view text) {
  if (text == "<10K") return TokenBucket::Under10K;
  if (text == "10K-20K") return TokenBucket::From10KTo20K;
  if (text == ">20K") return TokenBucket::Over20K;
  throw Error("unknown token bucket '" + std::string(text) + "'");
}

Json to_json(const Cell& c) {
  Json emphasis = Json::array();
  if (c.emphasis.background) emphasis.push_back("background");
  if (c.emphasis.bold) emphasis.push_back("bold");
  return Json{{"row_start", c.row_start}, {"row_end", c.row_end},
              {"col_start", c.col_start}, {"col_end", c.col_end},
              {"content", c.content},     {"emphasis", emphasis},
              {"indent", c.indent},       {"header_hint", c.header_hint}};
}

Json to_json(const Grid& grid) {
  Json cells = Json::array();
  for (const Cell& c : grid.cells()) cells.push_back(to_json(c));
  return Json{{"n_rows", grid.n_rows()},
              {"n_cols", grid.n_cols()},
              {"cells", std::move(cells)},
              {"annotations", grid.annotations()}};
}

Json to_json(const HeaderTuple& t) {
  Json j{{"axis", t.axis == Axis::Row ? "Row" : "Col"},
         {"level", t.level},
         {"start", t.start},
         {"end", t.end},
         {"content", t.content}};
  j["origin"] = t.origin ? Json(*t.origin) : Json(nullptr);
  return j;
}

Json to_json(const TreeNode& node) {
  Json children = Json::array();
  for (const TreeNode& child : node.children) children.push_back(to_json(child));
  Json j;
  j["tuple"] = node.tuple ? to_json(*node.tuple) : Json(nullptr);
  j["level"] = node.level();
  j["is_leaf"] = node.is_leaf;
  j["children"] = std::move(children);
  return j;
}

Json to_json(const HeaderTree& tree) {
  return Json{{"row_root", to_json(tree.row_root)}, {"col_root", to_json(tree.col_root)}};
}

Json to_json(const StructureReport& r) {
  return Json{{"hier_col_header", r.flags.hier_col_header},
              {"hier_row_header", r.flags.hier_row_header},
              {"nested_sub_tables", r.flags.nested_sub_tables},
              {"implicit_multi_table", r.flags.implicit_multi_table},
              {"miscellany", r.flags.miscellany},
              {"header_row_count", r.header_row_count},
              {"header_col_count", r.header_col_count},
              {"complexity_score", r.complexity_score},
              {"token_bucket", to_string(r.token_bucket)}};
}

Grid grid_from_json(const Json& j) {
  try {
    std::vector<Cell> cells;
    for (const Json& jc : j.at("cells")) {
      Cell c;
      c.row_start = jc.at("row_start").get<std::size_t>();
      c.row_end = jc.at("row_end").get<std::size_t>();
      c.col_start = jc.at("col_start").get<std::size_t>();
      c.col_end = jc.at("col_end").get<std::size_t>();
      c.content = jc.at("content").get<std::string>();
      for (const Json& e : jc.value("emphasis", Json::array())) {
        if (e == "background") c.emphasis.background = true;
        else if (e == "bold") c.emphasis.bold = true;
      }
      c.indent = jc.value("indent", 0);
      c.header_hint = jc.value("header_hint", false);
      cells.push_back(std::move(c));
    }
    return Grid(j.at("n_rows").get<std::size_t>(), j.at("n_cols").get<std::size_t>(),
                std::move(cells),
                j.value("annotations", std::vector<std::string>{}));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("grid json: ") + e.what());
  }
}

HeaderTuple tuple_from_json(const Json& j) {
  try {
    HeaderTuple t;
    t.axis = j.at("axis").get<std::string>() == "Row" ? Axis::Row : Axis::Col;
    t.level = j.at("level").get<int>();
    t.start = j.at("start").get<std::size_t>();
    t.end = j.at("end").get<std::size_t>();
    t.content = j.at("content").get<std::string>();
    if (j.contains("origin") && !j["origin"].is_null()) t.origin = j["origin"].get<CellRef>();
    return t;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("tuple json: ") + e.what());
  }
}

}  // namespace hitree
