// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "hitree/table_model.hpp"
#include "test_support.hpp"

using namespace hitree;

namespace {

Cell make(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1, std::string text = "") {
  Cell c;
  c.row_start = r0;
  c.row_end = r1;
  c.col_start = c0;
  c.col_end = c1;
  c.content = std::move(text);
  return c;
}

bool has_kind(const std::vector<Violation>& v, Violation::Kind kind) {
  for (const Violation& x : v)
    if (x.kind == kind) return true;
  return false;
}

}  // namespace

TEST(CellAt, SingleCellGrid) {
  Grid g = Grid::checked(1, 1, {make(1, 1, 1, 1, "only")});
  EXPECT_EQ(g.cell_at(1, 1).content, "only");
}

TEST(CellAt, MergedRegionSharesOneCell) {
  Grid g = Grid::checked(2, 2, {make(1, 2, 1, 1, "City"), make(1, 1, 2, 2, "a"), make(2, 2, 2, 2, "b")});
  EXPECT_EQ(g.ref_at(1, 1), g.ref_at(2, 1));
  EXPECT_EQ(&g.cell_at(1, 1), &g.cell_at(2, 1));
  EXPECT_NE(g.ref_at(1, 2), g.ref_at(2, 2));
}

TEST(CellAt, OutOfBoundsThrows) {
  std::vector<Cell> cells;
  for (std::size_t r = 1; r <= 3; ++r)
    for (std::size_t c = 1; c <= 4; ++c) cells.push_back(make(r, r, c, c));
  Grid g = Grid::checked(3, 4, cells);
  EXPECT_THROW(g.cell_at(4, 1), BoundsError);
  EXPECT_THROW(g.cell_at(0, 1), BoundsError);
  EXPECT_THROW(g.cell_at(1, 5), BoundsError);
}

TEST(Validate, WellFormedGridHasNoViolations) {
  Grid g(2, 2, {make(1, 1, 1, 1), make(1, 1, 2, 2), make(2, 2, 1, 1), make(2, 2, 2, 2)});
  EXPECT_TRUE(validate(g).empty());
}

TEST(Validate, ReportsOverlap) {
  Grid g(1, 2, {make(1, 1, 1, 1, "x"), make(1, 1, 1, 2, "y")});
  auto v = validate(g);
  ASSERT_FALSE(v.empty());
  EXPECT_TRUE(has_kind(v, Violation::Kind::Overlap));
  EXPECT_NE(v.front().message.find("(1,1)"), std::string::npos);
}

TEST(Validate, ReportsOrdering) {
  Grid g(2, 1, {make(2, 1, 1, 1)});
  EXPECT_TRUE(has_kind(validate(g), Violation::Kind::Ordering));
}

TEST(Validate, ReportsGapAndBounds) {
  Grid gap(1, 2, {make(1, 1, 1, 1)});
  EXPECT_TRUE(has_kind(validate(gap), Violation::Kind::Gap));
  Grid out(1, 1, {make(1, 1, 1, 2)});
  EXPECT_TRUE(has_kind(validate(out), Violation::Kind::Bounds));
}

TEST(Validate, CheckedConstructorRejectsBrokenGrids) {
  EXPECT_THROW(Grid::checked(1, 2, {make(1, 1, 1, 1)}), Error);
}

TEST(GridProperties, RandomGridsTileTheRectangle) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    Grid g = testkit::random_grid(rng);
    ASSERT_TRUE(validate(g).empty());
    std::size_t area = 0;
    for (const Cell& c : g.cells()) area += c.area();
    EXPECT_EQ(area, g.n_rows() * g.n_cols());
    for (std::size_t r = 1; r <= g.n_rows(); ++r)
      for (std::size_t c = 1; c <= g.n_cols(); ++c) {
        const Cell& cell = g.cell_at(r, c);
        ASSERT_TRUE(cell.covers(r, c));
        ASSERT_EQ(g.ref_at(r, c), g.ref_at(r, c));
      }
  }
}

TEST(Json, GridRoundTripsThroughCanonicalJson) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Grid g = testkit::random_grid(rng);
    Json j = to_json(g);
    EXPECT_EQ(grid_from_json(j), g);
    EXPECT_EQ(to_json(grid_from_json(j)).dump(), j.dump());
  }
}

TEST(Json, TupleFieldsAndText) {
  HeaderTuple t{Axis::Row, 0, 1, 2, "City", std::nullopt};
  EXPECT_EQ(to_string(t), "(R0, 1, 2, City)");
  Json j = to_json(t);
  EXPECT_EQ(j["axis"], "Row");
  EXPECT_EQ(tuple_from_json(j), t);
}

TEST(Json, TreeNodeRootsCarryMinusOne) {
  HeaderTree tree;
  EXPECT_EQ(tree.row_root.level(), -1);
  EXPECT_EQ(tree.col_root.level(), -1);
  Json j = to_json(tree);
  EXPECT_TRUE(j.contains("row_root"));
  EXPECT_TRUE(j.contains("col_root"));
}

TEST(TokenBuckets, NamesRoundTrip) {
  for (TokenBucket b : {TokenBucket::Under10K, TokenBucket::From10KTo20K, TokenBucket::Over20K})
    EXPECT_EQ(parse_token_bucket(to_string(b)), b);
  EXPECT_THROW(parse_token_bucket("huge"), Error);
}
