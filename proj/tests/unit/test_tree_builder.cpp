// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "hitree/formats.hpp"
#include "hitree/structure.hpp"
#include "hitree/tree_builder.hpp"
#include "test_support.hpp"

using namespace hitree;

namespace {

HeaderTuple T(Axis axis, int level, std::size_t start, std::size_t end, std::string content) {
  return HeaderTuple{axis, level, start, end, std::move(content), std::nullopt};
}

TupleList tuples_of(const std::string& fixture_name) {
  Grid g = parse(load_document(testkit::fixture("tables/" + fixture_name)));
  return extract_tuples(g, detect_header_region(g));
}

bool contains_tuple(const TupleList& list, const HeaderTuple& want) {
  for (HeaderTuple t : list.tuples) {
    t.origin.reset();
    if (t == want) return true;
  }
  return false;
}

}  // namespace

TEST(ExtractTuples, CityExample) {
  TupleList list = tuples_of("hr_city.tex");
  EXPECT_TRUE(contains_tuple(list, T(Axis::Row, 0, 1, 2, "City")));
  for (const HeaderTuple& t : list.tuples)
    if (t.content == "City") EXPECT_EQ(to_string(t), "(R0, 1, 2, City)");
}

TEST(ExtractTuples, FlatHeaderRow) {
  Grid g = parse_latex(R"(\begin{tabular}{cc}
\toprule
A & B \\
\midrule
1 & 2 \\
\bottomrule
\end{tabular})")
               .grid;
  TupleList list = extract_tuples(g, detect_header_region(g));
  ASSERT_EQ(list.tuples.size(), 3u);
  EXPECT_TRUE(contains_tuple(list, T(Axis::Col, 0, 1, 1, "A")));
  EXPECT_TRUE(contains_tuple(list, T(Axis::Col, 0, 2, 2, "B")));
  EXPECT_TRUE(contains_tuple(list, T(Axis::Row, 0, 2, 2, "1")));
}

TEST(ExtractTuples, IndentationLevels) {
  Grid g = parse_latex(R"(\begin{tabular}{lc}
\toprule
Item & V \\
\midrule
Assets & 1 \\
\quad Cash & 2 \\
\quad Bonds & 3 \\
\bottomrule
\end{tabular})")
               .grid;
  TupleList list = extract_tuples(g, detect_header_region(g));
  std::vector<int> levels;
  for (const HeaderTuple& t : list.tuples)
    if (t.axis == Axis::Row) levels.push_back(t.level);
  EXPECT_EQ(levels, (std::vector<int>{0, 1, 1}));
  EXPECT_TRUE(contains_tuple(list, T(Axis::Row, 1, 3, 3, "Cash")));
}

TEST(ExtractTuples, OriginPointsBackAndIndicesStayInTheBand) {
  Grid g = parse(load_document(testkit::fixture("tables/mx_report.tex")));
  HeaderRegion region = detect_header_region(g);
  for (const HeaderTuple& t : extract_tuples(g, region).tuples) {
    ASSERT_TRUE(t.origin.has_value());
    EXPECT_EQ(g.cell(*t.origin).content, t.content);
    if (t.axis == Axis::Col) EXPECT_LE(g.cell(*t.origin).row_start, region.header_rows);
    else EXPECT_LE(g.cell(*t.origin).col_start, region.header_cols);
  }
}

TEST(BuildTree, EmptyListGivesTwoBareRoots) {
  HeaderTree tree = build_tree(TupleList{});
  EXPECT_TRUE(tree.row_root.children.empty());
  EXPECT_TRUE(tree.col_root.children.empty());
  EXPECT_EQ(tree.row_root.level(), -1);
}

TEST(BuildTree, YearParentsBothYears) {
  HeaderTree tree = build_tree(TupleList{{T(Axis::Col, 0, 1, 2, "Year"), T(Axis::Col, 1, 1, 1, "2020"),
                                          T(Axis::Col, 1, 2, 2, "2021")}});
  ASSERT_EQ(tree.col_root.children.size(), 1u);
  const TreeNode& year = tree.col_root.children[0];
  EXPECT_EQ(year.tuple->content, "Year");
  EXPECT_FALSE(year.is_leaf);
  ASSERT_EQ(year.children.size(), 2u);
  EXPECT_TRUE(year.children[0].is_leaf);
  EXPECT_EQ(year.children[0].tuple->content, "2020");
  EXPECT_EQ(year.children[1].tuple->content, "2021");
}

TEST(BuildTree, LoneCityIsNotALeaf) {
  HeaderTree tree = build_tree(TupleList{{T(Axis::Row, 0, 1, 2, "City")}});
  ASSERT_EQ(tree.row_root.children.size(), 1u);
  EXPECT_FALSE(tree.row_root.children[0].is_leaf);
  EXPECT_TRUE(tree.row_root.children[0].children.empty());
  EXPECT_TRUE(tree.col_root.children.empty());
}

TEST(BuildTree, ClosestHigherLevelWins) {
  HeaderTree tree = build_tree(TupleList{{T(Axis::Col, 0, 1, 4, "All"), T(Axis::Col, 1, 1, 2, "Left"),
                                          T(Axis::Col, 2, 2, 2, "x")}});
  const TreeNode& left = tree.col_root.children[0].children[0];
  EXPECT_EQ(left.tuple->content, "Left");
  ASSERT_EQ(left.children.size(), 1u);
  EXPECT_EQ(left.children[0].tuple->content, "x");
}

TEST(BuildTree, SameLevelOverlapIsMalformed) {
  try {
    build_tree(TupleList{{T(Axis::Col, 0, 1, 2, "A"), T(Axis::Col, 0, 2, 3, "B")}});
    FAIL() << "expected MalformedHierarchyError";
  } catch (const MalformedHierarchyError& e) {
    std::string what = e.what();
    EXPECT_NE(what.find("(C0, 1, 2, A)"), std::string::npos);
    EXPECT_NE(what.find("(C0, 2, 3, B)"), std::string::npos);
  }
}

TEST(BuildTree, CrossingSpansAcrossLevelsAreMalformed) {
  EXPECT_THROW(build_tree(TupleList{{T(Axis::Col, 0, 1, 2, "A"), T(Axis::Col, 1, 2, 3, "B")}}),
               MalformedHierarchyError);
}

TEST(BuildTree, MatchesBruteForceOracleOnRandomLists) {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<HeaderTuple> tuples = testkit::random_tuple_list(rng);
    ASSERT_LE(tuples.size(), 40u);
    HeaderTree got = build_tree(TupleList{tuples});
    ASSERT_EQ(got, testkit::oracle_tree(tuples)) << "trial " << trial;
    EXPECT_NO_THROW(check_tree(got));
  }
}

TEST(BuildTree, FixtureTreesSatisfyInvariants) {
  Json labels = Json::parse(testkit::slurp(testkit::fixture("tables/labels.json")));
  for (auto& [name, label] : labels.items()) {
    TupleList list = tuples_of(name);
    HeaderTree tree = build_tree(list);
    EXPECT_NO_THROW(check_tree(tree)) << name;
    EXPECT_EQ(tree, testkit::oracle_tree(list.tuples)) << name;
  }
}

TEST(CheckTree, RejectsChildOutsideParent) {
  HeaderTree tree;
  TreeNode parent{T(Axis::Col, 0, 1, 2, "P"), {}, false};
  parent.children.push_back(TreeNode{T(Axis::Col, 1, 3, 3, "c"), {}, true});
  tree.col_root.children.push_back(parent);
  EXPECT_THROW(check_tree(tree), MalformedHierarchyError);
}

TEST(Render, AsciiAndJson) {
  HeaderTree tree = build_tree(tuples_of("hc_sales.tex"));
  std::string ascii = render_ascii(tree);
  EXPECT_NE(ascii.find("ROOT (column headers)"), std::string::npos);
  EXPECT_NE(ascii.find("+- (C0, 2, 3, 2019)"), std::string::npos);
  EXPECT_NE(ascii.find("(C1, 2, 2, Q1)"), std::string::npos);
  Json j = to_json(tree);
  EXPECT_EQ(j["col_root"]["children"].size(), 3u);
  EXPECT_EQ(render_ascii(tree), ascii);
}
