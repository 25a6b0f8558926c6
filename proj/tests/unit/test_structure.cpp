// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <filesystem>
#include <set>

#include "hitree/formats.hpp"
#include "hitree/structure.hpp"
#include "test_support.hpp"

using namespace hitree;

namespace {

Grid load_fixture(const std::string& name) { return parse(load_document(testkit::fixture("tables/" + name))); }

Json flags_json(const StructureFlags& f) {
  return Json{{"hier_col_header", f.hier_col_header},
              {"hier_row_header", f.hier_row_header},
              {"nested_sub_tables", f.nested_sub_tables},
              {"implicit_multi_table", f.implicit_multi_table},
              {"miscellany", f.miscellany}};
}

const char* kAllFive = R"(\begin{table}
\caption{Every structure at once.}
\begin{tabular}{llcccc}
\toprule
\multirow{3}{*}{Group} & \multirow{3}{*}{Item} & \multicolumn{4}{c}{Measure} \\
 & & \multicolumn{2}{c}{A} & \multicolumn{2}{c}{A} \\
 & & x & y & x & y \\
\midrule
\multicolumn{6}{l}{Section one} \\
\multirow{2}{*}{East} & Alpha & 1 & 2 & 3 & 4 \\
 & \quad Beta & 5 & 6 & 7 & 8 \\
\bottomrule
\end{tabular}
\end{table})";

}  // namespace

TEST(HeaderRegion, FlatTableGetsMinimumBand) {
  Grid g = load_fixture("fl_scores.html");
  EXPECT_EQ(detect_header_region(g), (HeaderRegion{1, 1}));
}

TEST(HeaderRegion, StackedMergedHeaderRows) {
  EXPECT_EQ(detect_header_region(load_fixture("hc_sales.tex")).header_rows, 2u);
  EXPECT_EQ(detect_header_region(load_fixture("hc_survey.tex")).header_rows, 3u);
}

TEST(HeaderRegion, IndentedRowsKeepOneHeaderColumn) {
  Grid g = load_fixture("hr_courses.tex");
  HeaderRegion region = detect_header_region(g);
  EXPECT_EQ(region.header_cols, 1u);
  std::set<int> indents;
  for (std::size_t r = region.header_rows + 1; r <= g.n_rows(); ++r) indents.insert(g.cell_at(r, 1).indent);
  EXPECT_EQ(indents, (std::set<int>{0, 1, 2}));
}

TEST(HeaderRegion, RowSpansInTheLeftBandWidenIt) {
  EXPECT_EQ(detect_header_region(load_fixture("hr_sectors.tex")).header_cols, 2u);
  EXPECT_EQ(detect_header_region(load_fixture("hr_city.tex")), (HeaderRegion{1, 2}));
}

TEST(HeaderRegion, EmptyGridThrows) { EXPECT_THROW(detect_header_region(Grid()), EmptyGridError); }

TEST(HeaderRegion, InBoundsOnRandomGrids) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    Grid g = testkit::random_grid(rng);
    HeaderRegion r = detect_header_region(g);
    if (g.n_rows() > 1) {
      EXPECT_GE(r.header_rows, 1u);
      EXPECT_LT(r.header_rows, g.n_rows());
    } else {
      EXPECT_EQ(r.header_rows, 0u);
    }
    if (g.n_cols() > 1) {
      EXPECT_GE(r.header_cols, 1u);
      EXPECT_LT(r.header_cols, g.n_cols());
    } else {
      EXPECT_EQ(r.header_cols, 0u);
    }
  }
}

TEST(HeaderAxis, CornerCellReachingIntoTheBodyIsARowHeader) {
  Grid g = load_fixture("hr_city.tex");
  HeaderRegion region = detect_header_region(g);
  EXPECT_EQ(header_axis(g.cell_at(1, 1), region), Axis::Row);
  EXPECT_EQ(header_axis(g.cell_at(1, 3), region), Axis::Col);
  EXPECT_EQ(header_axis(g.cell_at(3, 2), region), Axis::Row);
  EXPECT_FALSE(header_axis(g.cell_at(3, 3), region).has_value());
}

TEST(Classify, LabeledFixtureCorpus) {
  Json labels = Json::parse(testkit::slurp(testkit::fixture("tables/labels.json")));
  ASSERT_GE(labels.size(), 25u);
  std::set<std::string> families;
  for (auto& [name, label] : labels.items()) {
    Grid g = load_fixture(name);
    StructureReport r = classify_structures(g, detect_header_region(g));
    EXPECT_EQ(nlohmann::json(flags_json(r.flags)), nlohmann::json(label["flags"])) << name;
    families.insert(label["family"].get<std::string>());
  }
  for (const char* f : {"hier_col", "hier_row", "nested", "implicit", "misc", "flat"}) EXPECT_TRUE(families.count(f)) << f;
}

TEST(Classify, AnnotationsNeverClearFlags) {
  Json labels = Json::parse(testkit::slurp(testkit::fixture("tables/labels.json")));
  for (auto& [name, label] : labels.items()) {
    Grid g = load_fixture(name);
    HeaderRegion region = detect_header_region(g);
    StructureFlags before = detect_flags(g, region);
    std::vector<std::string> notes = g.annotations();
    notes.push_back("extra note");
    Grid annotated = Grid::checked(g.n_rows(), g.n_cols(), g.cells(), notes);
    StructureFlags after = detect_flags(annotated, region);
    EXPECT_TRUE(after.miscellany);
    EXPECT_TRUE(!before.hier_col_header || after.hier_col_header);
    EXPECT_TRUE(!before.hier_row_header || after.hier_row_header);
    EXPECT_TRUE(!before.nested_sub_tables || after.nested_sub_tables);
    EXPECT_TRUE(!before.implicit_multi_table || after.implicit_multi_table);
  }
}

TEST(Classify, RepeatedBlocksLayout) {
  Grid g = load_fixture("im_with_stub.tex");
  auto blocks = find_repeated_blocks(g, detect_header_region(g));
  ASSERT_TRUE(blocks.has_value());
  EXPECT_EQ(blocks->first_col, 2u);
  EXPECT_EQ(blocks->width, 2u);
  EXPECT_EQ(blocks->count, 2u);
  Grid three = load_fixture("im_three_blocks.html");
  auto b3 = find_repeated_blocks(three, detect_header_region(three));
  ASSERT_TRUE(b3.has_value());
  EXPECT_EQ(b3->count, 3u);
}

TEST(Complexity, FlatTableScoresZero) {
  for (const char* name : {"fl_simple.tex", "fl_scores.html", "fl_weather.tex"}) {
    Grid g = load_fixture(name);
    EXPECT_DOUBLE_EQ(complexity_score(g, detect_header_region(g)), 0.0) << name;
  }
}

TEST(Complexity, AllFiveFlagsWithDepthThreeIsMaximal) {
  Grid g = parse_latex(kAllFive).grid;
  HeaderRegion region = detect_header_region(g);
  EXPECT_EQ(region, (HeaderRegion{3, 2}));
  StructureReport r = classify_structures(g, region);
  EXPECT_TRUE(r.flags.hier_col_header);
  EXPECT_TRUE(r.flags.hier_row_header);
  EXPECT_TRUE(r.flags.nested_sub_tables);
  EXPECT_TRUE(r.flags.implicit_multi_table);
  EXPECT_TRUE(r.flags.miscellany);
  EXPECT_DOUBLE_EQ(r.complexity_score, 100.0);
}

TEST(Complexity, HandEvaluatedFixtures) {
  // Indented rows at depths 0, 1, 2; single header row; no other flags.
  Grid courses = load_fixture("hr_courses.tex");
  EXPECT_DOUBLE_EQ(complexity_score(courses, detect_header_region(courses)), 25.0);
  // Column levels {0,1}: 12.5; no row hierarchy.
  Grid sales = load_fixture("hc_sales.tex");
  EXPECT_DOUBLE_EQ(complexity_score(sales, detect_header_region(sales)), 12.5);
  // 12.5 (cols) + 12.5 (rows 0,1) + 20 nested + 10 caption.
  Grid report = load_fixture("mx_report.tex");
  EXPECT_DOUBLE_EQ(complexity_score(report, detect_header_region(report)), 55.0);
}

TEST(Classify, TokenBucketFromLatexSize) {
  Grid g = load_fixture("fl_simple.tex");
  EXPECT_EQ(classify_structures(g, detect_header_region(g)).token_bucket, TokenBucket::Under10K);
}
