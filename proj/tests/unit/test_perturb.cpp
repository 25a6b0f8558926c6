// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <map>

#include "hitree/formats.hpp"
#include "hitree/structure.hpp"
#include "hitree/tree_builder.hpp"
#include "test_support.hpp"

using namespace hitree;

namespace {

Grid load_fixture(const std::string& name) { return parse(load_document(testkit::fixture("tables/" + name))); }

std::multiset<std::string> cell_contents(const Grid& g) {
  std::multiset<std::string> out;
  for (const Cell& c : g.cells()) out.insert(c.content);
  return out;
}

std::multiset<std::string> position_contents(const Grid& g) {
  std::multiset<std::string> out;
  for (std::size_t r = 1; r <= g.n_rows(); ++r)
    for (std::size_t c = 1; c <= g.n_cols(); ++c) out.insert(g.cell_at(r, c).content);
  return out;
}

std::vector<std::string> column(const Grid& g, std::size_t c) {
  std::vector<std::string> out;
  for (std::size_t r = 1; r <= g.n_rows(); ++r) out.push_back(g.cell_at(r, c).content);
  return out;
}

}  // namespace

TEST(Perturb, KindNames) {
  for (auto k : {PerturbationKind::SwapSiblingBlocks, PerturbationKind::TransposeHeaderLevels,
                 PerturbationKind::ReorderSubTables})
    EXPECT_EQ(parse_perturbation_kind(to_string(k)), k);
  EXPECT_EQ(parse_perturbation_kind("SwapSiblingBlocks"), PerturbationKind::SwapSiblingBlocks);
  EXPECT_THROW(parse_perturbation_kind("shuffle"), Error);
}

TEST(SwapSiblingBlocks, ReversesTwoSubTables) {
  Grid g = load_fixture("ns_panel.tex");
  Grid p = perturb_structure(g, PerturbationKind::SwapSiblingBlocks, 1);
  EXPECT_TRUE(validate(p).empty());
  EXPECT_EQ(cell_contents(p), cell_contents(g));
  EXPECT_EQ(p.n_rows(), g.n_rows());
  EXPECT_EQ(p.cell_at(2, 1).content, "Panel B: Costs");
  EXPECT_EQ(p.cell_at(5, 1).content, "Panel A: Revenue");
  EXPECT_EQ(p.cell_at(1, 1).content, "Item");
}

TEST(SwapSiblingBlocks, TwiceIsIdentityOnTwoBlocks) {
  for (const char* name : {"ns_panel.tex", "ns_hospitals.html", "ns_budget.tex"}) {
    Grid g = load_fixture(name);
    for (std::uint64_t seed : {0u, 1u, 17u}) {
      Grid once = perturb_structure(g, PerturbationKind::SwapSiblingBlocks, seed);
      EXPECT_NE(once, g) << name;
      EXPECT_EQ(perturb_structure(once, PerturbationKind::SwapSiblingBlocks, seed), g) << name;
    }
  }
}

TEST(SwapSiblingBlocks, RowspanGroupsWhenNoSeparators) {
  Grid g = load_fixture("hr_sectors.tex");
  Grid p = perturb_structure(g, PerturbationKind::SwapSiblingBlocks, 3);
  EXPECT_EQ(cell_contents(p), cell_contents(g));
  EXPECT_EQ(p.cell_at(2, 1).content, "Services");
  EXPECT_EQ(p.cell_at(2, 1).row_span(), 3u);
  EXPECT_EQ(p.cell_at(5, 1).content, "Industry");
}

TEST(SwapSiblingBlocks, FlatTableIsInapplicable) {
  EXPECT_THROW(perturb_structure(load_fixture("fl_simple.tex"), PerturbationKind::SwapSiblingBlocks, 0),
               InapplicablePerturbationError);
}

TEST(TransposeHeaderLevels, ExchangesLabelLayers) {
  Grid g = load_fixture("hc_sales.tex");
  Grid p = perturb_structure(g, PerturbationKind::TransposeHeaderLevels, 0);
  EXPECT_TRUE(validate(p).empty());
  EXPECT_EQ(position_contents(p), position_contents(g));
  EXPECT_EQ(p.n_rows(), g.n_rows());
  EXPECT_EQ(p.n_cols(), g.n_cols());

  // Rebuilt tree: Q1/Q2 are now parents of the years.
  HeaderTree before = build_tree(extract_tuples(g, detect_header_region(g)));
  HeaderTree after = build_tree(extract_tuples(p, detect_header_region(p)));
  auto parents = [](const HeaderTree& t) {
    std::map<std::string, std::vector<std::string>> out;
    for (const TreeNode& n : t.col_root.children)
      for (const TreeNode& k : n.children) out[n.tuple->content].push_back(k.tuple->content);
    return out;
  };
  EXPECT_EQ(parents(before)["2019"], (std::vector<std::string>{"Q1", "Q2"}));
  EXPECT_EQ(parents(after)["Q1"], (std::vector<std::string>{"2019", "2020"}));
  EXPECT_EQ(parents(after)["Q2"], (std::vector<std::string>{"2019", "2020"}));

  // Body values follow their header pair: (2020, Q1) for North is 128.
  std::size_t col_2020_q1 = 0;
  for (std::size_t c = 2; c <= p.n_cols(); ++c)
    if (p.cell_at(1, c).content == "Q1" && p.cell_at(2, c).content == "2020") col_2020_q1 = c;
  ASSERT_NE(col_2020_q1, 0u);
  EXPECT_EQ(p.cell_at(3, col_2020_q1).content, "128");
}

TEST(TransposeHeaderLevels, NeedsRepeatedUnitLabels) {
  EXPECT_THROW(perturb_structure(load_fixture("hc_energy.tex"), PerturbationKind::TransposeHeaderLevels, 0),
               InapplicablePerturbationError);
  EXPECT_THROW(perturb_structure(load_fixture("fl_simple.tex"), PerturbationKind::TransposeHeaderLevels, 0),
               InapplicablePerturbationError);
}

TEST(ReorderSubTables, PermutesRepeatedBlocks) {
  Grid g = load_fixture("im_three_blocks.html");
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Grid p = perturb_structure(g, PerturbationKind::ReorderSubTables, seed);
    EXPECT_NE(p, g);
    EXPECT_EQ(cell_contents(p), cell_contents(g));
    // Each block moves as a unit: a Year column is always followed by its values.
    std::set<std::vector<std::string>> before, after;
    for (std::size_t b = 0; b < 3; ++b) {
      before.insert(column(g, 1 + 2 * b));
      after.insert(column(p, 1 + 2 * b));
    }
    EXPECT_EQ(before, after);
    EXPECT_EQ(perturb_structure(g, PerturbationKind::ReorderSubTables, seed), p);
  }
}

TEST(ReorderSubTables, NoRepeatedBlocksIsInapplicable) {
  EXPECT_THROW(perturb_structure(load_fixture("hc_sales.tex"), PerturbationKind::ReorderSubTables, 0),
               InapplicablePerturbationError);
}

TEST(Perturb, DeterministicUnderSeedAndAreaPreserving) {
  Json labels = Json::parse(testkit::slurp(testkit::fixture("tables/labels.json")));
  for (auto& [name, label] : labels.items()) {
    Grid g = load_fixture(name);
    for (auto kind : {PerturbationKind::SwapSiblingBlocks, PerturbationKind::TransposeHeaderLevels,
                      PerturbationKind::ReorderSubTables}) {
      try {
        Grid a = perturb_structure(g, kind, 42);
        Grid b = perturb_structure(g, kind, 42);
        EXPECT_EQ(a, b) << name;
        EXPECT_TRUE(validate(a).empty()) << name;
        EXPECT_EQ(a.n_rows() * a.n_cols(), g.n_rows() * g.n_cols()) << name;
        EXPECT_EQ(position_contents(a), position_contents(g)) << name;
        if (kind != PerturbationKind::TransposeHeaderLevels) EXPECT_EQ(cell_contents(a), cell_contents(g)) << name;
      } catch (const InapplicablePerturbationError&) {
      }
    }
  }
}
