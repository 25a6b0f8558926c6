// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hitree/structure.hpp"
#include "hitree/table_model.hpp"

namespace hitree {

struct TupleList {
  std::vector<HeaderTuple> tuples;

  friend bool operator==(const TupleList&, const TupleList&) = default;
};

// One tuple per non-empty header cell: column headers first, then row
// headers, each in reading order.
TupleList extract_tuples(const Grid& grid, const HeaderRegion& region);

// Parent of a tuple = the containing tuple on a higher level with the
// smallest span (ties: closer level, then smaller start); tuples without
// one hang off their axis ROOT.
//
// Throws MalformedHierarchyError when two tuples on one axis and level
// overlap, or when the result would have overlapping siblings.
HeaderTree build_tree(const TupleList& tuples);

// Throws MalformedHierarchyError if a child escapes its parent's span,
// siblings overlap or are out of order, or a leaf flag is wrong.
void check_tree(const HeaderTree& tree);

// "(R0, 1, 2, City)" lines, one per tuple.
std::string render_tuples(const TupleList& tuples);

// Indented outline of both axes.
std::string render_ascii(const HeaderTree& tree);

Json to_json(const TupleList& tuples);

// Lowercased tokens with punctuation removed, duplicates kept.
std::vector<std::string> align_tokens(std::string_view text);

// |distinct keyword tokens found in content| / |distinct keyword tokens|.
double lexical_score(std::string_view content, std::string_view keyword);

struct AlignConfig {
  enum class Scorer { Lexical, Endpoint };

  double theta = 0.5;
  Scorer scorer = Scorer::Lexical;
  // Used when scorer == Endpoint: (header content, keyword) -> [0,1].
  std::function<double(std::string_view, std::string_view)> endpoint;
};

struct KeywordHit {
  HeaderTuple tuple;
  double score = 0.0;
};

struct KeywordHeaderTree {
  // Header tree pruned to matching nodes and their ancestors.
  HeaderTree tree;
  // Matching nodes plus ancestors, row axis first, in pre-order.
  std::vector<HeaderTuple> selected;
  // Nodes that matched at least one keyword, row axis first, in pre-order.
  std::vector<HeaderTuple> hits;
  std::map<std::string, std::vector<KeywordHit>> keyword_hits;

  bool empty() const noexcept { return hits.empty(); }
};

// A node is selected when its score against some keyword is strictly above
// theta. Throws Error on theta outside [0,1] or a missing endpoint scorer.
KeywordHeaderTree align(const HeaderTree& tree, const std::vector<std::string>& keywords,
                        const AlignConfig& cfg);

// Keeps the header band plus the rows/columns covered by the matched
// tuples; an axis without matches keeps all of its body. Throws
// EmptySelectionError when nothing matched.
Grid extract_subtable(const Grid& grid, const HeaderRegion& region, const KeywordHeaderTree& kht);

// Splits "a, b,,c" into {"a","b","c"}.
std::vector<std::string> split_keywords(std::string_view text);

Json to_json(const KeywordHeaderTree& kht);

}  // namespace hitree
