// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cctype>
#include <set>

#include "hitree/tree_builder.hpp"

namespace hitree {

std::vector<std::string> align_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (c >= 0x80 || std::isalnum(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (c == '.' && !current.empty() && std::isdigit(static_cast<unsigned char>(current.back())) &&
               i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
      current.push_back('.');
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

double lexical_score(std::string_view content, std::string_view keyword) {
  auto k = align_tokens(keyword);
  auto c = align_tokens(content);
  std::set<std::string> wanted(k.begin(), k.end());
  std::set<std::string> have(c.begin(), c.end());
  if (wanted.empty()) return 0.0;
  std::size_t shared = 0;
  for (const std::string& t : wanted) shared += have.count(t);
  return static_cast<double>(shared) / static_cast<double>(wanted.size());
}

namespace {

struct Walk {
  const std::vector<std::string>& keywords;
  const AlignConfig& cfg;
  KeywordHeaderTree& out;

  double score(const HeaderTuple& t, const std::string& keyword) const {
    if (cfg.scorer == AlignConfig::Scorer::Endpoint) return cfg.endpoint(t.content, keyword);
    return lexical_score(t.content, keyword);
  }

  // Returns the pruned copy of `node`, or nullopt if nothing under it matched.
  std::optional<TreeNode> visit(const TreeNode& node, std::vector<HeaderTuple>& selected) {
    bool hit = false;
    if (node.tuple) {
      for (const std::string& k : keywords) {
        double s = score(*node.tuple, k);
        if (s > cfg.theta) {
          hit = true;
          out.keyword_hits[k].push_back({*node.tuple, s});
        }
      }
      if (hit) out.hits.push_back(*node.tuple);
    }
    std::size_t mark = selected.size();
    if (node.tuple) selected.push_back(*node.tuple);
    TreeNode copy;
    copy.tuple = node.tuple;
    copy.is_leaf = node.is_leaf;
    for (const TreeNode& child : node.children) {
      if (auto kept = visit(child, selected)) copy.children.push_back(std::move(*kept));
    }
    if (!hit && copy.children.empty() && node.tuple) {
      selected.resize(mark);
      return std::nullopt;
    }
    return copy;
  }
};

}  // namespace

KeywordHeaderTree align(const HeaderTree& tree, const std::vector<std::string>& keywords,
                        const AlignConfig& cfg) {
  if (!(cfg.theta >= 0.0 && cfg.theta <= 1.0)) throw Error("theta must lie in [0,1]");
  if (cfg.scorer == AlignConfig::Scorer::Endpoint && !cfg.endpoint)
    throw Error("endpoint scorer requested without an endpoint");
  std::set<std::string> unique(keywords.begin(), keywords.end());
  unique.erase("");
  std::vector<std::string> sorted(unique.begin(), unique.end());

  KeywordHeaderTree out;
  Walk walk{sorted, cfg, out};
  out.tree.row_root = *walk.visit(tree.row_root, out.selected);
  out.tree.col_root = *walk.visit(tree.col_root, out.selected);
  return out;
}

Grid extract_subtable(const Grid& grid, const HeaderRegion& region, const KeywordHeaderTree& kht) {
  if (kht.empty()) throw EmptySelectionError("no header matched the keywords");
  std::vector<bool> keep_row(grid.n_rows() + 1, false);
  std::vector<bool> keep_col(grid.n_cols() + 1, false);
  bool row_hit = false;
  bool col_hit = false;
  for (const HeaderTuple& t : kht.hits) {
    auto& keep = t.axis == Axis::Row ? keep_row : keep_col;
    (t.axis == Axis::Row ? row_hit : col_hit) = true;
    for (std::size_t i = t.start; i <= std::min(t.end, keep.size() - 1); ++i) keep[i] = true;
  }
  for (std::size_t r = 1; r <= grid.n_rows(); ++r)
    if (r <= region.header_rows || !row_hit) keep_row[r] = true;
  for (std::size_t c = 1; c <= grid.n_cols(); ++c)
    if (c <= region.header_cols || !col_hit) keep_col[c] = true;

  // New 1-based index of each kept row/column.
  auto renumber = [](const std::vector<bool>& keep) {
    std::vector<std::size_t> index(keep.size(), 0);
    std::size_t next = 0;
    for (std::size_t i = 1; i < keep.size(); ++i)
      if (keep[i]) index[i] = ++next;
    return std::make_pair(index, next);
  };
  auto [row_index, n_rows] = renumber(keep_row);
  auto [col_index, n_cols] = renumber(keep_col);

  std::vector<Cell> cells;
  for (const Cell& c : grid.cells()) {
    std::size_t r_lo = 0, r_hi = 0, c_lo = 0, c_hi = 0;
    for (std::size_t r = c.row_start; r <= c.row_end; ++r) {
      if (!row_index[r]) continue;
      if (!r_lo) r_lo = row_index[r];
      r_hi = row_index[r];
    }
    for (std::size_t k = c.col_start; k <= c.col_end; ++k) {
      if (!col_index[k]) continue;
      if (!c_lo) c_lo = col_index[k];
      c_hi = col_index[k];
    }
    if (!r_lo || !c_lo) continue;
    Cell moved = c;
    moved.row_start = r_lo;
    moved.row_end = r_hi;
    moved.col_start = c_lo;
    moved.col_end = c_hi;
    cells.push_back(std::move(moved));
  }
  return Grid::checked(n_rows, n_cols, std::move(cells), grid.annotations());
}

std::vector<std::string> split_keywords(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view part = text.substr(pos, comma - pos);
    while (!part.empty() && std::isspace(static_cast<unsigned char>(part.front()))) part.remove_prefix(1);
    while (!part.empty() && std::isspace(static_cast<unsigned char>(part.back()))) part.remove_suffix(1);
    if (!part.empty()) out.emplace_back(part);
    pos = comma + 1;
  }
  return out;
}

Json to_json(const KeywordHeaderTree& kht) {
  Json selected = Json::array();
  for (const HeaderTuple& t : kht.selected) selected.push_back(to_json(t));
  Json hits = Json::object();
  for (const auto& [keyword, list] : kht.keyword_hits) {
    Json entries = Json::array();
    for (const KeywordHit& h : list) entries.push_back(Json{{"tuple", to_json(h.tuple)}, {"score", h.score}});
    hits[keyword] = std::move(entries);
  }
  return Json{{"selected", std::move(selected)}, {"keyword_hits", std::move(hits)},
              {"tree", to_json(kht.tree)}};
}

}  // namespace hitree
