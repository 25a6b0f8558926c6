// SPDX-License-Identifier: Apache-2.0
#include "hitree/tree_builder.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <tuple>

namespace hitree {

TupleList extract_tuples(const Grid& grid, const HeaderRegion& region) {
  TupleList col;
  TupleList row;
  for (CellRef ref = 0; ref < grid.cells().size(); ++ref) {
    const Cell& c = grid.cell(ref);
    if (c.content.empty()) continue;
    auto axis = header_axis(c, region);
    if (!axis) continue;
    HeaderTuple t;
    t.axis = *axis;
    t.level = header_level(c, *axis);
    t.start = *axis == Axis::Col ? c.col_start : c.row_start;
    t.end = *axis == Axis::Col ? c.col_end : c.row_end;
    t.content = c.content;
    t.origin = ref;
    (*axis == Axis::Col ? col : row).tuples.push_back(std::move(t));
  }
  for (HeaderTuple& t : row.tuples) col.tuples.push_back(std::move(t));
  return col;
}

namespace {

using Children = std::vector<std::vector<std::size_t>>;

TreeNode make_node(const std::vector<HeaderTuple>& tuples, const Children& children,
                   std::size_t index) {
  TreeNode node;
  node.tuple = tuples[index];
  node.is_leaf = tuples[index].start == tuples[index].end;
  for (std::size_t child : children[index]) node.children.push_back(make_node(tuples, children, child));
  return node;
}

[[noreturn]] void malformed(const HeaderTuple& a, const HeaderTuple& b, const char* what) {
  throw MalformedHierarchyError(to_string(a) + " and " + to_string(b) + " " + what);
}

TreeNode build_axis(const std::vector<HeaderTuple>& tuples) {
  const std::size_t n = tuples.size();
  for (const HeaderTuple& t : tuples) {
    if (t.level < 0 || t.start > t.end)
      throw MalformedHierarchyError("invalid tuple " + to_string(t));
  }

  // Per level, indices sorted by start; spans on one level must be disjoint
  // so their ends are sorted too.
  std::map<int, std::vector<std::size_t>> levels;
  for (std::size_t i = 0; i < n; ++i) levels[tuples[i].level].push_back(i);
  for (auto& [level, group] : levels) {
    std::sort(group.begin(), group.end(),
              [&](std::size_t a, std::size_t b) { return tuples[a].start < tuples[b].start; });
    for (std::size_t k = 1; k < group.size(); ++k) {
      if (tuples[group[k - 1]].overlaps(tuples[group[k]]))
        malformed(tuples[group[k - 1]], tuples[group[k]], "overlap on the same level");
    }
  }

  Children children(n + 1);  // slot n is ROOT
  for (std::size_t i = 0; i < n; ++i) {
    const HeaderTuple& a = tuples[i];
    std::optional<std::size_t> best;
    for (auto it = levels.begin(); it != levels.end() && it->first < a.level; ++it) {
      const auto& group = it->second;
      auto pos = std::upper_bound(group.begin(), group.end(), a.start,
                                  [&](std::size_t start, std::size_t idx) {
                                    return start < tuples[idx].start;
                                  });
      if (pos == group.begin()) continue;
      std::size_t cand = *std::prev(pos);
      if (!tuples[cand].contains(a)) continue;
      if (!best) {
        best = cand;
        continue;
      }
      const HeaderTuple& b = tuples[*best];
      const HeaderTuple& c = tuples[cand];
      if (std::make_tuple(c.width(), -c.level, c.start) < std::make_tuple(b.width(), -b.level, b.start))
        best = cand;
    }
    children[best ? *best : n].push_back(i);
  }

  for (auto& list : children) {
    std::sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
      return std::tie(tuples[a].start, tuples[a].level) < std::tie(tuples[b].start, tuples[b].level);
    });
    for (std::size_t k = 1; k < list.size(); ++k) {
      if (tuples[list[k - 1]].overlaps(tuples[list[k]]))
        malformed(tuples[list[k - 1]], tuples[list[k]], "are overlapping siblings");
    }
  }

  TreeNode root;
  for (std::size_t child : children[n]) root.children.push_back(make_node(tuples, children, child));
  return root;
}

void check_node(const TreeNode& node) {
  for (std::size_t k = 0; k < node.children.size(); ++k) {
    const TreeNode& child = node.children[k];
    if (!child.tuple) throw MalformedHierarchyError("ROOT below another node");
    const HeaderTuple& t = *child.tuple;
    if (node.tuple && (!node.tuple->contains(t) || node.tuple->axis != t.axis))
      malformed(*node.tuple, t, "parent does not contain child");
    if (t.level <= node.level()) throw MalformedHierarchyError("child level not below parent: " + to_string(t));
    if (child.is_leaf != (t.start == t.end)) throw MalformedHierarchyError("wrong leaf flag on " + to_string(t));
    if (k > 0) {
      const HeaderTuple& prev = *node.children[k - 1].tuple;
      if (prev.start >= t.start || prev.overlaps(t)) malformed(prev, t, "are unordered or overlapping siblings");
    }
    check_node(child);
  }
}

void render_node(const TreeNode& node, const std::string& prefix, std::string& out) {
  for (std::size_t k = 0; k < node.children.size(); ++k) {
    bool last = k + 1 == node.children.size();
    out += prefix + (last ? "`- " : "+- ") + to_string(*node.children[k].tuple) + "\n";
    render_node(node.children[k], prefix + (last ? "   " : "|  "), out);
  }
}

}  // namespace

HeaderTree build_tree(const TupleList& list) {
  std::vector<HeaderTuple> rows;
  std::vector<HeaderTuple> cols;
  for (const HeaderTuple& t : list.tuples) (t.axis == Axis::Row ? rows : cols).push_back(t);
  HeaderTree tree;
  tree.row_root = build_axis(rows);
  tree.col_root = build_axis(cols);
  check_tree(tree);
  return tree;
}

void check_tree(const HeaderTree& tree) {
  if (tree.row_root.tuple || tree.col_root.tuple) throw MalformedHierarchyError("root carries a tuple");
  for (const TreeNode& child : tree.row_root.children)
    if (child.tuple && child.tuple->axis != Axis::Row)
      throw MalformedHierarchyError("column tuple under row ROOT: " + to_string(*child.tuple));
  for (const TreeNode& child : tree.col_root.children)
    if (child.tuple && child.tuple->axis != Axis::Col)
      throw MalformedHierarchyError("row tuple under column ROOT: " + to_string(*child.tuple));
  check_node(tree.row_root);
  check_node(tree.col_root);
}

std::string render_tuples(const TupleList& list) {
  std::string out;
  for (const HeaderTuple& t : list.tuples) out += to_string(t) + "\n";
  return out;
}

std::string render_ascii(const HeaderTree& tree) {
  std::string out = "ROOT (row headers)\n";
  render_node(tree.row_root, "", out);
  out += "ROOT (column headers)\n";
  render_node(tree.col_root, "", out);
  return out;
}

Json to_json(const TupleList& list) {
  Json out = Json::array();
  for (const HeaderTuple& t : list.tuples) out.push_back(to_json(t));
  return out;
}

}  // namespace hitree
