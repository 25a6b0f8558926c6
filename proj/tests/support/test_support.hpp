// SPDX-License-Identifier: Apache-2.0
// Helpers shared by the unit tests and the acceptance binary.
#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hitree/table_model.hpp"

namespace hitree::testkit {

inline std::string fixture(const std::string& rel) { return std::string(HITREE_FIXTURES) + "/" + rel; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::mt19937_64 rng{std::random_device{}()};
    path_ = std::filesystem::temp_directory_path() / ("hitree-" + tag + "-" + std::to_string(rng()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Random tiling of an n x m rectangle into merged cells.
inline Grid random_grid(std::mt19937_64& rng, std::size_t max_rows = 7, std::size_t max_cols = 6) {
  static const std::vector<std::string> kWords{"alpha", "beta", "12", "3.5", "Total", "x & y",
                                               "50%",   "a_b",  "<i>", "#1",  "",      "q\"t"};
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  const std::size_t rows = 1 + pick(max_rows);
  const std::size_t cols = 1 + pick(max_cols);
  std::vector<int> owner(rows * cols, -1);
  std::vector<Cell> cells;
  for (std::size_t r = 1; r <= rows; ++r) {
    for (std::size_t c = 1; c <= cols; ++c) {
      if (owner[(r - 1) * cols + (c - 1)] >= 0) continue;
      std::size_t rs = pick(4) == 0 ? 1 + pick(rows - r + 1) : 1;
      std::size_t cs = pick(4) == 0 ? 1 + pick(cols - c + 1) : 1;
      // Clip the width to the free run along the top row.
      for (std::size_t k = 1; k < cs; ++k)
        if (owner[(r - 1) * cols + (c + k - 1)] >= 0) {
          cs = k;
          break;
        }
      for (std::size_t rr = r; rr < r + rs; ++rr) {
        bool free_row = true;
        for (std::size_t cc = c; cc < c + cs; ++cc)
          if (owner[(rr - 1) * cols + (cc - 1)] >= 0) free_row = false;
        if (!free_row) {
          rs = rr - r;
          break;
        }
      }
      Cell cell;
      cell.row_start = r;
      cell.row_end = r + rs - 1;
      cell.col_start = c;
      cell.col_end = c + cs - 1;
      cell.content = kWords[pick(kWords.size())];
      if (!cell.content.empty()) {
        cell.indent = pick(5) == 0 ? static_cast<int>(1 + pick(2)) : 0;
        cell.emphasis.bold = pick(6) == 0;
      }
      cell.emphasis.background = pick(8) == 0;
      for (std::size_t rr = r; rr <= cell.row_end; ++rr)
        for (std::size_t cc = c; cc <= cell.col_end; ++cc)
          owner[(rr - 1) * cols + (cc - 1)] = static_cast<int>(cells.size());
      cells.push_back(std::move(cell));
    }
  }
  std::vector<std::string> notes;
  if (pick(4) == 0) notes.push_back("Source: survey " + std::to_string(pick(100)));
  return Grid::checked(rows, cols, std::move(cells), std::move(notes));
}

// Random well-nested tuple list: two laminar interval families (one per
// axis), levels strictly increasing along every chain, depth <= 4.
inline std::vector<HeaderTuple> random_tuple_list(std::mt19937_64& rng, std::size_t max_tuples = 40) {
  std::vector<HeaderTuple> out;
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  std::function<void(Axis, std::size_t, std::size_t, int, int)> grow =
      [&](Axis axis, std::size_t lo, std::size_t hi, int parent_level, int depth) {
        if (depth >= 4) return;
        std::size_t pos = lo;
        while (pos <= hi && out.size() < max_tuples) {
          pos += pick(2);  // optional gap
          if (pos > hi) break;
          std::size_t width = 1 + pick(hi - pos + 1);
          HeaderTuple t;
          t.axis = axis;
          t.level = parent_level + 1 + static_cast<int>(pick(3) == 0);
          t.start = pos;
          t.end = pos + width - 1;
          t.content = std::string(axis == Axis::Row ? "r" : "c") + std::to_string(out.size());
          out.push_back(t);
          if (pick(3) != 0) grow(axis, t.start, t.end, t.level, depth + 1);
          pos = t.end + 1;
        }
      };
  grow(Axis::Col, 1, 4 + pick(20), -1, 0);
  grow(Axis::Row, 1, 4 + pick(20), -1, 0);
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

// O(n^2) oracle: a tuple's parent is the narrowest same-axis tuple of lower
// level containing it, ties going to the higher level; ROOT otherwise.
inline HeaderTree oracle_tree(const std::vector<HeaderTuple>& tuples) {
  const std::size_t n = tuples.size();
  std::vector<std::optional<std::size_t>> parent(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const HeaderTuple& a = tuples[i];
      const HeaderTuple& b = tuples[j];
      if (i == j || a.axis != b.axis || b.level >= a.level || !b.contains(a)) continue;
      if (!parent[i]) {
        parent[i] = j;
        continue;
      }
      const HeaderTuple& cur = tuples[*parent[i]];
      if (b.width() < cur.width() || (b.width() == cur.width() && b.level > cur.level))
        parent[i] = j;
    }
  }
  std::function<TreeNode(std::optional<std::size_t>, Axis)> build = [&](std::optional<std::size_t> self,
                                                                        Axis axis) {
    TreeNode node;
    if (self) {
      node.tuple = tuples[*self];
      node.is_leaf = tuples[*self].start == tuples[*self].end;
    }
    std::vector<std::size_t> kids;
    for (std::size_t i = 0; i < n; ++i)
      if (tuples[i].axis == axis && parent[i] == self) kids.push_back(i);
    std::sort(kids.begin(), kids.end(), [&](std::size_t x, std::size_t y) {
      if (tuples[x].start != tuples[y].start) return tuples[x].start < tuples[y].start;
      return tuples[x].level < tuples[y].level;
    });
    for (std::size_t k : kids) node.children.push_back(build(k, axis));
    return node;
  };
  HeaderTree tree;
  tree.row_root = build(std::nullopt, Axis::Row);
  tree.col_root = build(std::nullopt, Axis::Col);
  return tree;
}

// LCS length by enumerating every subsequence of `a`.
inline std::size_t brute_lcs(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::size_t best = 0;
  const std::size_t n = a.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::size_t bits = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (bits <= best) continue;
    std::size_t j = 0;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      while (j < b.size() && b[j] != a[i]) ++j;
      if (j == b.size()) ok = false;
      else ++j;
    }
    if (ok) best = bits;
  }
  return best;
}

inline double brute_rouge(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  double lcs = static_cast<double>(brute_lcs(a, b));
  if (lcs == 0) return 0.0;
  double p = lcs / static_cast<double>(a.size());
  double r = lcs / static_cast<double>(b.size());
  return 2 * p * r / (p + r);
}

// Every sequence over `alphabet` with length <= max_len.
inline std::vector<std::vector<std::string>> all_sequences(const std::vector<std::string>& alphabet,
                                                           std::size_t max_len) {
  std::vector<std::vector<std::string>> out{{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (const std::string& tok : alphabet) {
        std::vector<std::string> next = out[i];
        next.push_back(tok);
        out.push_back(std::move(next));
      }
    }
    begin = end;
  }
  return out;
}

inline std::string join_tokens(const std::vector<std::string>& toks) {
  std::string s;
  for (std::size_t i = 0; i < toks.size(); ++i) s += (i ? " " : "") + toks[i];
  return s;
}

}  // namespace hitree::testkit
