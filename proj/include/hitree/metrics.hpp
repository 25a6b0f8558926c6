// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hitree/table_model.hpp"

namespace hitree {

struct FinalAnswer {
  std::vector<std::string> answers;
  // No "Final Answer:" line; `answers` holds the last non-empty line.
  bool fallback = false;
};

// Takes the last line carrying a "Final Answer:" marker (case-insensitive,
// markdown bold tolerated) and splits it on commas. Commas that separate
// thousands ("1,234") do not split.
FinalAnswer extract_final_answer(std::string_view raw);

// Body of the last ```python (or bare ```) fence, else the span from the
// first import line through plt.show(), else nullopt.
std::optional<std::string> extract_code_block(std::string_view raw);

// Lowercases, strips punctuation, canonicalizes numerals to two decimals
// ("1,234" -> "1234.00", "45%" -> "45.00"). `drop_article` removes a
// leading a/an/the.
std::vector<std::string> normalize_tokens(std::string_view text, bool drop_article);
std::string normalize_answer(std::string_view text);

// 1 iff the normalized answer lists are equal as multisets.
int exact_match(const std::vector<std::string>& pred, const std::vector<std::string>& gold);

// Token-level F1 over the concatenated answers. Articles are kept.
double token_f1(const std::vector<std::string>& pred, const std::vector<std::string>& gold);
double token_f1(std::string_view pred, std::string_view gold);

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b);

// Sentence-level ROUGE-L F-measure (beta = 1) over normalized tokens.
double rouge_l(std::string_view pred, std::string_view gold);

// Per-item scores; absent fields were not computed for the task or were
// skipped.
struct ScoreSet {
  std::optional<double> em;
  std::optional<double> f1;
  std::optional<double> rouge_l;
  std::optional<int> ecr;
  std::optional<int> pass1;
  std::optional<double> gpt_eval;
  std::optional<std::string> skipped;
};

Json to_json(const ScoreSet& scores);
ScoreSet scores_from_json(const Json& json);

}  // namespace hitree
