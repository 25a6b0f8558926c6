// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "hitree/error.hpp"
#include "hitree/gpt_eval.hpp"
#include "hitree/metrics.hpp"
#include "test_support.hpp"

using namespace hitree;

TEST(TokenF1, Examples) {
  EXPECT_NEAR(token_f1("red car", "the red car"), 0.8, 1e-12);
  EXPECT_DOUBLE_EQ(token_f1("red car", "red car"), 1.0);
  EXPECT_DOUBLE_EQ(token_f1("blue", "red car"), 0.0);
  EXPECT_DOUBLE_EQ(token_f1("", ""), 1.0);
  EXPECT_DOUBLE_EQ(token_f1("", "x"), 0.0);
  EXPECT_DOUBLE_EQ(token_f1(std::vector<std::string>{"red", "car"}, std::vector<std::string>{"red car"}), 1.0);
}

TEST(RougeL, Examples) {
  EXPECT_NEAR(rouge_l("a b c d", "a c d"), 6.0 / 7.0, 1e-12);
  EXPECT_DOUBLE_EQ(rouge_l("x y", "x y"), 1.0);
  EXPECT_DOUBLE_EQ(rouge_l("x", "y"), 0.0);
  EXPECT_DOUBLE_EQ(rouge_l("", ""), 1.0);
}

TEST(Lcs, MatchesBruteForceExhaustively) {
  for (const auto& [alphabet, len] : std::vector<std::pair<std::vector<std::string>, std::size_t>>{
           {{"x", "y"}, 8}, {{"x", "y", "z"}, 5}}) {
    std::vector<std::vector<std::string>> seqs = testkit::all_sequences(alphabet, len);
    std::mt19937_64 rng(len);
    // All pairs for the small space would be ~260k; sample with every length covered.
    for (std::size_t i = 0; i < seqs.size(); ++i) {
      for (int k = 0; k < 8; ++k) {
        const auto& a = seqs[i];
        const auto& b = seqs[rng() % seqs.size()];
        ASSERT_EQ(lcs_length(a, b), testkit::brute_lcs(a, b));
        ASSERT_NEAR(rouge_l(testkit::join_tokens(a), testkit::join_tokens(b)), testkit::brute_rouge(a, b), 1e-12);
      }
    }
  }
}

TEST(Lcs, ExhaustiveShortPairs) {
  std::vector<std::vector<std::string>> seqs = testkit::all_sequences({"x", "y", "z"}, 3);
  for (const auto& a : seqs)
    for (const auto& b : seqs) ASSERT_EQ(lcs_length(a, b), testkit::brute_lcs(a, b));
}

TEST(Normalize, PunctuationCaseNumerals) {
  EXPECT_EQ(normalize_answer("The  Beijing!"), "beijing");
  EXPECT_EQ(normalize_answer("1,234"), "1234.00");
  EXPECT_EQ(normalize_answer("45%"), "45.00");
  EXPECT_EQ(normalize_answer("3.5"), "3.50");
  EXPECT_EQ(normalize_tokens("a red car", false), (std::vector<std::string>{"a", "red", "car"}));
  EXPECT_EQ(normalize_tokens("a red car", true), (std::vector<std::string>{"red", "car"}));
}

TEST(ExactMatch, MultisetAndNormalization) {
  EXPECT_EQ(exact_match({"1234"}, {"1,234"}), 1);
  EXPECT_EQ(exact_match({"45"}, {"45%"}), 1);
  EXPECT_EQ(exact_match({"the Yes"}, {"yes"}), 1);
  EXPECT_EQ(exact_match({"b", "a"}, {"a", "b"}), 1);
  EXPECT_EQ(exact_match({"a", "a"}, {"a"}), 0);
  EXPECT_EQ(exact_match({"no"}, {"yes"}), 0);
}

TEST(FinalAnswer, Variants) {
  FinalAnswer a = extract_final_answer("Thought: x\nFinal Answer: Beijing, Shanghai");
  EXPECT_FALSE(a.fallback);
  EXPECT_EQ(a.answers, (std::vector<std::string>{"Beijing", "Shanghai"}));

  EXPECT_EQ(extract_final_answer("**Final Answer:** 1,234").answers, (std::vector<std::string>{"1,234"}));
  EXPECT_EQ(extract_final_answer("final answer: 12, 1,500").answers, (std::vector<std::string>{"12", "1,500"}));
  EXPECT_EQ(extract_final_answer("Final Answer: a\nFinal Answer: b").answers, (std::vector<std::string>{"b"}));

  FinalAnswer fb = extract_final_answer("Some reasoning\nThe answer is 7\n\n");
  EXPECT_TRUE(fb.fallback);
  EXPECT_EQ(fb.answers, (std::vector<std::string>{"The answer is 7"}));
}

TEST(CodeBlock, Extraction) {
  EXPECT_EQ(extract_code_block("text\n```python\nprint(1)\n```\nmore").value(), "print(1)\n");
  EXPECT_EQ(extract_code_block("```python\nfirst\n```\n```\nsecond\n```").value(), "second\n");
  std::optional<std::string> bare =
      extract_code_block("Here:\nimport matplotlib.pyplot as plt\nplt.bar([1],[2])\nplt.show()\nDone.");
  ASSERT_TRUE(bare.has_value());
  EXPECT_NE(bare->find("plt.bar"), std::string::npos);
  EXPECT_EQ(bare->find("Done."), std::string::npos);
  EXPECT_FALSE(extract_code_block("no code here").has_value());
}

TEST(GptEval, ParseAndPrompt) {
  EXPECT_EQ(parse_gpt_eval("[Score]: 85/100"), 85);
  EXPECT_EQ(parse_gpt_eval("[Score]: 10/100\nrethink\n[Score]: 70 / 100"), 70);
  EXPECT_THROW(parse_gpt_eval("I like it"), UnparseableEvalError);
  EXPECT_THROW(parse_gpt_eval("[Score]: 120/100"), UnparseableEvalError);
  std::string prompt = build_gpt_eval_prompt("Q?", "GOLD TEXT", "PRED TEXT");
  EXPECT_NE(prompt.find("Q?"), std::string::npos);
  EXPECT_NE(prompt.find("GOLD TEXT"), std::string::npos);
  EXPECT_NE(prompt.find("PRED TEXT"), std::string::npos);
  EXPECT_EQ(gpt_eval_template().slots().size(), 3u);
}

TEST(ScoreSet, JsonRoundTrip) {
  ScoreSet s;
  s.em = 1;
  s.f1 = 0.5;
  s.ecr = 1;
  s.skipped = "no executor";
  ScoreSet back = scores_from_json(to_json(s));
  EXPECT_EQ(back.em, s.em);
  EXPECT_EQ(back.f1, s.f1);
  EXPECT_EQ(back.ecr, s.ecr);
  EXPECT_FALSE(back.pass1.has_value());
  EXPECT_FALSE(back.rouge_l.has_value());
  EXPECT_EQ(back.skipped, s.skipped);
}
