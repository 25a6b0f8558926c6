// SPDX-License-Identifier: Apache-2.0
#include "hitree/gpt_eval.hpp"

#include <optional>
#include <regex>
#include <string>

#include "hitree/error.hpp"

namespace hitree {

const PromptTemplate& gpt_eval_template() {
  static const PromptTemplate kTemplate{"gpt_eval", R"tpl(Suppose you are an expert in table analysis and your task is to rate the user answer on one metric based on the table content, question and corresponding reference answer.
You will be given table content and a question about rudimentary analysis of the table. And the corresponding reference answer to a question and the answer from the user.
Your task is to rate the answer on one metric.
Please make sure you read and understand these instructions carefully. Please keep this document open while reviewing, and refer to it as needed.
Evaluation Criteria:
Correctness (1-100) - the answer should be as close as possible to the reference answer, with perfectly equal answers receiving full marks, smaller differences receiving higher marks, and larger differences receiving only lower marks.
Evaluation Steps:
1. Read the table carefully and fully understand the contents of the table.
2. Read the result and compare it to the reference answer and the table. Determine if the answer is correct and if not score it based on how different it is from the correct answer.
3. Assign a score for correctness on a scale of 0 to 100, where 0 is the lowest and 100 is the highest based on the Evaluation Criteria.
[Question]: {{question}} ,
[Reference Answer]: {{reference}} ,
[User Answer]: {{answer}} .
Emphasize: you need to make sure your final answer is formatted in this way: [Score]: xx/100)tpl"};
  return kTemplate;
}

std::string build_gpt_eval_prompt(std::string_view question, std::string_view gold,
                                  std::string_view pred) {
  return render_prompt(gpt_eval_template(), {{"question", std::string(question)},
                                             {"reference", std::string(gold)},
                                             {"answer", std::string(pred)}});
}

int parse_gpt_eval(std::string_view response) {
  static const std::regex kScore(R"(\[Score\]\s*:\s*\**\s*(\d+)\s*/\s*100)");
  std::string text(response);
  std::optional<int> score;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), kScore); it != std::sregex_iterator(); ++it) {
    const std::string digits = (*it)[1].str();
    score = digits.size() > 3 ? 1000 : std::stoi(digits);
  }
  if (!score) throw UnparseableEvalError("no '[Score]: xx/100' marker in judge response");
  if (*score > 100) throw UnparseableEvalError("judge score " + std::to_string(*score) + " exceeds 100");
  return *score;
}

}  // namespace hitree
