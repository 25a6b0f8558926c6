// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include "hitree/prompt_template.hpp"

namespace hitree {

// Judge prompt with slots question, reference, answer.
const PromptTemplate& gpt_eval_template();

std::string build_gpt_eval_prompt(std::string_view question, std::string_view gold,
                                  std::string_view pred);

// Integer before "/100" on the last "[Score]:" marker. Throws
// UnparseableEvalError if there is none or it exceeds 100.
int parse_gpt_eval(std::string_view response);

}  // namespace hitree
