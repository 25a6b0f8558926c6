// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>
#include <vector>

#include "hitree/prompt_template.hpp"

namespace hitree {

enum class TaskType { FC, NR, DA, CG, SC };

std::string_view to_string(TaskType task);
// Case-insensitive fc|nr|da|cg|sc.
TaskType parse_task_type(std::string_view name);

// Question generation (question_fc, question_nr, question_da, question_cg),
// answer generation (answer_fc, answer_nr, answer_da, answer_cg), the two
// tree rounds (tree_first_round, tree_second_round) and gpt_eval.
std::vector<std::string_view> prompt_names();

// Throws Error for an unknown name.
const PromptTemplate& prompt_template(std::string_view name);

// SC questions are asked with the fact-checking answer prompt.
const PromptTemplate& answer_template(TaskType task);

// Throws Error for SC, which has no question generation prompt.
const PromptTemplate& question_template(TaskType task);

}  // namespace hitree
