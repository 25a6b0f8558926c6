// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hitree/table_model.hpp"

namespace hitree {

inline constexpr std::size_t kReactStepCap = 6;

struct ReactStep {
  std::string thought;
  std::string action;
  std::string result;
  // A trailing cycle with at least one part missing.
  bool incomplete = false;

  friend bool operator==(const ReactStep&, const ReactStep&) = default;
};

// Scans for Thought:/Action:/Result: markers at line starts. A new cycle
// begins at each Thought, or at a marker whose slot in the current cycle is
// already filled. Text after "Final Answer:" is not part of any step.
std::vector<ReactStep> parse_react(std::string_view response);

Json to_json(const ReactStep& step);

}  // namespace hitree
