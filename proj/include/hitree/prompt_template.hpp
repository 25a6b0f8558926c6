// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hitree {

// Body text with {{slot}} placeholders.
struct PromptTemplate {
  std::string name;
  std::string body;

  // Slot names in order of first appearance.
  std::vector<std::string> slots() const;
};

using SlotValues = std::map<std::string, std::string, std::less<>>;

// Substitutes every placeholder. Throws RenderError naming the first slot
// without a value. Values are inserted as-is and never re-scanned.
std::string render_prompt(const PromptTemplate& tpl, const SlotValues& values);

}  // namespace hitree
