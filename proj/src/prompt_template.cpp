// SPDX-License-Identifier: Apache-2.0
#include "hitree/prompt_template.hpp"

#include <algorithm>

#include "hitree/error.hpp"

namespace hitree {

namespace {

// Walks `body`, handing literal runs to on_text and placeholder names to
// on_slot in order.
template <typename Text, typename Slot>
void scan(std::string_view body, Text on_text, Slot on_slot) {
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t open = body.find("{{", pos);
    if (open == std::string_view::npos) break;
    std::size_t close = body.find("}}", open + 2);
    if (close == std::string_view::npos) break;
    on_text(body.substr(pos, open - pos));
    on_slot(body.substr(open + 2, close - open - 2));
    pos = close + 2;
  }
  on_text(body.substr(pos));
}

}  // namespace

std::vector<std::string> PromptTemplate::slots() const {
  std::vector<std::string> out;
  scan(
      body, [](std::string_view) {},
      [&](std::string_view name) {
        if (std::find(out.begin(), out.end(), name) == out.end()) out.emplace_back(name);
      });
  return out;
}

std::string render_prompt(const PromptTemplate& tpl, const SlotValues& values) {
  std::string out;
  out.reserve(tpl.body.size());
  scan(
      tpl.body, [&](std::string_view text) { out += text; },
      [&](std::string_view name) {
        auto it = values.find(name);
        if (it == values.end())
          throw RenderError(std::string(name), "template '" + tpl.name + "' slot '" +
                                                   std::string(name) + "' has no value");
        out += it->second;
      });
  return out;
}

}  // namespace hitree
