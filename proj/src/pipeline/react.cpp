// SPDX-License-Identifier: Apache-2.0
#include "hitree/react.hpp"

#include <regex>

namespace hitree {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<ReactStep> parse_react(std::string_view response) {
  static const std::regex kMarker(
      R"(^\s*(?:\d+\.\s*)?\**\s*(thought|action|result|final\s+answer)\s*\**\s*:\s*\**\s*(.*)$)",
      std::regex::icase);
  std::vector<ReactStep> steps;
  std::string* open_part = nullptr;
  bool have_step = false;
  ReactStep current;

  auto flush = [&] {
    if (!have_step) return;
    current.thought = trim(current.thought);
    current.action = trim(current.action);
    current.result = trim(current.result);
    current.incomplete = current.thought.empty() || current.action.empty() || current.result.empty();
    steps.push_back(std::move(current));
    current = ReactStep{};
    have_step = false;
    open_part = nullptr;
  };

  std::string text(response);
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;

    std::smatch m;
    if (!std::regex_match(line, m, kMarker)) {
      if (open_part) *open_part += "\n" + line;
      continue;
    }
    char kind = static_cast<char>(std::tolower(static_cast<unsigned char>(m[1].str()[0])));
    if (kind == 'f') break;
    bool restart = kind == 't' || (kind == 'a' && (!current.action.empty() || !current.result.empty())) ||
                   (kind == 'r' && !current.result.empty());
    if (restart) flush();
    std::string& part = kind == 't' ? current.thought : kind == 'a' ? current.action : current.result;
    part = m[2].str();
    if (part.empty()) part = " ";  // marks the slot as seen
    open_part = &part;
    have_step = true;
  }
  flush();
  return steps;
}

Json to_json(const ReactStep& s) {
  return Json{{"thought", s.thought}, {"action", s.action}, {"result", s.result},
              {"incomplete", s.incomplete}};
}

}  // namespace hitree
