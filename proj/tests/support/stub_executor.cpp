// SPDX-License-Identifier: Apache-2.0
// Test double for the chart executor. Reads the program from stdin and
// reports the list assigned on the first `y = [...]` or `y_values = [...]`
// line. A program containing `raise` reports a failed run.
#include <iostream>
#include <iterator>
#include <regex>
#include <string>

#include "hitree/table_model.hpp"

int main() {
  std::string code((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
  hitree::Json out{{"ok", false}, {"y_values", hitree::Json::array()}, {"stderr", ""}};
  if (code.find("raise") != std::string::npos) {
    out["stderr"] = "RuntimeError: raised by program";
    std::cout << out.dump() << '\n';
    return 0;
  }
  static const std::regex kList(R"((?:^|\n)\s*(?:y|y_values)\s*=\s*(\[[^\]]*\]))");
  std::smatch m;
  if (std::regex_search(code, m, kList)) {
    hitree::Json values = hitree::Json::parse(m[1].str(), nullptr, false);
    if (!values.is_discarded() && values.is_array()) {
      out["ok"] = true;
      out["y_values"] = values;
    } else {
      out["stderr"] = "SyntaxError: cannot read y list";
    }
  } else {
    out["ok"] = true;  // ran, but drew nothing we can read
  }
  std::cout << out.dump() << '\n';
  return 0;
}
