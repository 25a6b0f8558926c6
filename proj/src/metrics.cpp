// SPDX-License-Identifier: Apache-2.0
#include "hitree/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <regex>

namespace hitree {

namespace {

bool is_punct(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return u < 0x80 && std::ispunct(u);
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_lines(std::string_view s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t nl = s.find('\n', pos);
    if (nl == std::string_view::npos) nl = s.size();
    std::string line(s.substr(pos, nl - pos));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(std::move(line));
    pos = nl + 1;
  }
  return out;
}

// "1,234.5%" / "-3" / "$12" -> canonical two-decimal text.
std::optional<std::string> canonical_number(std::string_view token) {
  static const std::regex kNumber(R"(^[-+]?\$?(\d{1,3}(,\d{3})+|\d+)?(\.\d+)?%?$)");
  std::string t(token);
  if (t.empty() || !std::regex_match(t, kNumber) ||
      std::none_of(t.begin(), t.end(), [](char c) { return is_digit(c); }))
    return std::nullopt;
  std::string digits;
  for (char c : t)
    if (c != ',' && c != '$' && c != '%' && c != '+') digits.push_back(c);
  double value = std::strtod(digits.c_str(), nullptr);
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.2f", value);
  std::string out = buffer;
  if (out == "-0.00") out = "0.00";
  return out;
}

}  // namespace

FinalAnswer extract_final_answer(std::string_view raw) {
  static const std::regex kMarker(R"(\**\s*final\s+answer\s*\**\s*:\s*\**)", std::regex::icase);
  std::vector<std::string> lines = split_lines(raw);
  FinalAnswer result;
  for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
    std::smatch m;
    if (!std::regex_search(*it, m, kMarker)) continue;
    // Drop a closing bold marker.
    std::string body = trim(m.suffix().str());
    while (body.size() >= 2 && body.compare(body.size() - 2, 2, "**") == 0)
      body = trim(body.substr(0, body.size() - 2));
    std::string current;
    for (std::size_t i = 0; i < body.size(); ++i) {
      char c = body[i];
      bool thousands = c == ',' && i > 0 && is_digit(body[i - 1]) && i + 3 < body.size() &&
                       is_digit(body[i + 1]) && is_digit(body[i + 2]) && is_digit(body[i + 3]) &&
                       (i + 4 >= body.size() || !is_digit(body[i + 4]));
      if (c == ',' && !thousands) {
        std::string part = trim(current);
        if (!part.empty()) result.answers.push_back(part);
        current.clear();
      } else {
        current.push_back(c);
      }
    }
    std::string part = trim(current);
    if (!part.empty()) result.answers.push_back(part);
    return result;
  }
  result.fallback = true;
  for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
    std::string line = trim(*it);
    if (!line.empty()) {
      result.answers.push_back(line);
      break;
    }
  }
  return result;
}

std::optional<std::string> extract_code_block(std::string_view raw) {
  std::string text(raw);
  std::optional<std::string> found;
  std::size_t pos = 0;
  while ((pos = text.find("```", pos)) != std::string::npos) {
    std::size_t line_end = text.find('\n', pos);
    if (line_end == std::string::npos) break;
    std::string lang = lower(trim(text.substr(pos + 3, line_end - pos - 3)));
    std::size_t close = text.find("```", line_end + 1);
    if (close == std::string::npos) break;
    if (lang.empty() || lang == "python" || lang == "py")
      found = text.substr(line_end + 1, close - line_end - 1);
    pos = close + 3;
  }
  if (found) return found;
  std::size_t start = text.find("import ");
  std::size_t show = text.rfind("plt.show()");
  if (start != std::string::npos && show != std::string::npos && show > start) {
    std::size_t line_start = text.rfind('\n', start);
    line_start = line_start == std::string::npos ? 0 : line_start + 1;
    return text.substr(line_start, show + 10 - line_start) + "\n";
  }
  return std::nullopt;
}

std::vector<std::string> normalize_tokens(std::string_view text, bool drop_article) {
  std::vector<std::string> tokens;
  std::string lowered = lower(text);
  std::size_t pos = 0;
  while (pos < lowered.size()) {
    while (pos < lowered.size() && std::isspace(static_cast<unsigned char>(lowered[pos]))) ++pos;
    std::size_t end = pos;
    while (end < lowered.size() && !std::isspace(static_cast<unsigned char>(lowered[end]))) ++end;
    if (end == pos) break;
    std::string_view word(lowered.data() + pos, end - pos);
    pos = end;

    // Outer punctuation, keeping what a numeral needs.
    std::size_t b = 0, e = word.size();
    while (b < e && is_punct(word[b]) && word[b] != '-' && word[b] != '$' &&
           !(word[b] == '.' && b + 1 < e && is_digit(word[b + 1])))
      ++b;
    while (e > b && is_punct(word[e - 1]) && word[e - 1] != '%') --e;
    std::string_view core = word.substr(b, e - b);
    if (auto number = canonical_number(core)) {
      tokens.push_back(*number);
      continue;
    }
    std::string cleaned;
    for (char c : core)
      if (!is_punct(c)) cleaned.push_back(c);
    if (!cleaned.empty()) tokens.push_back(std::move(cleaned));
  }
  if (drop_article && tokens.size() > 1 &&
      (tokens.front() == "a" || tokens.front() == "an" || tokens.front() == "the"))
    tokens.erase(tokens.begin());
  return tokens;
}

std::string normalize_answer(std::string_view text) {
  std::string out;
  for (const std::string& t : normalize_tokens(text, true)) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

int exact_match(const std::vector<std::string>& pred, const std::vector<std::string>& gold) {
  std::vector<std::string> a, b;
  for (const auto& p : pred)
    if (auto n = normalize_answer(p); !n.empty()) a.push_back(n);
  for (const auto& g : gold)
    if (auto n = normalize_answer(g); !n.empty()) b.push_back(n);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b ? 1 : 0;
}

namespace {

std::vector<std::string> joined_tokens(const std::vector<std::string>& answers) {
  std::vector<std::string> out;
  for (const auto& a : answers)
    for (auto& t : normalize_tokens(a, false)) out.push_back(std::move(t));
  return out;
}

double f1_of(std::vector<std::string> p, std::vector<std::string> g) {
  if (p.empty() && g.empty()) return 1.0;
  if (p.empty() || g.empty()) return 0.0;
  std::sort(p.begin(), p.end());
  std::sort(g.begin(), g.end());
  std::vector<std::string> common;
  std::set_intersection(p.begin(), p.end(), g.begin(), g.end(), std::back_inserter(common));
  if (common.empty()) return 0.0;
  double precision = static_cast<double>(common.size()) / static_cast<double>(p.size());
  double recall = static_cast<double>(common.size()) / static_cast<double>(g.size());
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace

double token_f1(const std::vector<std::string>& pred, const std::vector<std::string>& gold) {
  return f1_of(joined_tokens(pred), joined_tokens(gold));
}

double token_f1(std::string_view pred, std::string_view gold) {
  return f1_of(normalize_tokens(pred, false), normalize_tokens(gold, false));
}

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double rouge_l(std::string_view pred, std::string_view gold) {
  auto p = normalize_tokens(pred, false);
  auto g = normalize_tokens(gold, false);
  if (p.empty() && g.empty()) return 1.0;
  if (p.empty() || g.empty()) return 0.0;
  std::size_t lcs = lcs_length(p, g);
  if (lcs == 0) return 0.0;
  double precision = static_cast<double>(lcs) / static_cast<double>(p.size());
  double recall = static_cast<double>(lcs) / static_cast<double>(g.size());
  return 2.0 * precision * recall / (precision + recall);
}

Json to_json(const ScoreSet& s) {
  auto opt = [](const auto& v) { return v ? Json(*v) : Json(nullptr); };
  return Json{{"em", opt(s.em)},           {"f1", opt(s.f1)},
              {"rouge_l", opt(s.rouge_l)}, {"ecr", opt(s.ecr)},
              {"pass1", opt(s.pass1)},     {"gpt_eval", opt(s.gpt_eval)},
              {"skipped", opt(s.skipped)}};
}

ScoreSet scores_from_json(const Json& j) {
  ScoreSet s;
  auto read = [&](const char* key, auto& field) {
    auto it = j.find(key);
    if (it != j.end() && !it->is_null()) field = it->get<typename std::decay_t<decltype(field)>::value_type>();
  };
  read("em", s.em);
  read("f1", s.f1);
  read("rouge_l", s.rouge_l);
  read("ecr", s.ecr);
  read("pass1", s.pass1);
  read("gpt_eval", s.gpt_eval);
  read("skipped", s.skipped);
  return s;
}

}  // namespace hitree
