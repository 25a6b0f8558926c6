// SPDX-License-Identifier: Apache-2.0
#include "hitree/treethinker.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

#include "hitree/metrics.hpp"
#include "hitree/structure.hpp"

namespace hitree {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Full: return "full";
    case Mode::NoTreeGeneration: return "no-tree-gen";
    case Mode::NoTreeReasoning: return "no-tree-reason";
  }
  return "full";
}

Mode parse_mode(std::string_view name) {
  std::string n(name);
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
  std::replace(n.begin(), n.end(), '_', '-');
  if (n == "full") return Mode::Full;
  if (n == "no-tree-gen" || n == "no-tree-generation") return Mode::NoTreeGeneration;
  if (n == "no-tree-reason" || n == "no-tree-reasoning") return Mode::NoTreeReasoning;
  throw Error("unknown mode '" + std::string(name) + "' (full, no-tree-gen, no-tree-reason)");
}

Json to_json(const PipelineTranscript& t) {
  Json rounds = Json::array();
  for (const Round& r : t.rounds)
    rounds.push_back(Json{{"stage", r.stage}, {"prompt", r.prompt}, {"response", r.response}});
  Json steps = Json::array();
  for (const ReactStep& s : t.react_steps) steps.push_back(to_json(s));
  Json j{{"mode", to_string(t.mode)},
         {"task", to_string(t.task)},
         {"rounds", std::move(rounds)},
         {"react_steps", std::move(steps)},
         {"react_truncated", t.react_truncated},
         {"final_answer", t.final_answer},
         {"answer_fallback", t.answer_fallback}};
  j["code"] = t.code ? Json(*t.code) : Json(nullptr);
  return j;
}

std::string table_text_for(const SourceDocument& doc, Format format) {
  if (doc.format == format) return doc.text;
  Grid grid = parse(doc);
  return serialize(grid, format, SerializeOptions{format == Format::Markdown || format == Format::CSV});
}

namespace {

std::string local_tree_note(const SourceDocument& doc) {
  try {
    Grid grid = parse(doc);
    HeaderTree tree = build_tree(extract_tuples(grid, detect_header_region(grid)));
    return "\n\n[Local Header Tree]:\n" + render_ascii(tree);
  } catch (const Error& e) {
    return std::string("\n\n[Local Header Tree]: unavailable (") + e.what() + ")";
  }
}

class Conversation {
 public:
  Conversation(ChatClient& client, const PipelineOptions& options, PipelineTranscript& transcript)
      : client_(client), options_(options), transcript_(transcript) {}

  const std::string& ask(const std::string& stage, const std::string& prompt) {
    messages_.push_back(ChatMessage{"user", prompt});
    ChatRequest request{stage, messages_, options_.temperature, options_.max_tokens};
    std::string response;
    try {
      response = client_.complete(request);
    } catch (const TransportError& e) {
      throw PipelineTransportError(e, transcript_);
    }
    messages_.push_back(ChatMessage{"assistant", response});
    transcript_.rounds.push_back(Round{stage, prompt, std::move(response)});
    return transcript_.rounds.back().response;
  }

 private:
  ChatClient& client_;
  const PipelineOptions& options_;
  PipelineTranscript& transcript_;
  std::vector<ChatMessage> messages_;
};

}  // namespace

PipelineTranscript run_treethinker(const SourceDocument& table, std::string_view question,
                                   ChatClient& client, const PipelineOptions& options, Mode mode) {
  PipelineTranscript t;
  t.mode = mode;
  t.task = options.task;
  const std::string table_text = table_text_for(table, options.table_format);
  const SlotValues table_slot{{"table", table_text}};
  const SlotValues qa_slots{{"table", table_text}, {"question", std::string(question)}};
  const PromptTemplate& answer_tpl = answer_template(options.task);

  Conversation chat(client, options, t);
  if (mode == Mode::NoTreeGeneration) {
    chat.ask("answer", render_prompt(answer_tpl, qa_slots));
  } else {
    chat.ask("tree_generation", render_prompt(prompt_template("tree_first_round"), table_slot));
    if (mode == Mode::Full) {
      std::string second =
          render_prompt(prompt_template("tree_second_round"), SlotValues{{"question", std::string(question)}});
      if (options.inject_local_tree) second += local_tree_note(table);
      chat.ask("tree_reasoning", second);
    } else {
      chat.ask("answer", render_prompt(answer_tpl, qa_slots));
    }
  }

  const std::string& last = t.rounds.back().response;
  if (mode == Mode::Full) {
    t.react_steps = parse_react(last);
    if (t.react_steps.size() > kReactStepCap) {
      t.react_steps.resize(kReactStepCap);
      t.react_truncated = true;
    }
  }
  FinalAnswer fa = extract_final_answer(last);
  t.final_answer = std::move(fa.answers);
  t.answer_fallback = fa.fallback;
  if (options.task == TaskType::CG) t.code = extract_code_block(last);
  return t;
}

std::function<double(std::string_view, std::string_view)> make_endpoint_scorer(
    std::shared_ptr<ChatClient> client, const PipelineOptions& options) {
  int max_tokens = std::min(options.max_tokens, 16);
  double temperature = options.temperature;
  return [client = std::move(client), max_tokens, temperature](std::string_view content,
                                                                std::string_view keyword) {
    static const std::regex kNumber(R"((\d+(?:\.\d+)?))");
    std::string prompt = "Rate how relevant the table header \"" + std::string(content) +
                         "\" is to the keyword \"" + std::string(keyword) +
                         "\" on a scale from 0 to 1. Reply with the number only.";
    ChatRequest request{"align", {ChatMessage{"user", prompt}}, temperature, max_tokens};
    std::string reply = client->complete(request);
    std::smatch m;
    if (!std::regex_search(reply, m, kNumber)) return 0.0;
    return std::clamp(std::stod(m[1].str()), 0.0, 1.0);
  };
}

}  // namespace hitree
