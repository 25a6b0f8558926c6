// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hitree/chat_client.hpp"
#include "hitree/formats.hpp"
#include "hitree/prompts.hpp"
#include "hitree/react.hpp"
#include "hitree/tree_builder.hpp"

namespace hitree {

enum class Mode { Full, NoTreeGeneration, NoTreeReasoning };

std::string_view to_string(Mode mode);
// full | no-tree-gen | no-tree-reason
Mode parse_mode(std::string_view name);

struct Round {
  std::string stage;
  std::string prompt;
  std::string response;
};

struct PipelineTranscript {
  Mode mode = Mode::Full;
  TaskType task = TaskType::FC;
  std::vector<Round> rounds;
  std::vector<ReactStep> react_steps;
  // More than kReactStepCap cycles were emitted; only the first are kept.
  bool react_truncated = false;
  std::vector<std::string> final_answer;
  // No "Final Answer:" line was found.
  bool answer_fallback = false;
  // Chart program extracted from the last response (CG only).
  std::optional<std::string> code;
};

Json to_json(const PipelineTranscript& transcript);

// Transport failure mid-run; carries the rounds completed so far.
class PipelineTransportError : public TransportError {
 public:
  PipelineTransportError(const TransportError& cause, PipelineTranscript partial)
      : TransportError(cause.what(), cause.status()), transcript_(std::move(partial)) {}

  const PipelineTranscript& transcript() const noexcept { return transcript_; }

 private:
  PipelineTranscript transcript_;
};

struct PipelineOptions {
  TaskType task = TaskType::FC;
  Format table_format = Format::LaTeX;
  double temperature = 0.0;
  int max_tokens = 4096;
  // Append the locally built header tree to the second-round prompt.
  bool inject_local_tree = false;
};

// Table text as sent to the model: the source itself when it is already in
// `format`, otherwise parsed and re-serialized (flattened for Markdown/CSV).
std::string table_text_for(const SourceDocument& doc, Format format);

// Full: tree prompt, then the React second round in the same conversation.
// NoTreeGeneration: one plain answer prompt.
// NoTreeReasoning: tree prompt, then the plain answer prompt.
PipelineTranscript run_treethinker(const SourceDocument& table, std::string_view question,
                                   ChatClient& client, const PipelineOptions& options,
                                   Mode mode);

// Align scorer that asks the endpoint for a 0..1 relevance value.
std::function<double(std::string_view, std::string_view)> make_endpoint_scorer(
    std::shared_ptr<ChatClient> client, const PipelineOptions& options);

}  // namespace hitree
