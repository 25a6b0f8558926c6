// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hitree/config.hpp"
#include "hitree/table_model.hpp"

namespace hitree {

struct ChatMessage {
  std::string role;  // system | user | assistant
  std::string content;

  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

struct ChatRequest {
  // Pipeline stage issuing the call: tree_generation, tree_reasoning,
  // answer, gpt_eval, align.
  std::string stage;
  std::vector<ChatMessage> messages;
  double temperature = 0.0;
  int max_tokens = 4096;
};

// Chat-completion body: {model, messages, temperature, max_tokens}.
Json to_json(const ChatRequest& request, const std::string& model);

// Shareable across threads. Throws TransportError on failure.
class ChatClient {
 public:
  virtual ~ChatClient() = default;
  virtual std::string complete(const ChatRequest& request) = 0;
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;

struct RetryPolicy {
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{1000};
};

// Retries connection failures (status 0) and HTTP 429 with exponential
// backoff; every other error is passed through at once.
class RetryingChatClient : public ChatClient {
 public:
  RetryingChatClient(std::shared_ptr<ChatClient> inner, RetryPolicy policy, Sleeper sleeper = {});

  std::string complete(const ChatRequest& request) override;

 private:
  std::shared_ptr<ChatClient> inner_;
  RetryPolicy policy_;
  Sleeper sleeper_;
};

// One attempt per call against {base_url}/chat/completions.
class HttpChatClient : public ChatClient {
 public:
  explicit HttpChatClient(ChatEndpointConfig config);

  std::string complete(const ChatRequest& request) override;

 private:
  ChatEndpointConfig config_;
  std::string origin_;  // scheme://host[:port]
  std::string path_;    // path prefix + /chat/completions
};

// Scripted endpoint. Each JSONL line is one entry:
//   {"match": "text" | ["a","b"], "stage": "...", "response": "..."}
//   {"response": "..."}
//   {"error": "transport" | "429"}   (optionally with match/stage)
// Entries with "match" or "stage" are rules: the first whose conditions all
// hold answers the call (match = substring of any message). A call that no
// rule answers takes the next plain entry from the queue.
class MockChatClient : public ChatClient {
 public:
  explicit MockChatClient(std::vector<Json> entries);
  static std::shared_ptr<MockChatClient> from_file(const std::string& path);

  std::string complete(const ChatRequest& request) override;

  std::size_t calls() const noexcept { return calls_.load(); }

 private:
  struct Entry {
    std::vector<std::string> match;
    std::optional<std::string> stage;
    std::optional<std::string> response;
    std::optional<std::string> error;
  };

  std::string answer(const Entry& entry);

  std::vector<Entry> rules_;
  std::deque<Entry> queue_;
  std::mutex mutex_;
  std::atomic<std::size_t> calls_{0};
};

// Mock when cfg.mock_script is set, otherwise HTTP (API key from
// HITREE_API_KEY); both wrapped in the retry policy.
std::shared_ptr<ChatClient> make_chat_client(const AppConfig& cfg, Sleeper sleeper = {});

}  // namespace hitree
