// SPDX-License-Identifier: Apache-2.0
#include "hitree/chat_client.hpp"

#include <thread>

namespace hitree {

Json to_json(const ChatRequest& request, const std::string& model) {
  Json messages = Json::array();
  for (const ChatMessage& m : request.messages)
    messages.push_back(Json{{"role", m.role}, {"content", m.content}});
  return Json{{"model", model},
              {"messages", std::move(messages)},
              {"temperature", request.temperature},
              {"max_tokens", request.max_tokens}};
}

RetryingChatClient::RetryingChatClient(std::shared_ptr<ChatClient> inner, RetryPolicy policy,
                                       Sleeper sleeper)
    : inner_(std::move(inner)), policy_(policy), sleeper_(std::move(sleeper)) {
  if (!sleeper_) sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  if (policy_.attempts < 1) policy_.attempts = 1;
}

std::string RetryingChatClient::complete(const ChatRequest& request) {
  auto backoff = policy_.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    try {
      return inner_->complete(request);
    } catch (const TransportError& e) {
      bool retryable = e.status() == 0 || e.status() == 429;
      if (!retryable || attempt >= policy_.attempts) {
        throw TransportError(std::string(e.what()) + " (after " + std::to_string(attempt) +
                                 (attempt == 1 ? " attempt)" : " attempts)"),
                             e.status());
      }
    }
    sleeper_(backoff);
    backoff *= 2;
  }
}

std::shared_ptr<ChatClient> make_chat_client(const AppConfig& cfg, Sleeper sleeper) {
  std::shared_ptr<ChatClient> inner;
  if (cfg.mock_script) inner = MockChatClient::from_file(*cfg.mock_script);
  else inner = std::make_shared<HttpChatClient>(cfg.endpoint);
  return std::make_shared<RetryingChatClient>(
      std::move(inner), RetryPolicy{cfg.endpoint.max_retries, std::chrono::milliseconds(1000)},
      std::move(sleeper));
}

}  // namespace hitree
