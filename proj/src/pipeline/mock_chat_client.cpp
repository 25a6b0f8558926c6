// SPDX-License-Identifier: Apache-2.0
#include <fstream>

#include "hitree/chat_client.hpp"

namespace hitree {

MockChatClient::MockChatClient(std::vector<Json> entries) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Json& j = entries[i];
    if (!j.is_object()) throw ConfigError("mock entry " + std::to_string(i + 1) + " is not an object");
    Entry e;
    if (auto m = j.find("match"); m != j.end()) {
      if (m->is_string()) e.match.push_back(m->get<std::string>());
      else if (m->is_array()) for (const Json& s : *m) e.match.push_back(s.get<std::string>());
      else throw ConfigError("mock entry " + std::to_string(i + 1) + ": bad 'match'");
    }
    if (auto s = j.find("stage"); s != j.end()) e.stage = s->get<std::string>();
    if (auto r = j.find("response"); r != j.end()) e.response = r->get<std::string>();
    if (auto r = j.find("error"); r != j.end()) e.error = r->get<std::string>();
    if (!e.response && !e.error)
      throw ConfigError("mock entry " + std::to_string(i + 1) + " needs 'response' or 'error'");
    if (!e.match.empty() || e.stage) rules_.push_back(std::move(e));
    else queue_.push_back(std::move(e));
  }
}

std::shared_ptr<MockChatClient> MockChatClient::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open mock script " + path);
  std::vector<Json> entries;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded()) throw ConfigError(path + ":" + std::to_string(number) + ": invalid JSON");
    entries.push_back(std::move(j));
  }
  return std::make_shared<MockChatClient>(std::move(entries));
}

std::string MockChatClient::answer(const Entry& entry) {
  if (entry.error) {
    if (*entry.error == "429") throw TransportError("mock: rate limited", 429);
    throw TransportError("mock: " + *entry.error);
  }
  return *entry.response;
}

std::string MockChatClient::complete(const ChatRequest& request) {
  ++calls_;
  for (const Entry& rule : rules_) {
    if (rule.stage && *rule.stage != request.stage) continue;
    bool all = true;
    for (const std::string& needle : rule.match) {
      bool found = false;
      for (const ChatMessage& m : request.messages)
        if (m.content.find(needle) != std::string::npos) found = true;
      if (!found) all = false;
    }
    if (all) return answer(rule);
  }
  std::unique_lock<std::mutex> lock(mutex_);
  if (queue_.empty()) throw TransportError("mock: script exhausted (stage " + request.stage + ")", 500);
  Entry next = std::move(queue_.front());
  queue_.pop_front();
  lock.unlock();
  return answer(next);
}

}  // namespace hitree
