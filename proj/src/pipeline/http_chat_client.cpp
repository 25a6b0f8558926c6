// SPDX-License-Identifier: Apache-2.0
#include "httplib.h"

#include "hitree/chat_client.hpp"

namespace hitree {

HttpChatClient::HttpChatClient(ChatEndpointConfig config) : config_(std::move(config)) {
  std::string url = config_.base_url;
  while (!url.empty() && url.back() == '/') url.pop_back();
  std::size_t scheme = url.find("://");
  if (scheme == std::string::npos) throw ConfigError("base_url needs a scheme: " + config_.base_url);
  std::size_t slash = url.find('/', scheme + 3);
  origin_ = slash == std::string::npos ? url : url.substr(0, slash);
  path_ = (slash == std::string::npos ? "" : url.substr(slash)) + "/chat/completions";
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (url.compare(0, 8, "https://") == 0)
    throw ConfigError("this build has no TLS support; use an http:// base_url");
#endif
}

std::string HttpChatClient::complete(const ChatRequest& request) {
  httplib::Client client(origin_);
  client.set_connection_timeout(std::chrono::seconds(config_.timeout_seconds));
  client.set_read_timeout(std::chrono::seconds(config_.timeout_seconds));
  client.set_write_timeout(std::chrono::seconds(config_.timeout_seconds));
  httplib::Headers headers;
  if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);

  std::string body = to_json(request, config_.model_name).dump();
  auto res = client.Post(path_, headers, body, "application/json");
  if (!res) throw TransportError("request to " + origin_ + path_ + " failed: " + httplib::to_string(res.error()));
  if (res->status != 200)
    throw TransportError("endpoint answered HTTP " + std::to_string(res->status), res->status);

  Json reply = Json::parse(res->body, nullptr, false);
  if (reply.is_discarded()) throw TransportError("endpoint returned invalid JSON", res->status);
  try {
    const Json& content = reply.at("choices").at(0).at("message").at("content");
    return content.is_null() ? std::string() : content.get<std::string>();
  } catch (const Json::exception&) {
    throw TransportError("endpoint reply lacks choices[0].message.content", res->status);
  }
}

}  // namespace hitree
