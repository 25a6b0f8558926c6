// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include "hitree/formats.hpp"

namespace hitree {

inline constexpr const char* kApiKeyEnv = "HITREE_API_KEY";

struct ChatEndpointConfig {
  std::string base_url = "https://api.openai.com/v1";
  std::string model_name = "gpt-4o";
  std::string api_key;  // read from the environment, never from the file
  double temperature = 0.0;
  int max_tokens = 4096;
  int timeout_seconds = 120;
  // Total attempts per request, first one included.
  int max_retries = 3;
};

struct AppConfig {
  ChatEndpointConfig endpoint;
  int max_in_flight = 4;
  std::optional<std::string> mock_script;
  // Chart executor command line, e.g. "python3 tools/chart_executor.py".
  std::optional<std::string> executor;
  bool gpt_eval = false;
  Format table_format = Format::LaTeX;
  Tokenizer tokenizer = Tokenizer::Byte4;
  bool inject_local_tree = false;
};

// JSON when the file starts with '{', otherwise a flat TOML subset
// (key = value, # comments, [section] headers ignored). Relative paths in
// mock_script are resolved against the config file's directory. Throws
// ConfigError.
AppConfig load_config(const std::string& path);
AppConfig parse_config(const std::string& text, const std::string& base_dir = ".");

// Fills endpoint.api_key from HITREE_API_KEY if set.
void apply_environment(AppConfig& cfg);

}  // namespace hitree
