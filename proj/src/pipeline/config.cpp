// SPDX-License-Identifier: Apache-2.0
#include "hitree/config.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hitree/error.hpp"
#include "hitree/table_model.hpp"

namespace hitree {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Turns the flat TOML subset into a JSON object so both syntaxes share one
// field reader.
Json toml_to_json(const std::string& text) {
  Json out = Json::object();
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == '[') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
    std::string key = trim(std::string_view(t).substr(0, eq));
    std::string value = trim(std::string_view(t).substr(eq + 1));
    if (value.empty()) throw ConfigError("config line " + std::to_string(number) + ": empty value");
    if (value[0] == '"' || value[0] == '\'') {
      char q = value[0];
      std::size_t close = value.find(q, 1);
      if (close == std::string::npos)
        throw ConfigError("config line " + std::to_string(number) + ": unterminated string");
      out[key] = value.substr(1, close - 1);
      continue;
    }
    if (std::size_t hash = value.find('#'); hash != std::string::npos) value = trim(value.substr(0, hash));
    if (value == "true" || value == "false") {
      out[key] = value == "true";
      continue;
    }
    Json num = Json::parse(value, nullptr, false);
    if (num.is_discarded() || !num.is_number())
      throw ConfigError("config line " + std::to_string(number) + ": cannot read value '" + value + "'");
    out[key] = num;
  }
  return out;
}

template <typename T>
void read(const Json& j, const char* key, T& into) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return;
  try {
    into = it->get<T>();
  } catch (const Json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

std::optional<std::string> read_string(const Json& j, const char* key) {
  std::string v;
  read(j, key, v);
  if (v.empty()) return std::nullopt;
  return v;
}

}  // namespace

AppConfig parse_config(const std::string& text, const std::string& base_dir) {
  std::string t = trim(text);
  Json j;
  if (!t.empty() && t[0] == '{') {
    j = Json::parse(t, nullptr, false);
    if (j.is_discarded()) throw ConfigError("config is not valid JSON");
  } else {
    j = toml_to_json(text);
  }
  // A nested "endpoint" object is accepted for JSON configs.
  if (auto ep = j.find("endpoint"); ep != j.end() && ep->is_object()) {
    Json merged = *ep;
    for (auto& [k, v] : j.items())
      if (k != "endpoint") merged[k] = v;
    j = std::move(merged);
  }
  if (j.contains("api_key")) throw ConfigError(std::string("api_key must come from ") + kApiKeyEnv);

  AppConfig cfg;
  read(j, "base_url", cfg.endpoint.base_url);
  read(j, "model_name", cfg.endpoint.model_name);
  read(j, "model", cfg.endpoint.model_name);
  read(j, "temperature", cfg.endpoint.temperature);
  read(j, "max_tokens", cfg.endpoint.max_tokens);
  read(j, "timeout", cfg.endpoint.timeout_seconds);
  read(j, "timeout_seconds", cfg.endpoint.timeout_seconds);
  read(j, "max_retries", cfg.endpoint.max_retries);
  read(j, "max_in_flight", cfg.max_in_flight);
  read(j, "gpt_eval", cfg.gpt_eval);
  read(j, "inject_local_tree", cfg.inject_local_tree);

  if (auto f = read_string(j, "table_format")) cfg.table_format = parse_format(*f);
  if (auto t = read_string(j, "tokenizer")) cfg.tokenizer = parse_tokenizer(*t);
  if (auto e = read_string(j, "executor")) cfg.executor = *e;
  if (auto m = read_string(j, "mock_script")) {
    std::filesystem::path p(*m);
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    cfg.mock_script = p.lexically_normal().string();
  }

  if (cfg.endpoint.max_tokens <= 0) throw ConfigError("max_tokens must be positive");
  if (cfg.endpoint.max_retries < 1) throw ConfigError("max_retries must be at least 1");
  if (cfg.endpoint.timeout_seconds <= 0) throw ConfigError("timeout must be positive");
  if (cfg.max_in_flight < 1) throw ConfigError("max_in_flight must be at least 1");
  return cfg;
}

AppConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string dir = std::filesystem::path(path).parent_path().string();
  AppConfig cfg = parse_config(ss.str(), dir.empty() ? "." : dir);
  apply_environment(cfg);
  return cfg;
}

void apply_environment(AppConfig& cfg) {
  if (const char* key = std::getenv(kApiKeyEnv); key && *key) cfg.endpoint.api_key = key;
}

}  // namespace hitree
