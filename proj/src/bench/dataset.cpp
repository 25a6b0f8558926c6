// SPDX-License-Identifier: Apache-2.0
#include <filesystem>
#include <fstream>

#include "hitree/bench.hpp"

namespace hitree {

namespace {

std::vector<std::string> string_list(const Json& j, std::size_t line, const char* key) {
  std::vector<std::string> out;
  if (j.is_string()) {
    out.push_back(j.get<std::string>());
  } else if (j.is_array()) {
    for (const Json& v : j) {
      if (v.is_string()) out.push_back(v.get<std::string>());
      else if (v.is_number()) out.push_back(v.dump());
      else throw LoadError(line, std::string("'") + key + "' entries must be strings");
    }
  } else if (j.is_number()) {
    out.push_back(j.dump());
  } else {
    throw LoadError(line, std::string("'") + key + "' must be a string or a list");
  }
  return out;
}

std::string required_string(const Json& j, std::size_t line, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string() || it->get<std::string>().empty())
    throw LoadError(line, std::string("missing or empty '") + key + "'");
  return it->get<std::string>();
}

std::string resolve(const std::filesystem::path& base, const std::string& ref) {
  std::filesystem::path p(ref);
  if (p.is_relative()) p = base / p;
  return p.lexically_normal().string();
}

DatasetItem parse_item(const Json& j, std::size_t line, const std::filesystem::path& base) {
  if (!j.is_object()) throw LoadError(line, "item is not a JSON object");
  DatasetItem item;
  if (auto id = j.find("id"); id != j.end() && !id->is_null())
    item.id = id->is_string() ? id->get<std::string>() : id->dump();
  else
    item.id = std::to_string(line);

  try {
    item.task = parse_task_type(required_string(j, line, "task"));
  } catch (const LoadError&) {
    throw;
  } catch (const Error& e) {
    throw LoadError(line, e.what());
  }
  item.table_ref = resolve(base, required_string(j, line, "table_ref"));
  item.question = required_string(j, line, "question");
  if (auto s = j.find("subtype"); s != j.end() && s->is_string()) item.subtype = s->get<std::string>();

  if (auto f = j.find("formats"); f != j.end()) {
    for (const std::string& name : string_list(*f, line, "formats")) {
      try {
        item.formats.push_back(parse_format(name));
      } catch (const Error& e) {
        throw LoadError(line, e.what());
      }
    }
  }

  if (item.task == TaskType::CG) {
    auto y = j.find("reference_y");
    if (y == j.end() || !y->is_array() || y->empty()) throw LoadError(line, "CG items need a non-empty 'reference_y'");
    for (const Json& v : *y) {
      if (!v.is_number()) throw LoadError(line, "'reference_y' must hold numbers");
      item.reference_y.push_back(v.get<double>());
    }
    if (auto g = j.find("gold"); g != j.end()) item.gold = string_list(*g, line, "gold");
  } else {
    auto g = j.find("gold");
    if (g == j.end()) throw LoadError(line, "missing 'gold'");
    item.gold = string_list(*g, line, "gold");
    if (item.gold.empty()) throw LoadError(line, "'gold' is empty");
  }

  if (item.task == TaskType::SC) {
    item.sc_pair = resolve(base, required_string(j, line, "sc_pair"));
    if (auto g = j.find("sc_gold"); g != j.end()) item.sc_gold = string_list(*g, line, "sc_gold");
    else item.sc_gold = item.gold;
  }
  return item;
}

}  // namespace

std::vector<DatasetItem> load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError(0, "cannot open dataset " + path);
  std::filesystem::path base = std::filesystem::path(path).parent_path();
  std::vector<DatasetItem> items;
  std::map<std::string, std::size_t> seen;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw LoadError(line, "invalid JSON");
    DatasetItem item = parse_item(j, line, base);
    auto [it, fresh] = seen.emplace(item.id, line);
    if (!fresh) throw LoadError(line, "duplicate id '" + item.id + "' (first on line " + std::to_string(it->second) + ")");
    items.push_back(std::move(item));
  }
  return items;
}

std::map<TaskType, std::size_t> task_census(const std::vector<DatasetItem>& items) {
  std::map<TaskType, std::size_t> census;
  for (const DatasetItem& item : items) ++census[item.task];
  return census;
}

}  // namespace hitree
