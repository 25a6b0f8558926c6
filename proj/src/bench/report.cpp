// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hitree/bench.hpp"
#include "hitree/metrics.hpp"

namespace hitree {

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

// Numeric ids sort by value, everything else lexically after them.
bool id_less(const std::string& a, const std::string& b) {
  bool da = all_digits(a), db = all_digits(b);
  if (da != db) return da;
  if (da && a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

struct Column {
  TaskType task;
  const char* metric;
  const char* label;
};

constexpr Column kColumns[] = {
    {TaskType::FC, "em", "FC EM"},           {TaskType::FC, "f1", "FC F1"},
    {TaskType::NR, "em", "NR EM"},           {TaskType::NR, "f1", "NR F1"},
    {TaskType::DA, "gpt_eval", "DA GPT-EVAL"}, {TaskType::DA, "rouge_l", "DA ROUGE"},
    {TaskType::CG, "pass1", "CG PASS@1"},    {TaskType::CG, "ecr", "CG ECR"},
    {TaskType::SC, "em", "SC EM"},           {TaskType::SC, "f1", "SC F1"},
};

constexpr TaskType kTasks[] = {TaskType::FC, TaskType::NR, TaskType::DA, TaskType::CG, TaskType::SC};

void add_record(TaskAggregate& agg, const std::string& status, const ScoreSet& s) {
  ++agg.items;
  if (status == "error") {
    ++agg.errors;
    return;
  }
  if (status == "skipped") {
    ++agg.skipped;
    return;
  }
  ++agg.ok;
  auto add = [&](const char* name, std::optional<double> v) {
    if (!v) return;
    MetricMean& m = agg.metrics[name];
    m.sum += *v;
    ++m.count;
  };
  add("em", s.em);
  add("f1", s.f1);
  add("rouge_l", s.rouge_l);
  add("gpt_eval", s.gpt_eval ? std::optional<double>(*s.gpt_eval / 100.0) : std::nullopt);
  add("ecr", s.ecr ? std::optional<double>(*s.ecr) : std::nullopt);
  add("pass1", s.pass1 ? std::optional<double>(*s.pass1) : std::nullopt);
}

std::string pct(std::optional<double> v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", *v * 100.0);
  return buf;
}

std::vector<std::string> metric_cells(const std::map<TaskType, TaskAggregate>& tasks) {
  std::vector<std::string> cells;
  double sum = 0.0;
  std::size_t n = 0;
  for (const Column& c : kColumns) {
    std::optional<double> v;
    if (auto t = tasks.find(c.task); t != tasks.end())
      if (auto m = t->second.metrics.find(c.metric); m != t->second.metrics.end()) v = m->second.mean();
    if (v) {
      sum += *v;
      ++n;
    }
    cells.push_back(pct(v));
  }
  cells.push_back(n ? pct(sum / static_cast<double>(n)) : "-");
  return cells;
}

using Rows = std::vector<std::vector<std::string>>;

std::string render_rows(const Rows& rows, bool markdown) {
  std::ostringstream os;
  if (markdown) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      os << '|';
      for (const std::string& c : rows[r]) os << ' ' << c << " |";
      os << '\n';
      if (r == 0) {
        os << '|';
        for (std::size_t i = 0; i < rows[0].size(); ++i) os << " --- |";
        os << '\n';
      }
    }
    return os.str();
  }
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::string line;
    for (std::size_t i = 0; i < rows[r].size(); ++i) {
      if (i) line += "  ";
      line += rows[r][i];
      if (i + 1 < rows[r].size()) line.append(width[i] - rows[r][i].size(), ' ');
    }
    os << line << '\n';
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t w : width) total += w;
      os << std::string(total + 2 * (width.size() - 1), '-') << '\n';
    }
  }
  return os.str();
}

std::vector<std::string> header(std::initializer_list<const char*> lead, bool with_metrics) {
  std::vector<std::string> h(lead.begin(), lead.end());
  if (with_metrics) {
    for (const Column& c : kColumns) h.push_back(c.label);
    h.push_back("Avg");
  }
  return h;
}

Json aggregate_json(const TaskAggregate& a) {
  Json metrics = Json::object();
  for (const auto& [name, m] : a.metrics) {
    std::optional<double> mean = m.mean();
    metrics[name] = Json{{"mean", mean ? Json(*mean) : Json(nullptr)}, {"count", m.count}};
  }
  return Json{{"items", a.items}, {"ok", a.ok}, {"errors", a.errors}, {"skipped", a.skipped},
              {"metrics", std::move(metrics)}};
}

Json tasks_json(const std::map<TaskType, TaskAggregate>& tasks) {
  Json j = Json::object();
  for (TaskType t : kTasks)
    if (auto it = tasks.find(t); it != tasks.end()) j[std::string(to_string(t))] = aggregate_json(it->second);
  return j;
}

}  // namespace

std::vector<Json> read_results(const std::string& path, bool tolerate_truncated_tail) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ReportError("cannot open results file " + path);
  std::vector<std::string> lines;
  std::string text;
  while (std::getline(in, text))
    if (text.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(text);

  std::map<std::string, Json> by_id;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    Json j = Json::parse(lines[i], nullptr, false);
    bool valid = !j.is_discarded() && j.is_object() && j.contains("id") && j["id"].is_string() &&
                 j.contains("task") && j.contains("status");
    if (!valid) {
      if (tolerate_truncated_tail && i + 1 == lines.size()) break;
      throw ReportError("results file " + path + ": record " + std::to_string(i + 1) + " is corrupt");
    }
    try {
      parse_task_type(j["task"].get<std::string>());
      if (j.contains("scores")) scores_from_json(j["scores"]);
    } catch (const std::exception& e) {
      throw ReportError("results file " + path + ": record " + std::to_string(i + 1) + ": " + e.what());
    }
    // Later records supersede earlier ones (retried items).
    std::string id = j["id"].get<std::string>();
    by_id[id] = std::move(j);
  }
  std::vector<Json> out;
  out.reserve(by_id.size());
  for (auto& [id, rec] : by_id) out.push_back(std::move(rec));
  std::sort(out.begin(), out.end(), [](const Json& a, const Json& b) {
    return id_less(a["id"].get<std::string>(), b["id"].get<std::string>());
  });
  return out;
}

RunReport aggregate(const std::vector<Json>& records) {
  RunReport report;
  std::map<std::pair<std::string, std::string>, RunGroup> groups;
  for (const Json& r : records) {
    std::string model = r.value("model", std::string());
    std::string mode = r.value("mode", std::string());
    RunGroup& g = groups[{model, mode}];
    g.model = model;
    g.mode = mode;
    TaskType task = parse_task_type(r["task"].get<std::string>());
    std::string status = r["status"].get<std::string>();
    ScoreSet s = r.contains("scores") ? scores_from_json(r["scores"]) : ScoreSet{};
    add_record(g.tasks[task], status, s);
    if (auto b = r.find("bucket"); b != r.end() && b->is_string()) {
      TokenBucket bucket = parse_token_bucket(b->get<std::string>());
      add_record(g.buckets[bucket][task], status, s);
      if (bucket == TokenBucket::Over20K) ++g.long_tables;
    }
  }
  for (auto& [key, g] : groups) report.groups.push_back(std::move(g));
  return report;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "table") return ReportFormat::Table;
  if (name == "json") return ReportFormat::Json;
  if (name == "markdown" || name == "md") return ReportFormat::Markdown;
  throw Error("unknown report format '" + std::string(name) + "' (table, json, markdown)");
}

std::string render_report(const RunReport& report, ReportFormat format) {
  if (format == ReportFormat::Json) {
    Json groups = Json::array();
    for (const RunGroup& g : report.groups) {
      Json buckets = Json::object();
      for (const auto& [b, tasks] : g.buckets) buckets[std::string(to_string(b))] = tasks_json(tasks);
      groups.push_back(Json{{"model", g.model},
                            {"mode", g.mode},
                            {"long_tables", g.long_tables},
                            {"tasks", tasks_json(g.tasks)},
                            {"token_buckets", std::move(buckets)}});
    }
    return Json{{"groups", std::move(groups)}}.dump(2) + "\n";
  }

  bool md = format == ReportFormat::Markdown;
  Rows main{header({"Model", "Mode"}, true)};
  for (const RunGroup& g : report.groups) {
    std::vector<std::string> row{g.model, g.mode};
    for (std::string& c : metric_cells(g.tasks)) row.push_back(std::move(c));
    main.push_back(std::move(row));
  }
  std::string out = render_rows(main, md);
  if (report.groups.empty()) return out;

  Rows buckets{header({"Model", "Mode", "Tokens"}, true)};
  Rows counts{header({"Model", "Mode", "Task", "Items", "OK", "Errors", "Skipped"}, false)};
  std::size_t long_tables = 0;
  for (const RunGroup& g : report.groups) {
    for (const auto& [b, tasks] : g.buckets) {
      std::vector<std::string> row{g.model, g.mode, std::string(to_string(b))};
      for (std::string& c : metric_cells(tasks)) row.push_back(std::move(c));
      buckets.push_back(std::move(row));
    }
    for (TaskType t : kTasks) {
      auto it = g.tasks.find(t);
      if (it == g.tasks.end()) continue;
      const TaskAggregate& a = it->second;
      counts.push_back({g.model, g.mode, std::string(to_string(t)), std::to_string(a.items),
                        std::to_string(a.ok), std::to_string(a.errors), std::to_string(a.skipped)});
    }
    long_tables += g.long_tables;
  }
  out += "\nBy table size\n\n" + render_rows(buckets, md);
  out += "\nItems\n\n" + render_rows(counts, md);
  out += "\nScores are percentages over items with status ok. Avg is the unweighted mean of the"
         " metric columns present in the row.\n";
  if (long_tables) out += std::to_string(long_tables) + " item(s) use tables over 20K tokens.\n";
  return out;
}

std::string report(const std::string& results_path, ReportFormat format) {
  return render_report(aggregate(read_results(results_path)), format);
}

}  // namespace hitree
