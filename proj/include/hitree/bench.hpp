// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hitree/chat_client.hpp"
#include "hitree/executor.hpp"
#include "hitree/formats.hpp"
#include "hitree/prompts.hpp"
#include "hitree/treethinker.hpp"

namespace hitree {

struct DatasetItem {
  std::string id;
  std::string table_ref;  // resolved against the dataset file's directory
  std::vector<Format> formats;
  TaskType task = TaskType::FC;
  std::string subtype;
  std::string question;
  // Answer list (FC/NR/SC) or the reference analysis text (DA, one entry).
  std::vector<std::string> gold;
  std::vector<double> reference_y;  // CG
  std::optional<std::string> sc_pair;
  // Gold for the perturbed twin; defaults to `gold`.
  std::vector<std::string> sc_gold;
};

// JSONL, one item per line; blank lines ignored. Throws LoadError naming the
// 1-based line of the first bad item.
std::vector<DatasetItem> load_dataset(const std::string& path);

std::map<TaskType, std::size_t> task_census(const std::vector<DatasetItem>& items);

struct BenchOptions {
  Mode mode = Mode::Full;
  std::string model_name;
  PipelineOptions pipeline;  // task is set per item
  Tokenizer tokenizer = Tokenizer::Byte4;
  int max_in_flight = 4;
  bool gpt_eval = false;
  bool skip_over_20k = false;
  // Stop after this many newly completed items (simulates an interruption).
  std::optional<std::size_t> stop_after;
};

struct MetricMean {
  double sum = 0.0;
  std::size_t count = 0;

  std::optional<double> mean() const {
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
  }
};

struct TaskAggregate {
  std::size_t items = 0;
  std::size_t ok = 0;
  std::size_t errors = 0;
  std::size_t skipped = 0;
  // em, f1, gpt_eval, rouge_l, pass1, ecr; all on a 0..1 scale.
  std::map<std::string, MetricMean> metrics;
};

struct RunGroup {
  std::string model;
  std::string mode;
  std::map<TaskType, TaskAggregate> tasks;
  std::map<TokenBucket, std::map<TaskType, TaskAggregate>> buckets;
  std::size_t long_tables = 0;
};

struct RunReport {
  // One group per (model, mode) present in the results.
  std::vector<RunGroup> groups;
};

// Result file records, sorted by id. `tolerate_truncated_tail` drops an
// unparseable final line (left by an interrupted writer) instead of
// throwing ReportError.
std::vector<Json> read_results(const std::string& path, bool tolerate_truncated_tail = false);

RunReport aggregate(const std::vector<Json>& records);

struct BenchSummary {
  std::size_t resumed = 0;  // ids already present in the results file
  std::size_t completed = 0;
  std::size_t errors = 0;
  std::size_t skipped = 0;
  bool interrupted = false;
  RunReport report;
};

// Runs every item not yet in `results_path`, appending one JSON record per
// item, then aggregates the whole file.
BenchSummary run_benchmark(const std::vector<DatasetItem>& items, ChatClient& client,
                           ExecutorContract* executor, const BenchOptions& options,
                           const std::string& results_path);

enum class ReportFormat { Table, Json, Markdown };

ReportFormat parse_report_format(std::string_view name);

std::string render_report(const RunReport& report, ReportFormat format);

// read_results + aggregate + render_report. Throws ReportError.
std::string report(const std::string& results_path, ReportFormat format);

}  // namespace hitree
