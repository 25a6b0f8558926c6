// SPDX-License-Identifier: Apache-2.0
#include <atomic>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "hitree/bench.hpp"
#include "hitree/gpt_eval.hpp"
#include "hitree/metrics.hpp"

namespace hitree {

namespace {

std::string utc_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// Drops a half-written last line so appends start on a fresh line. Returns
// the ids of records that finished without error.
std::set<std::string> prepare_results_file(const std::string& path) {
  std::set<std::string> done;
  if (!std::filesystem::exists(path)) return done;
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  in.close();
  std::string text = ss.str();

  std::string kept;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    bool terminated = nl != std::string::npos;
    std::string line = text.substr(pos, terminated ? nl - pos : std::string::npos);
    pos = terminated ? nl + 1 : text.size();
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      if (!terminated || pos >= text.size()) break;  // truncated tail
      throw ReportError("results file " + path + " has a corrupt record before its last line");
    }
    kept += line;
    kept += '\n';
    std::string id = j.value("id", std::string());
    // Errored items are retried on resume; a later record for the same id
    // replaces the earlier one when reading.
    if (j.value("status", std::string()) == "error") done.erase(id);
    else done.insert(id);
  }
  if (kept.size() != text.size()) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << kept;
  }
  return done;
}

class ItemRunner {
 public:
  ItemRunner(ChatClient& client, ExecutorContract* executor, const BenchOptions& options)
      : client_(client), executor_(executor), options_(options) {}

  Json run(const DatasetItem& item) {
    Json rec{{"id", item.id},
             {"task", to_string(item.task)},
             {"subtype", item.subtype},
             {"mode", to_string(options_.mode)},
             {"model", options_.model_name},
             {"started_at", utc_now()}};
    ScoreSet scores;
    Json transcripts = Json::array();
    std::string status = "ok";
    try {
      SourceDocument doc = load_table(item, item.table_ref);
      Grid grid = parse(doc);
      std::size_t tokens = count_tokens(serialize_latex(grid), options_.tokenizer);
      TokenBucket bucket = token_bucket(tokens);
      rec["tokens"] = tokens;
      rec["bucket"] = to_string(bucket);
      rec["long_table"] = bucket == TokenBucket::Over20K;
      if (options_.skip_over_20k && bucket == TokenBucket::Over20K) {
        scores.skipped = "table over 20K tokens";
        status = "skipped";
      } else {
        status = score_item(item, doc, rec, scores, transcripts);
      }
    } catch (const PipelineTransportError& e) {
      transcripts.push_back(to_json(e.transcript()));
      status = "error";
      rec["error"] = std::string("transport: ") + e.what();
    } catch (const std::exception& e) {
      status = "error";
      rec["error"] = e.what();
    }
    if (!rec.contains("bucket")) {
      rec["tokens"] = nullptr;
      rec["bucket"] = nullptr;
      rec["long_table"] = false;
    }
    rec["status"] = status;
    if (!rec.contains("error")) rec["error"] = nullptr;
    rec["scores"] = to_json(scores);
    rec["transcript"] = std::move(transcripts);
    rec["finished_at"] = utc_now();
    return rec;
  }

 private:
  SourceDocument load_table(const DatasetItem& item, const std::string& ref) {
    // Prefer the configured text format when the item lists it.
    std::optional<Format> want;
    for (Format f : item.formats)
      if (f == options_.pipeline.table_format) want = f;
    return load_document(ref, want);
  }

  PipelineTranscript ask(const DatasetItem& item, const SourceDocument& doc) {
    PipelineOptions po = options_.pipeline;
    po.task = item.task;
    return run_treethinker(doc, item.question, client_, po, options_.mode);
  }

  std::string score_item(const DatasetItem& item, const SourceDocument& doc, Json& rec,
                         ScoreSet& scores, Json& transcripts) {
    PipelineTranscript t = ask(item, doc);
    transcripts.push_back(to_json(t));
    rec["answer"] = t.final_answer;
    rec["fallback"] = t.answer_fallback;

    switch (item.task) {
      case TaskType::FC:
      case TaskType::NR:
        scores.em = exact_match(t.final_answer, item.gold);
        scores.f1 = token_f1(t.final_answer, item.gold);
        return "ok";
      case TaskType::SC: {
        SourceDocument twin = load_table(item, *item.sc_pair);
        PipelineTranscript t2 = ask(item, twin);
        transcripts.push_back(to_json(t2));
        rec["sc_answer"] = t2.final_answer;
        int em1 = exact_match(t.final_answer, item.gold);
        int em2 = exact_match(t2.final_answer, item.sc_gold);
        scores.em = (em1 == 1 && em2 == 1) ? 1.0 : 0.0;
        scores.f1 = (token_f1(t.final_answer, item.gold) + token_f1(t2.final_answer, item.sc_gold)) / 2.0;
        return "ok";
      }
      case TaskType::DA: {
        std::string pred = join(t.final_answer, ", ");
        std::string gold = join(item.gold, " ");
        scores.rouge_l = rouge_l(pred, gold);
        if (options_.gpt_eval) judge(item, pred, gold, rec, scores);
        return "ok";
      }
      case TaskType::CG: {
        if (!t.code) {
          scores.ecr = 0;
          scores.pass1 = 0;
          rec["error"] = "no chart code in the response";
          return "ok";
        }
        ChartScore cs = score_chart(*t.code, item.reference_y, executor_);
        if (cs.skipped) {
          scores.skipped = cs.skipped;
          return "skipped";
        }
        scores.ecr = cs.ecr;
        scores.pass1 = cs.pass1;
        return "ok";
      }
    }
    return "ok";
  }

  void judge(const DatasetItem& item, const std::string& pred, const std::string& gold, Json& rec,
             ScoreSet& scores) {
    ChatRequest req{"gpt_eval",
                    {ChatMessage{"user", build_gpt_eval_prompt(item.question, gold, pred)}},
                    options_.pipeline.temperature,
                    options_.pipeline.max_tokens};
    try {
      std::string reply = client_.complete(req);
      rec["gpt_eval_response"] = reply;
      scores.gpt_eval = parse_gpt_eval(reply);
    } catch (const TransportError& e) {
      rec["gpt_eval_error"] = std::string("transport: ") + e.what();
    } catch (const UnparseableEvalError& e) {
      rec["gpt_eval_error"] = e.what();
    }
  }

  ChatClient& client_;
  ExecutorContract* executor_;
  const BenchOptions& options_;
};

}  // namespace

BenchSummary run_benchmark(const std::vector<DatasetItem>& items, ChatClient& client,
                           ExecutorContract* executor, const BenchOptions& options,
                           const std::string& results_path) {
  if (items.empty()) throw LoadError(0, "dataset is empty");
  BenchSummary summary;
  std::set<std::string> done = prepare_results_file(results_path);

  std::vector<const DatasetItem*> todo;
  for (const DatasetItem& item : items) {
    if (done.count(item.id)) ++summary.resumed;
    else todo.push_back(&item);
  }

  std::ofstream out(results_path, std::ios::binary | std::ios::app);
  if (!out) throw ReportError("cannot write results file " + results_path);

  std::mutex mu;  // guards `out`, `next`, and the summary counters
  std::size_t next = 0;
  std::size_t claimed = 0;
  ItemRunner runner(client, executor, options);

  auto worker = [&] {
    for (;;) {
      const DatasetItem* item = nullptr;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next >= todo.size()) return;
        if (options.stop_after && claimed >= *options.stop_after) {
          summary.interrupted = true;
          return;
        }
        item = todo[next++];
        ++claimed;
      }
      Json rec = runner.run(*item);
      std::lock_guard<std::mutex> lock(mu);
      out << rec.dump() << '\n';
      out.flush();
      ++summary.completed;
      const std::string status = rec["status"].get<std::string>();
      if (status == "error") ++summary.errors;
      if (status == "skipped") ++summary.skipped;
    }
  };

  std::size_t n_threads = std::min<std::size_t>(std::max(1, options.max_in_flight), todo.size());
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  if (n_threads > 0) worker();
  for (std::thread& th : pool) th.join();
  out.close();

  summary.report = aggregate(read_results(results_path));
  return summary;
}

}  // namespace hitree
