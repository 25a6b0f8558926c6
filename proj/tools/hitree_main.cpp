// SPDX-License-Identifier: Apache-2.0
// hitree command line. Exit codes: 0 ok, 1 usage or processing error,
// 2 load error (unreadable table, dataset, config or results file).
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hitree/bench.hpp"
#include "hitree/config.hpp"
#include "hitree/executor.hpp"
#include "hitree/metrics.hpp"
#include "hitree/structure.hpp"
#include "hitree/tree_builder.hpp"
#include "hitree/treethinker.hpp"

using namespace hitree;

namespace {

struct LoadFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadFailure("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SourceDocument load(const std::string& path, const std::string& format) {
  try {
    if (format.empty() || format == "auto") return load_document(path);
    return load_document(path, parse_format(format));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw LoadFailure(e.what());
  }
}

ParseResult load_and_parse(const std::string& path, const std::string& format) {
  ParseResult r = parse_document(load(path, format));
  for (const std::string& w : r.warnings) std::cerr << "warning: " << w << '\n';
  return r;
}

std::string render_report_text(const StructureReport& r) {
  std::ostringstream os;
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  os << "header rows:            " << r.header_row_count << '\n'
     << "header cols:            " << r.header_col_count << '\n'
     << "hierarchical col header " << yn(r.flags.hier_col_header) << '\n'
     << "hierarchical row header " << yn(r.flags.hier_row_header) << '\n'
     << "nested sub-tables       " << yn(r.flags.nested_sub_tables) << '\n'
     << "implicit multi-table    " << yn(r.flags.implicit_multi_table) << '\n'
     << "miscellany              " << yn(r.flags.miscellany) << '\n';
  char score[32];
  std::snprintf(score, sizeof score, "%.2f", r.complexity_score);
  os << "complexity score:       " << score << '\n'
     << "token bucket:           " << to_string(r.token_bucket) << '\n';
  return os.str();
}

std::vector<std::string> read_gold_list(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  std::vector<std::string> out;
  if (!j.is_discarded() && j.is_array()) {
    for (const Json& v : j) out.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    return out;
  }
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    std::size_t e = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(b, e - b + 1));
  }
  return out;
}

std::unique_ptr<ExecutorContract> make_executor(const std::optional<std::string>& command) {
  if (!command || command->empty()) return nullptr;
  return std::make_unique<SubprocessExecutor>(split_command(*command));
}

AppConfig config_from(const std::string& path) {
  if (path.empty()) {
    AppConfig cfg;
    apply_environment(cfg);
    return cfg;
  }
  try {
    return load_config(path);
  } catch (const ConfigError& e) {
    throw LoadFailure(e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hierarchical table toolkit"};
  app.require_subcommand(1);

  std::string file, format, to, kind, keywords, question, task = "fc", mode = "full";
  std::string config_path, dataset, out_path, pred_path, gold_path, report_format = "table";
  std::string executor_cmd, name;
  std::vector<std::string> slots;
  bool dump_json = false, flatten = false, json_out = false, ascii = false, skip_long = false;
  bool list = false, inject = false;
  std::uint64_t seed = 0;
  double theta = 0.5;
  std::size_t stop_after = 0;

  auto* parse_cmd = app.add_subcommand("parse", "parse a table and print its grid");
  parse_cmd->add_option("file", file)->required();
  parse_cmd->add_option("--format", format, "auto|latex|html|md|csv")->default_val("auto");
  parse_cmd->add_flag("--dump-json", dump_json, "print the canonical grid JSON");

  auto* convert_cmd = app.add_subcommand("convert", "re-serialize a table in another format");
  convert_cmd->add_option("file", file)->required();
  convert_cmd->add_option("--format", format)->default_val("auto");
  convert_cmd->add_option("--to", to)->required();
  convert_cmd->add_flag("--flatten", flatten, "copy merged content into every covered cell");

  auto* analyze_cmd = app.add_subcommand("analyze", "detect complex structures");
  analyze_cmd->add_option("file", file)->required();
  analyze_cmd->add_option("--format", format)->default_val("auto");
  analyze_cmd->add_flag("--json", json_out);

  auto* perturb_cmd = app.add_subcommand("perturb", "rearrange a table's structure");
  perturb_cmd->add_option("file", file)->required();
  perturb_cmd->add_option("--format", format)->default_val("auto");
  perturb_cmd->add_option("--kind", kind, "swap-sibling-blocks|transpose-header-levels|reorder-sub-tables")
      ->required();
  perturb_cmd->add_option("--seed", seed)->default_val(0);
  perturb_cmd->add_option("--to", to)->default_val("latex");

  auto* tree_cmd = app.add_subcommand("tree", "build the header tree");
  tree_cmd->add_option("file", file)->required();
  tree_cmd->add_option("--format", format)->default_val("auto");
  auto* tree_json = tree_cmd->add_flag("--json", json_out);
  tree_cmd->add_flag("--ascii", ascii)->excludes(tree_json);

  auto* align_cmd = app.add_subcommand("align", "select header nodes matching keywords");
  align_cmd->add_option("file", file)->required();
  align_cmd->add_option("--format", format)->default_val("auto");
  align_cmd->add_option("--keywords", keywords)->required();
  align_cmd->add_option("--theta", theta)->default_val(0.5)->check(CLI::Range(0.0, 1.0));

  auto* subtable_cmd = app.add_subcommand("subtable", "cut the table down to matching headers");
  subtable_cmd->add_option("file", file)->required();
  subtable_cmd->add_option("--format", format)->default_val("auto");
  subtable_cmd->add_option("--keywords", keywords)->required();
  subtable_cmd->add_option("--theta", theta)->default_val(0.5)->check(CLI::Range(0.0, 1.0));
  subtable_cmd->add_option("--to", to)->default_val("latex");

  auto* score_cmd = app.add_subcommand("score", "score one model response");
  score_cmd->add_option("--pred", pred_path, "raw model response")->required();
  score_cmd->add_option("--gold", gold_path, "JSON list, one answer per line, or DA reference text")
      ->required();
  score_cmd->add_option("--task", task)->required();
  score_cmd->add_option("--executor", executor_cmd, "chart executor command (cg)");

  auto* ask_cmd = app.add_subcommand("ask", "run the two-round pipeline on one question");
  ask_cmd->add_option("file", file)->required();
  ask_cmd->add_option("--format", format)->default_val("auto");
  ask_cmd->add_option("--question", question)->required();
  ask_cmd->add_option("--task", task)->default_val("fc");
  ask_cmd->add_option("--mode", mode)->default_val("full");
  ask_cmd->add_option("--config", config_path);
  ask_cmd->add_flag("--inject-local-tree", inject);

  auto* bench_cmd = app.add_subcommand("bench", "run a dataset and append results");
  bench_cmd->add_option("--dataset", dataset)->required();
  bench_cmd->add_option("--config", config_path);
  bench_cmd->add_option("--mode", mode)->default_val("full");
  bench_cmd->add_option("--out", out_path)->required();
  bench_cmd->add_flag("--skip-over-20k", skip_long);
  bench_cmd->add_flag("--inject-local-tree", inject);
  bench_cmd->add_option("--stop-after", stop_after, "stop after N new items");

  auto* report_cmd = app.add_subcommand("report", "summarize a results file");
  report_cmd->add_option("file", file)->required();
  report_cmd->add_option("--format", report_format)->default_val("table");

  auto* prompt_cmd = app.add_subcommand("prompt", "render a prompt template");
  prompt_cmd->add_option("name", name);
  prompt_cmd->add_option("--slot", slots, "name=value, or name=@file");
  prompt_cmd->add_flag("--list", list);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*parse_cmd) {
      Grid g = load_and_parse(file, format).grid;
      if (dump_json) std::cout << to_json(g).dump(2) << '\n';
      else std::cout << serialize_markdown(g, true);
      return 0;
    }
    if (*convert_cmd) {
      Grid g = load_and_parse(file, format).grid;
      std::cout << serialize(g, parse_format(to), SerializeOptions{flatten});
      return 0;
    }
    if (*analyze_cmd) {
      Grid g = load_and_parse(file, format).grid;
      StructureReport r = classify_structures(g, detect_header_region(g));
      if (json_out) std::cout << to_json(r).dump(2) << '\n';
      else std::cout << render_report_text(r);
      return 0;
    }
    if (*perturb_cmd) {
      Grid g = load_and_parse(file, format).grid;
      Grid p = perturb_structure(g, parse_perturbation_kind(kind), seed);
      Format f = parse_format(to);
      std::cout << serialize(p, f, SerializeOptions{f == Format::Markdown || f == Format::CSV});
      return 0;
    }
    if (*tree_cmd) {
      Grid g = load_and_parse(file, format).grid;
      TupleList tuples = extract_tuples(g, detect_header_region(g));
      HeaderTree tree = build_tree(tuples);
      if (json_out) std::cout << Json{{"tuples", to_json(tuples)}, {"tree", to_json(tree)}}.dump(2) << '\n';
      else if (ascii) std::cout << render_ascii(tree);
      else std::cout << render_tuples(tuples) << render_ascii(tree);
      return 0;
    }
    if (*align_cmd || *subtable_cmd) {
      Grid g = load_and_parse(file, format).grid;
      HeaderRegion region = detect_header_region(g);
      HeaderTree tree = build_tree(extract_tuples(g, region));
      AlignConfig cfg;
      cfg.theta = theta;
      KeywordHeaderTree kht = align(tree, split_keywords(keywords), cfg);
      if (*align_cmd) {
        std::cout << to_json(kht).dump(2) << '\n';
      } else {
        Format f = parse_format(to);
        std::cout << serialize(extract_subtable(g, region, kht), f,
                               SerializeOptions{f == Format::Markdown || f == Format::CSV});
      }
      return 0;
    }
    if (*score_cmd) {
      TaskType t = parse_task_type(task);
      std::string pred = read_file(pred_path);
      std::string gold = read_file(gold_path);
      FinalAnswer fa = extract_final_answer(pred);
      ScoreSet s;
      if (t == TaskType::DA) {
        std::string joined;
        for (std::size_t i = 0; i < fa.answers.size(); ++i) joined += (i ? ", " : "") + fa.answers[i];
        s.rouge_l = rouge_l(joined, gold);
      } else if (t == TaskType::CG) {
        Json ref = Json::parse(gold, nullptr, false);
        if (ref.is_discarded() || !ref.is_array()) throw LoadFailure("cg gold must be a JSON list of numbers");
        std::vector<double> y = ref.get<std::vector<double>>();
        std::optional<std::string> code = extract_code_block(pred);
        auto exec = make_executor(executor_cmd.empty() ? std::nullopt : std::optional<std::string>(executor_cmd));
        if (!code) {
          s.ecr = 0;
          s.pass1 = 0;
        } else {
          ChartScore cs = score_chart(*code, y, exec.get());
          s.ecr = cs.ecr;
          s.pass1 = cs.pass1;
          s.skipped = cs.skipped;
        }
      } else {
        std::vector<std::string> g = read_gold_list(gold);
        s.em = exact_match(fa.answers, g);
        s.f1 = token_f1(fa.answers, g);
      }
      Json j{{"answer", fa.answers}, {"fallback", fa.fallback}, {"scores", to_json(s)}};
      std::cout << j.dump(2) << '\n';
      return 0;
    }
    if (*ask_cmd) {
      AppConfig cfg = config_from(config_path);
      SourceDocument doc = load(file, format);
      auto client = make_chat_client(cfg);
      PipelineOptions po{parse_task_type(task), cfg.table_format, cfg.endpoint.temperature,
                         cfg.endpoint.max_tokens, inject || cfg.inject_local_tree};
      try {
        PipelineTranscript t = run_treethinker(doc, question, *client, po, parse_mode(mode));
        std::cout << to_json(t).dump(2) << '\n';
      } catch (const PipelineTransportError& e) {
        std::cout << to_json(e.transcript()).dump(2) << '\n';
        throw;
      }
      return 0;
    }
    if (*bench_cmd) {
      AppConfig cfg = config_from(config_path);
      std::vector<DatasetItem> items;
      try {
        items = load_dataset(dataset);
      } catch (const LoadError& e) {
        throw LoadFailure(e.what());
      }
      auto client = make_chat_client(cfg);
      auto exec = make_executor(cfg.executor);
      BenchOptions bo;
      bo.mode = parse_mode(mode);
      bo.model_name = cfg.mock_script ? "mock" : cfg.endpoint.model_name;
      bo.pipeline = PipelineOptions{TaskType::FC, cfg.table_format, cfg.endpoint.temperature,
                                    cfg.endpoint.max_tokens, inject || cfg.inject_local_tree};
      bo.tokenizer = cfg.tokenizer;
      bo.max_in_flight = cfg.max_in_flight;
      bo.gpt_eval = cfg.gpt_eval;
      bo.skip_over_20k = skip_long;
      if (stop_after) bo.stop_after = stop_after;
      BenchSummary s = run_benchmark(items, *client, exec.get(), bo, out_path);
      std::cerr << "completed " << s.completed << ", resumed " << s.resumed << ", errors " << s.errors
                << ", skipped " << s.skipped << (s.interrupted ? " (stopped early)" : "") << '\n';
      std::cout << render_report(s.report, ReportFormat::Table);
      return 0;
    }
    if (*report_cmd) {
      ReportFormat f = parse_report_format(report_format);
      try {
        std::cout << report(file, f);
      } catch (const ReportError& e) {
        throw LoadFailure(e.what());
      }
      return 0;
    }
    if (*prompt_cmd) {
      if (list || name.empty()) {
        for (std::string_view n : prompt_names()) std::cout << n << '\n';
        return 0;
      }
      SlotValues values;
      for (const std::string& s : slots) {
        std::size_t eq = s.find('=');
        if (eq == std::string::npos) throw Error("--slot expects name=value, got '" + s + "'");
        std::string v = s.substr(eq + 1);
        if (!v.empty() && v[0] == '@') v = read_file(v.substr(1));
        values[s.substr(0, eq)] = v;
      }
      std::cout << render_prompt(prompt_template(name), values);
      return 0;
    }
  } catch (const LoadFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
