// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hitree/error.hpp"

namespace hitree {

// The executor cannot run at all (missing binary, broken protocol). Scores
// that depend on it are skipped rather than zeroed.
class ExecutorUnavailableError : public Error {
 public:
  using Error::Error;
};

struct ExecutionResult {
  bool ok = false;
  std::vector<double> y_values;
  std::string stderr_text;
};

// Runs chart code out of process. Wire format: code on stdin, one JSON line
// {"ok":bool,"y_values":[numbers],"stderr":string} on stdout.
class ExecutorContract {
 public:
  virtual ~ExecutorContract() = default;

  // Throws ExecutorUnavailableError when no verdict can be obtained.
  virtual ExecutionResult run(std::string_view code) = 0;

  // Executors that are not concurrent-safe are called one at a time.
  virtual bool concurrent_safe() const { return false; }

  std::mutex& serial_lock() { return serial_; }

 private:
  std::mutex serial_;
};

// Throws ExecutorUnavailableError on anything other than one well-formed
// response object.
ExecutionResult parse_executor_response(std::string_view stdout_text);

class SubprocessExecutor : public ExecutorContract {
 public:
  explicit SubprocessExecutor(std::vector<std::string> argv,
                              std::chrono::milliseconds timeout = std::chrono::seconds(60),
                              bool concurrent_safe = true);

  ExecutionResult run(std::string_view code) override;
  bool concurrent_safe() const override { return concurrent_safe_; }

 private:
  std::vector<std::string> argv_;
  std::chrono::milliseconds timeout_;
  bool concurrent_safe_;
};

// Splits a command line on whitespace; quotes are not interpreted.
std::vector<std::string> split_command(std::string_view command);

struct ChartScore {
  std::optional<int> ecr;
  std::optional<int> pass1;
  std::optional<std::string> skipped;
};

// Multiset equality within relative tolerance.
bool y_values_match(std::vector<double> got, std::vector<double> want, double rel_tol = 1e-6);

// Skipped (with reason) when `executor` is null or unavailable.
ChartScore score_chart(std::string_view code, const std::vector<double>& reference_y,
                       ExecutorContract* executor);

}  // namespace hitree
