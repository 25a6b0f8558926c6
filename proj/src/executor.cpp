// SPDX-License-Identifier: Apache-2.0
#include "hitree/executor.hpp"

#include <fcntl.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "hitree/table_model.hpp"

extern char** environ;

namespace hitree {

ExecutionResult parse_executor_response(std::string_view stdout_text) {
  // The last non-empty line is the verdict; anything the code printed
  // before it is ignored.
  std::string text(stdout_text);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
    text.pop_back();
  std::size_t nl = text.rfind('\n');
  std::string line = nl == std::string::npos ? text : text.substr(nl + 1);
  Json j = Json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw ExecutorUnavailableError("executor response is not a JSON object");
  auto ok = j.find("ok");
  auto ys = j.find("y_values");
  if (ok == j.end() || !ok->is_boolean())
    throw ExecutorUnavailableError("executor response lacks boolean 'ok'");
  ExecutionResult result;
  result.ok = ok->get<bool>();
  if (ys != j.end() && !ys->is_null()) {
    if (!ys->is_array()) throw ExecutorUnavailableError("executor 'y_values' is not an array");
    for (const Json& v : *ys) {
      if (!v.is_number()) throw ExecutorUnavailableError("executor 'y_values' holds a non-number");
      result.y_values.push_back(v.get<double>());
    }
  } else if (result.ok) {
    throw ExecutorUnavailableError("executor response lacks 'y_values'");
  }
  if (auto err = j.find("stderr"); err != j.end() && err->is_string())
    result.stderr_text = err->get<std::string>();
  return result;
}

SubprocessExecutor::SubprocessExecutor(std::vector<std::string> argv,
                                       std::chrono::milliseconds timeout, bool concurrent_safe)
    : argv_(std::move(argv)), timeout_(timeout), concurrent_safe_(concurrent_safe) {
  if (argv_.empty()) throw ExecutorUnavailableError("empty executor command");
}

namespace {

// Temp file removed on scope exit.
struct TempFile {
  std::filesystem::path path;

  explicit TempFile(const char* tag) {
    std::string pattern = (std::filesystem::temp_directory_path() / ("hitree-" + std::string(tag) + "-XXXXXX")).string();
    int fd = ::mkstemp(pattern.data());
    if (fd < 0) throw ExecutorUnavailableError("cannot create temp file: " + std::string(std::strerror(errno)));
    ::close(fd);
    path = pattern;
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
};

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

ExecutionResult SubprocessExecutor::run(std::string_view code) {
  TempFile input("code");
  TempFile output("out");
  {
    std::ofstream f(input.path, std::ios::binary);
    f.write(code.data(), static_cast<std::streamsize>(code.size()));
  }

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, 0, input.path.c_str(), O_RDONLY, 0);
  posix_spawn_file_actions_addopen(&actions, 1, output.path.c_str(), O_WRONLY | O_TRUNC, 0600);
  posix_spawn_file_actions_addopen(&actions, 2, "/dev/null", O_WRONLY, 0);

  std::vector<char*> args;
  for (std::string& a : argv_) args.push_back(a.data());
  args.push_back(nullptr);

  pid_t pid = 0;
  int rc = ::posix_spawnp(&pid, args[0], &actions, nullptr, args.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0)
    throw ExecutorUnavailableError("cannot start executor '" + argv_[0] + "': " + std::strerror(rc));

  auto deadline = std::chrono::steady_clock::now() + timeout_;
  int status = 0;
  for (;;) {
    pid_t done = ::waitpid(pid, &status, WNOHANG);
    if (done == pid) break;
    if (done < 0 && errno != EINTR) throw ExecutorUnavailableError("waitpid failed");
    if (std::chrono::steady_clock::now() >= deadline) {
      ::kill(pid, SIGKILL);
      ::waitpid(pid, &status, 0);
      ExecutionResult timed_out;
      timed_out.stderr_text = "timed out";
      return timed_out;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  // Exit status 127 from posix_spawnp means the program was not found on
  // some libcs.
  if (WIFEXITED(status) && WEXITSTATUS(status) == 127)
    throw ExecutorUnavailableError("executor '" + argv_[0] + "' not found");
  return parse_executor_response(slurp(output.path));
}

std::vector<std::string> split_command(std::string_view command) {
  std::vector<std::string> out;
  std::istringstream in{std::string(command)};
  std::string part;
  while (in >> part) out.push_back(part);
  return out;
}

bool y_values_match(std::vector<double> got, std::vector<double> want, double rel_tol) {
  if (got.size() != want.size()) return false;
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  for (std::size_t i = 0; i < got.size(); ++i) {
    double scale = std::max(std::fabs(got[i]), std::fabs(want[i]));
    if (std::fabs(got[i] - want[i]) > rel_tol * scale) return false;
  }
  return true;
}

ChartScore score_chart(std::string_view code, const std::vector<double>& reference_y,
                       ExecutorContract* executor) {
  ChartScore score;
  if (!executor) {
    score.skipped = "no chart executor configured";
    return score;
  }
  ExecutionResult result;
  try {
    if (executor->concurrent_safe()) {
      result = executor->run(code);
    } else {
      std::lock_guard<std::mutex> lock(executor->serial_lock());
      result = executor->run(code);
    }
  } catch (const ExecutorUnavailableError& e) {
    score.skipped = e.what();
    return score;
  }
  score.ecr = result.ok ? 1 : 0;
  score.pass1 = result.ok && y_values_match(result.y_values, reference_y) ? 1 : 0;
  return score;
}

}  // namespace hitree
