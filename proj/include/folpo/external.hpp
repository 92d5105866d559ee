// Copyright 2026 The folpo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Prover9 input emission and a cross-check harness that runs the external
// engine on each story and compares its verdict with `classify`.

#pragma once

#include <fcntl.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "folpo/clausify.hpp"
#include "folpo/fol_story.hpp"
#include "folpo/label.hpp"
#include "folpo/parallel.hpp"
#include "folpo/syntax/ast.hpp"

namespace folpo::external {

using syntax::Formula;
using syntax::Term;

namespace detail {

// Prover9 reads any symbol starting with u-z as a variable, so such
// constants and predicates get a prefix. Bound variables become v1, v2, ...
class Prover9Writer {
 public:
  std::string formula(const Formula& f) {
    scope_.clear();
    counter_ = 0;
    std::string out;
    write(syntax::desugar_xor(clausify::close_free(f)), out);
    return out;
  }

 private:
  static std::string symbol(const std::string& name) {
    std::string s;
    for (char c : name)
      s += (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$') ? c : '_';
    if (s.empty() || (s[0] >= 'u' && s[0] <= 'z')) s = "c_" + s;
    return s;
  }

  void term(const Term& t, std::string& out) {
    if (t.is_variable()) {
      for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
        if (it->first == t.name) {
          out += it->second;
          return;
        }
      out += symbol(t.name);  // unreachable after closure
      return;
    }
    out += symbol(t.name);
    if (!t.args.empty()) {
      out += '(';
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) out += ", ";
        term(t.args[i], out);
      }
      out += ')';
    }
  }

  void write(const Formula& f, std::string& out) {
    using K = Formula::Kind;
    switch (f.kind) {
      case K::Predicate:
        out += symbol(f.name);
        if (!f.args.empty()) {
          out += '(';
          for (std::size_t i = 0; i < f.args.size(); ++i) {
            if (i) out += ", ";
            term(f.args[i], out);
          }
          out += ')';
        }
        return;
      case K::Equality:
        out += '(';
        term(f.args[0], out);
        out += " = ";
        term(f.args[1], out);
        out += ')';
        return;
      case K::Not:
        out += "-(";
        write(f.operand(), out);
        out += ')';
        return;
      case K::ForAll:
      case K::Exists: {
        std::string v = "v" + std::to_string(++counter_);
        out += f.kind == K::ForAll ? "(all " : "(exists ";
        out += v + " ";
        scope_.emplace_back(f.name, v);
        out += '(';
        write(f.body(), out);
        out += "))";
        scope_.pop_back();
        return;
      }
      default: {
        const char* op = f.kind == K::And       ? " & "
                         : f.kind == K::Or      ? " | "
                         : f.kind == K::Implies ? " -> "
                                                : " <-> ";
        out += '(';
        write(f.lhs(), out);
        out += op;
        write(f.rhs(), out);
        out += ')';
        return;
      }
    }
  }

  std::vector<std::pair<std::string, std::string>> scope_;
  std::size_t counter_ = 0;
};

}  // namespace detail

inline std::string to_prover9(const Formula& f) { return detail::Prover9Writer().formula(f); }

// Assumptions/goals input file, one formula per line. With `negate_goal`
// the goal is the negated conclusion (used for the False direction).
inline std::string emit_external(const FolStory& story, bool negate_goal = false) {
  detail::Prover9Writer w;
  std::string out = "formulas(assumptions).\n";
  for (const Formula& p : story.premises) out += w.formula(p) + ".\n";
  out += "end_of_list.\n\nformulas(goals).\n";
  Formula goal = clausify::close_free(story.conclusion);
  if (negate_goal) goal = Formula::negation(std::move(goal));
  out += w.formula(goal) + ".\n";
  out += "end_of_list.\n";
  return out;
}

struct ProcessResult {
  bool started = false;
  bool timed_out = false;
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

// Runs argv[0] with the given arguments, killing it after `timeout_seconds`.
inline ProcessResult run_process(const std::vector<std::string>& argv, double timeout_seconds) {
  ProcessResult r;
  char tmpl[] = "/tmp/folpo-proc-XXXXXX";
  int fd = ::mkstemp(tmpl);
  if (fd < 0) return r;
  std::string out_path = tmpl;

  pid_t pid = ::fork();
  if (pid < 0) {
    ::close(fd);
    std::filesystem::remove(out_path);
    return r;
  }
  if (pid == 0) {
    ::dup2(fd, STDOUT_FILENO);
    ::dup2(fd, STDERR_FILENO);
    ::close(fd);
    int devnull = ::open("/dev/null", O_RDONLY);
    if (devnull >= 0) ::dup2(devnull, STDIN_FILENO);
    std::vector<char*> args;
    for (const std::string& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    ::execv(args[0], args.data());
    ::_exit(127);
  }
  ::close(fd);

  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(timeout_seconds));
  int status = 0;
  while (true) {
    pid_t w = ::waitpid(pid, &status, WNOHANG);
    if (w == pid) break;
    if (std::chrono::steady_clock::now() > deadline) {
      ::kill(pid, SIGKILL);
      ::waitpid(pid, &status, 0);
      r.timed_out = true;
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.started = !(WIFEXITED(status) && WEXITSTATUS(status) == 127);
  std::ifstream in(out_path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  std::filesystem::remove(out_path);
  return r;
}

inline constexpr std::string_view kProvedMarker = "THEOREM PROVED";
inline constexpr std::string_view kFailedMarker = "SEARCH FAILED";

struct NamedStory {
  std::string id;
  FolStory story;
};

struct CrossCheckEntry {
  std::string id;
  Label internal = Label::Uncertain;
  Label external = Label::Uncertain;
  bool agree = false;
};

struct CrossCheckReport {
  bool skipped = false;
  std::string skip_reason;
  std::vector<CrossCheckEntry> entries;
  double agreement_rate = 1.0;
};

// Labels each story with the external engine (goal, then negated goal) and
// with `classify`. A missing binary yields a skipped report, not a failure.
inline CrossCheckReport cross_check(const std::vector<NamedStory>& stories,
                                    const prover::Budget& budget,
                                    const std::filesystem::path& binary,
                                    std::size_t workers = default_workers()) {
  CrossCheckReport report;
  std::error_code ec;
  auto st = std::filesystem::status(binary, ec);
  if (ec || !std::filesystem::is_regular_file(st) || ::access(binary.c_str(), X_OK) != 0) {
    report.skipped = true;
    report.skip_reason = "external prover not found at '" + binary.string() + "'";
    return report;
  }
  if (stories.empty()) return report;

  // Two jobs per story: index 2k proves the goal, 2k+1 the negated goal.
  std::vector<char> proved(stories.size() * 2, 0);
  auto tmp = std::filesystem::temp_directory_path();
  std::string tag = std::to_string(::getpid());
  parallel_for(proved.size(), workers, [&](std::size_t job) {
    const FolStory& s = stories[job / 2].story;
    auto path = tmp / ("folpo-xcheck-" + tag + "-" + std::to_string(job) + ".in");
    {
      std::ofstream f(path);
      f << emit_external(s, job % 2 == 1);
    }
    ProcessResult pr = run_process({binary.string(), "-f", path.string()}, budget.max_seconds);
    std::filesystem::remove(path);
    proved[job] = !pr.timed_out && pr.output.find(kProvedMarker) != std::string::npos;
  });

  std::vector<LabelResult> internal(stories.size());
  parallel_for(stories.size(), workers,
               [&](std::size_t i) { internal[i] = classify(stories[i].story, budget); });

  std::size_t agree = 0;
  for (std::size_t i = 0; i < stories.size(); ++i) {
    CrossCheckEntry e;
    e.id = stories[i].id;
    e.internal = internal[i].label;
    bool yes = proved[2 * i], no = proved[2 * i + 1];
    e.external = yes && no ? Label::Error : yes ? Label::True : no ? Label::False : Label::Uncertain;
    e.agree = e.internal == e.external;
    agree += e.agree;
    report.entries.push_back(std::move(e));
  }
  report.agreement_rate = static_cast<double>(agree) / static_cast<double>(stories.size());
  return report;
}

}  // namespace folpo::external
