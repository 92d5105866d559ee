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

// Scoring of predicted labels against gold: correct / incorrect / error
// rates and F1, each computed per run and then averaged over runs.
//
// F1 treats Error as a fourth predicted class with no gold support: it
// lowers recall of the class it replaced and contributes no term of its own.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "folpo/label.hpp"
#include "folpo/story.hpp"

namespace folpo::eval {

struct RunPredictions {
  std::size_t run_index = 0;
  std::vector<Label> labels;  // one per story
};

struct MetricsReport {
  std::size_t k = 0;  // runs
  std::size_t n = 0;  // stories
  double correct_pct = 0, incorrect_pct = 0, error_pct = 0;
  double weighted_f1 = 0, true_f1 = 0;
  std::map<std::string, MetricsReport> buckets;
};

namespace detail {

struct RunScore {
  double correct, incorrect, error, weighted_f1, true_f1;
};

inline double f1(std::size_t tp, std::size_t predicted, std::size_t actual) {
  // zero when undefined
  if (tp == 0) return 0.0;
  double p = static_cast<double>(tp) / static_cast<double>(predicted);
  double r = static_cast<double>(tp) / static_cast<double>(actual);
  return 2 * p * r / (p + r);
}

inline RunScore score_run(const std::vector<Label>& golds, const std::vector<Label>& preds) {
  std::size_t n = golds.size();
  std::size_t correct = 0, error = 0;
  std::array<std::size_t, 4> tp{}, pred{}, gold{};
  for (std::size_t i = 0; i < n; ++i) {
    auto g = static_cast<std::size_t>(golds[i]);
    auto p = static_cast<std::size_t>(preds[i]);
    gold[g]++;
    pred[p]++;
    if (g == p) {
      tp[g]++;
      ++correct;
    }
    if (preds[i] == Label::Error) ++error;
  }
  double weighted = 0;
  for (std::size_t c = 0; c < 3; ++c)
    weighted += static_cast<double>(gold[c]) * f1(tp[c], pred[c], gold[c]);
  double dn = static_cast<double>(n);
  return {100.0 * static_cast<double>(correct) / dn,
          100.0 * static_cast<double>(n - correct - error) / dn,
          100.0 * static_cast<double>(error) / dn, weighted / dn, f1(tp[0], pred[0], gold[0])};
}

}  // namespace detail

inline MetricsReport score(const std::vector<Label>& golds, const std::vector<RunPredictions>& runs) {
  if (runs.empty()) throw std::invalid_argument("at least one run is required");
  if (golds.empty()) throw std::invalid_argument("no stories to score");
  for (Label g : golds)
    if (g == Label::Error) throw std::invalid_argument("gold labels cannot be Error");
  for (const RunPredictions& r : runs)
    if (r.labels.size() != golds.size())
      throw std::invalid_argument("run " + std::to_string(r.run_index) + " has " +
                                  std::to_string(r.labels.size()) + " predictions for " +
                                  std::to_string(golds.size()) + " stories");
  MetricsReport m;
  m.k = runs.size();
  m.n = golds.size();
  for (const RunPredictions& r : runs) {
    detail::RunScore s = detail::score_run(golds, r.labels);
    m.correct_pct += s.correct;
    m.incorrect_pct += s.incorrect;
    m.error_pct += s.error;
    m.weighted_f1 += s.weighted_f1;
    m.true_f1 += s.true_f1;
  }
  double k = static_cast<double>(runs.size());
  m.correct_pct /= k;
  m.incorrect_pct /= k;
  m.error_pct /= k;
  m.weighted_f1 /= k;
  m.true_f1 /= k;
  return m;
}

// Modal non-Error label per story; ties go to Uncertain, then False, then
// True. Stories where every run is Error stay Error.
inline RunPredictions majority_vote(const std::vector<RunPredictions>& runs) {
  if (runs.empty()) throw std::invalid_argument("at least one run is required");
  std::size_t n = runs.front().labels.size();
  RunPredictions out;
  out.labels.resize(n, Label::Error);
  for (std::size_t i = 0; i < n; ++i) {
    std::array<std::size_t, 3> votes{};
    for (const RunPredictions& r : runs) {
      if (r.labels.size() != n) throw std::invalid_argument("runs have different lengths");
      if (r.labels[i] != Label::Error) votes[static_cast<std::size_t>(r.labels[i])]++;
    }
    std::size_t best = 0;
    for (Label l : {Label::Uncertain, Label::False, Label::True}) {
      std::size_t v = votes[static_cast<std::size_t>(l)];
      if (v > best) {
        best = v;
        out.labels[i] = l;
      }
    }
  }
  return out;
}

inline const char* bucket_of(std::size_t premises) {
  if (premises <= 2) return "small";
  if (premises <= 5) return "medium";
  return "large";
}

// Reports for the buckets that have stories, attached to the global report.
inline MetricsReport score_bucketed(const std::vector<Label>& golds,
                                    const std::vector<std::size_t>& premise_counts,
                                    const std::vector<RunPredictions>& runs) {
  if (premise_counts.size() != golds.size())
    throw std::invalid_argument("premise counts not aligned with golds");
  MetricsReport m = score(golds, runs);
  for (const char* name : {"small", "medium", "large"}) {
    std::vector<Label> g;
    std::vector<RunPredictions> rs(runs.size());
    for (std::size_t r = 0; r < runs.size(); ++r) rs[r].run_index = runs[r].run_index;
    for (std::size_t i = 0; i < golds.size(); ++i) {
      if (std::string(bucket_of(premise_counts[i])) != name) continue;
      g.push_back(golds[i]);
      for (std::size_t r = 0; r < runs.size(); ++r) rs[r].labels.push_back(runs[r].labels[i]);
    }
    if (!g.empty()) m.buckets[name] = score(g, rs);
  }
  return m;
}

// --------------------------------------------------------------- output

// Two-decimal strings for the three rates that add up to exactly 100.00,
// by largest-remainder rounding on hundredths.
inline std::array<std::string, 3> rate_strings(double correct, double incorrect, double error) {
  std::array<double, 3> v{correct, incorrect, error};
  if (std::abs(v[0] + v[1] + v[2] - 100.0) > 0.01)
    throw std::invalid_argument("rates do not sum to 100");
  std::array<long long, 3> units{};
  std::array<std::pair<double, std::size_t>, 3> rem{};
  long long given = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    double hundredths = v[i] * 100.0;
    units[i] = static_cast<long long>(std::floor(hundredths + 1e-9));
    given += units[i];
    rem[i] = {hundredths - static_cast<double>(units[i]), i};
  }
  std::stable_sort(rem.begin(), rem.end(), [](auto& a, auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; given < 10000; ++i, ++given) units[rem[i % 3].second]++;
  for (std::size_t i = 0; given > 10000; ++i, --given) units[rem[2 - i % 3].second]--;
  std::array<std::string, 3> out;
  for (std::size_t i = 0; i < 3; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld.%02lld", units[i] / 100, units[i] % 100);
    out[i] = buf;
  }
  return out;
}

inline json to_json(const MetricsReport& m) {
  json j{{"k", m.k},
         {"stories", m.n},
         {"correct_pct", m.correct_pct},
         {"incorrect_pct", m.incorrect_pct},
         {"error_pct", m.error_pct},
         {"weighted_f1", m.weighted_f1},
         {"true_f1", m.true_f1},
         {"f1_note", "Error is scored as a predicted-only class with zero gold support"}};
  if (!m.buckets.empty()) {
    json b = json::object();
    for (const auto& [name, r] : m.buckets) b[name] = to_json(r);
    j["buckets"] = b;
  }
  return j;
}

struct TableRow {
  std::string name;
  MetricsReport report;
};

inline std::string format_table(const std::vector<TableRow>& rows) {
  std::string out;
  char buf[256];
  // arrows are three bytes wide in UTF-8, one column on screen
  std::snprintf(buf, sizeof buf, "%-24s | %11s | %9s | %11s | %13s | %11s\n", "System", "Correct↑",
                "Incorrect", "Error↓", "Overall F1↑", "True F1↑");
  out += buf;
  out += std::string(24, '-') + "-+-" + std::string(9, '-') + "-+-" + std::string(9, '-') + "-+-" +
         std::string(9, '-') + "-+-" + std::string(11, '-') + "-+-" + std::string(9, '-') + "\n";
  for (const TableRow& r : rows) {
    auto rates = rate_strings(r.report.correct_pct, r.report.incorrect_pct, r.report.error_pct);
    std::snprintf(buf, sizeof buf, "%-24s | %9s | %9s | %9s | %11.4f | %9.4f\n", r.name.c_str(),
                  rates[0].c_str(), rates[1].c_str(), rates[2].c_str(), r.report.weighted_f1,
                  r.report.true_f1);
    out += buf;
  }
  return out;
}

// ---------------------------------------------------------------- input

// Predictions file: one record per line {"story_id", "run", "label"}.
// Returns runs aligned to `ids`; a missing prediction is an error.
inline std::vector<RunPredictions> load_predictions(std::istream& in,
                                                    const std::vector<std::string>& ids) {
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < ids.size(); ++i) pos[ids[i]] = i;
  std::map<std::size_t, std::vector<std::optional<Label>>> runs;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line);
    std::string id = folpo::detail::json_id(j.at("story_id"));
    auto run = j.value("run", std::size_t{0});
    auto label = parse_label(j.at("label").get<std::string>());
    if (!label) throw std::invalid_argument("line " + std::to_string(no) + ": unknown label");
    auto it = pos.find(id);
    if (it == pos.end()) throw std::invalid_argument("line " + std::to_string(no) + ": unknown story " + id);
    auto& v = runs[run];
    v.resize(ids.size());
    v[it->second] = *label;
  }
  std::vector<RunPredictions> out;
  for (auto& [idx, v] : runs) {
    RunPredictions r;
    r.run_index = idx;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i]) throw std::invalid_argument("run " + std::to_string(idx) + " lacks story " + ids[i]);
      r.labels.push_back(*v[i]);
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace folpo::eval
