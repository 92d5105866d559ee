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

// Label-match filtering of candidate pools into SFT instances and
// chosen/rejected preference pairs, plus the per-label count table.

#pragma once

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "folpo/gen.hpp"
#include "folpo/hash.hpp"
#include "folpo/label.hpp"
#include "folpo/parallel.hpp"
#include "folpo/rng.hpp"
#include "folpo/story.hpp"

namespace folpo::dataset {

// ------------------------------------------------------------- labeling

inline std::map<std::string, const NlStory*> index_by_id(const std::vector<NlStory>& corpus) {
  std::map<std::string, const NlStory*> idx;
  for (const NlStory& s : corpus)
    if (!idx.emplace(s.id, &s).second) throw std::invalid_argument("duplicate story id " + s.id);
  return idx;
}

// Parses and classifies every candidate that has a completion. Fetch
// failures stay unlabeled; they are not model output.
inline void label_all(std::vector<CandidateRecord>& cands, const std::vector<NlStory>& corpus,
                      const prover::Budget& budget, std::size_t workers = default_workers()) {
  auto idx = index_by_id(corpus);
  parallel_for(cands.size(), workers, [&](std::size_t i) {
    CandidateRecord& c = cands[i];
    if (!c.fetch_error.empty()) return;
    auto it = idx.find(c.story_id);
    std::size_t expected = it == idx.end() ? 0 : it->second->premises.size();
    ParsedCompletion pc = parse_candidate(c.raw_completion, expected);
    if (!pc.ok()) {
      c.failure = pc.failure;
      c.label = LabelResult::error(pc.failure->reason, pc.failure->message);
      return;
    }
    c.parsed = std::move(pc.story);
    c.label = classify(*c.parsed, budget);
  });
}

// ---------------------------------------------------------------- build

enum class Pairing { Sampled, All };

inline const char* to_string(Pairing p) { return p == Pairing::All ? "all" : "sampled"; }

struct BuildOptions {
  std::uint64_t seed = 0;
  Pairing pairing = Pairing::Sampled;
  std::size_t sft_target = 0;   // 0: keep everything
  std::size_t pref_target = 0;  // 0: keep everything
  std::size_t prompt_shots = 0;
  std::vector<Exemplar> exemplars;  // only read when prompt_shots > 0
};

struct SftInstance {
  std::string story_id;
  std::string prompt;
  std::string completion;
  Label label = Label::Uncertain;
};

struct PrefPair {
  std::string story_id;
  std::string prompt;
  std::string chosen;
  std::string rejected;
  Label chosen_label = Label::Uncertain;
  Label rejected_label = Label::Uncertain;
};

// Indexed True, False, Uncertain.
using LabelCounts = std::array<std::size_t, 3>;

inline std::size_t total(const LabelCounts& c) { return c[0] + c[1] + c[2]; }

struct BuildStats {
  LabelCounts source{}, sft{}, pref{};
  std::size_t candidates = 0;
  std::size_t unlabeled = 0;       // fetch failures
  std::size_t unknown_story = 0;   // story_id not in the corpus
  std::size_t stories_without_match = 0;
};

struct BuildResult {
  std::vector<SftInstance> sft;
  std::vector<PrefPair> pref;
  BuildStats stats;
  std::vector<std::string> log;
};

inline std::size_t label_slot(Label l) {
  if (l == Label::Error) throw std::invalid_argument("Error is not a gold label");
  return static_cast<std::size_t>(l);
}

// Text a trainer sees: the parsed story rendered with the source sentences
// when counts line up, otherwise FOL lines only; raw text when unparseable.
inline std::string completion_text(const CandidateRecord& c, const NlStory& s) {
  if (!c.parsed) {
    std::string_view raw = detail::trim(c.raw_completion);
    return std::string(raw);
  }
  std::vector<std::string> texts;
  if (c.parsed->premises.size() == s.premises.size()) texts = sentences(s);
  return evaluate_lines(*c.parsed, texts) + "</EVALUATE>";
}

namespace detail {

struct Pooled {
  std::string text;
  std::string hash;
  Label label;
};

// Unique texts, ordered by content hash so input order never matters.
inline std::vector<Pooled> unique_sorted(std::vector<Pooled> v) {
  std::sort(v.begin(), v.end(), [](const Pooled& a, const Pooled& b) { return a.hash < b.hash; });
  v.erase(std::unique(v.begin(), v.end(),
                      [](const Pooled& a, const Pooled& b) { return a.text == b.text; }),
          v.end());
  return v;
}

// Keeps `target` items with per-label shares as close as possible to the
// input shares (largest remainder), sampled with the given stream.
template <typename T, typename LabelOf>
std::vector<T> stratified(std::vector<T> items, std::size_t target, LabelOf label_of, Rng& rng) {
  if (target == 0 || items.size() <= target) return items;
  std::array<std::vector<T>, 3> by;
  for (T& it : items) by[label_slot(label_of(it))].push_back(std::move(it));
  std::array<std::size_t, 3> quota{};
  std::array<std::pair<double, std::size_t>, 3> rem{};
  std::size_t given = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    double exact = static_cast<double>(target) * static_cast<double>(by[k].size()) /
                   static_cast<double>(items.size());
    quota[k] = static_cast<std::size_t>(exact);
    given += quota[k];
    rem[k] = {exact - static_cast<double>(quota[k]), k};
  }
  std::stable_sort(rem.begin(), rem.end(), [](auto& a, auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; given < target; ++i, ++given) quota[rem[i % 3].second]++;
  std::vector<T> out;
  for (std::size_t k = 0; k < 3; ++k) {
    shuffle(by[k], rng);
    for (std::size_t i = 0; i < quota[k] && i < by[k].size(); ++i) out.push_back(std::move(by[k][i]));
  }
  return out;
}

inline std::string content_hash(const SftInstance& s) {
  return sha256_hex(json::array({s.prompt, s.completion}).dump());
}
inline std::string content_hash(const PrefPair& p) {
  return sha256_hex(json::array({p.prompt, p.chosen, p.rejected}).dump());
}

template <typename T>
void sort_for_emit(std::vector<T>& v) {
  std::vector<std::pair<std::string, T>> keyed;
  for (T& x : v) keyed.emplace_back(content_hash(x), std::move(x));
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    return std::tie(a.second.story_id, a.first) < std::tie(b.second.story_id, b.first);
  });
  v.clear();
  for (auto& [h, x] : keyed) v.push_back(std::move(x));
}

}  // namespace detail

inline BuildResult build(const std::vector<NlStory>& corpus,
                         const std::vector<CandidateRecord>& labeled, const BuildOptions& opt) {
  BuildResult out;
  auto idx = index_by_id(corpus);
  std::map<std::string, std::vector<const CandidateRecord*>> by_story;
  for (const CandidateRecord& c : labeled) {
    ++out.stats.candidates;
    if (!c.fetch_error.empty()) {
      ++out.stats.unlabeled;
      continue;
    }
    if (!c.label) throw std::invalid_argument("candidate for " + c.story_id + " is not labeled");
    if (!idx.count(c.story_id)) {
      ++out.stats.unknown_story;
      continue;
    }
    by_story[c.story_id].push_back(&c);
  }

  for (const NlStory& s : corpus) {
    if (!s.gold_label) throw std::invalid_argument("story " + s.id + " has no gold label");
    out.stats.source[label_slot(*s.gold_label)]++;
  }

  for (const auto& [id, cands] : by_story) {
    const NlStory& s = *idx.at(id);
    Label gold = *s.gold_label;
    std::vector<detail::Pooled> match, miss;
    for (const CandidateRecord* c : cands) {
      std::string text = completion_text(*c, s);
      (c->label->label == gold ? match : miss).push_back({text, sha256_hex(text), c->label->label});
    }
    match = detail::unique_sorted(std::move(match));
    miss = detail::unique_sorted(std::move(miss));
    std::erase_if(miss, [&](const detail::Pooled& r) {
      return std::any_of(match.begin(), match.end(),
                         [&](const detail::Pooled& m) { return m.text == r.text; });
    });
    if (match.empty()) {
      ++out.stats.stories_without_match;
      out.log.push_back("story " + id + ": no candidate matches the gold label");
      continue;
    }
    std::string prompt = build_prompt(s, gen::exemplars_for(s, opt.exemplars), opt.prompt_shots);
    for (const auto& m : match) out.sft.push_back({id, prompt, m.text, gold});

    Rng rng(derive_seed(opt.seed, id));
    if (opt.pairing == Pairing::All) {
      for (const auto& m : match)
        for (const auto& r : miss) out.pref.push_back({id, prompt, m.text, r.text, gold, r.label});
    } else {
      shuffle(match, rng);
      shuffle(miss, rng);
      for (std::size_t i = 0; i < std::min(match.size(), miss.size()); ++i)
        out.pref.push_back({id, prompt, match[i].text, miss[i].text, gold, miss[i].label});
    }
  }

  Rng sft_rng(derive_seed(opt.seed, "sft")), pref_rng(derive_seed(opt.seed, "pref"));
  detail::sort_for_emit(out.sft);
  detail::sort_for_emit(out.pref);
  out.sft = detail::stratified(std::move(out.sft), opt.sft_target,
                               [](const SftInstance& x) { return x.label; }, sft_rng);
  out.pref = detail::stratified(std::move(out.pref), opt.pref_target,
                                [](const PrefPair& x) { return x.chosen_label; }, pref_rng);
  detail::sort_for_emit(out.sft);
  detail::sort_for_emit(out.pref);
  for (const auto& x : out.sft) out.stats.sft[label_slot(x.label)]++;
  for (const auto& x : out.pref) out.stats.pref[label_slot(x.chosen_label)]++;
  return out;
}

// ----------------------------------------------------------------- output

inline json counts_json(const LabelCounts& c) {
  return json{{"True", c[0]}, {"False", c[1]}, {"Uncertain", c[2]}, {"Total", total(c)}};
}

inline json stats_json(const BuildStats& s) {
  return json{{"source", counts_json(s.source)},
              {"sft", counts_json(s.sft)},
              {"pref", counts_json(s.pref)},
              {"candidates", s.candidates},
              {"unlabeled", s.unlabeled},
              {"unknown_story", s.unknown_story},
              {"stories_without_match", s.stories_without_match}};
}

// Rows per label, columns source / sft / pref.
inline std::string stats_table(const BuildStats& s) {
  auto row = [&](const std::string& name, std::size_t a, std::size_t b, std::size_t c) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%-14s %8zu %8zu %8zu\n", name.c_str(), a, b, c);
    return std::string(buf);
  };
  std::string out;
  char head[96];
  std::snprintf(head, sizeof head, "%-14s %8s %8s %8s\n", "Logical Label", "Source", "SFT", "Pref");
  out += head;
  const char* names[] = {"True", "False", "Uncertain"};
  for (std::size_t k = 0; k < 3; ++k) out += row(names[k], s.source[k], s.sft[k], s.pref[k]);
  out += row("Total", total(s.source), total(s.sft), total(s.pref));
  return out;
}

namespace detail {

inline void write_atomically(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace detail

struct EmitInfo {
  BuildOptions options;
  prover::Budget budget;
};

inline void emit(const BuildResult& r, const std::filesystem::path& out_dir, const EmitInfo& info) {
  std::filesystem::create_directories(out_dir);
  std::string sft, pref;
  for (const auto& x : r.sft) sft += json{{"prompt", x.prompt}, {"completion", x.completion}}.dump() + "\n";
  for (const auto& x : r.pref)
    pref += json{{"prompt", x.prompt}, {"chosen", x.chosen}, {"rejected", x.rejected}}.dump() + "\n";
  detail::write_atomically(out_dir / "sft.jsonl", sft);
  detail::write_atomically(out_dir / "pref.jsonl", pref);
  detail::write_atomically(out_dir / "stats.json", stats_json(r.stats).dump(2) + "\n");
  const BuildOptions& o = info.options;
  json manifest{
      {"seed", o.seed},
      {"pairing", to_string(o.pairing)},
      {"sft_target", o.sft_target},
      {"pref_target", o.pref_target},
      {"prompt_shots", o.prompt_shots},
      {"budget",
       {{"max_seconds", info.budget.max_seconds},
        {"max_kept_clauses", info.budget.max_kept_clauses},
        {"max_iterations", info.budget.max_iterations},
        {"max_term_depth", info.budget.max_term_depth}}},
      {"counts", {{"sft", r.sft.size()}, {"pref", r.pref.size()}}},
  };
  detail::write_atomically(out_dir / "build_manifest.json", manifest.dump(2) + "\n");
}

}  // namespace folpo::dataset
