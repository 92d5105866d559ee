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

// Signature census and consistency checks for a FOL story: arity clashes,
// near-duplicate predicate names, conclusions that share no vocabulary with
// the premises, premise predicates cut off from the conclusion, and
// formulas whose free variables were closed implicitly.

#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "folpo/fol_story.hpp"
#include "folpo/label.hpp"
#include "folpo/story.hpp"
#include "folpo/syntax/ast.hpp"

namespace folpo::lint {

using syntax::Formula;
using syntax::Term;

enum class SymbolKind : std::uint8_t { Predicate, Function, Constant };

inline const char* to_string(SymbolKind k) {
  switch (k) {
    case SymbolKind::Predicate: return "predicate";
    case SymbolKind::Function: return "function";
    case SymbolKind::Constant: return "constant";
  }
  return "?";
}

struct SignatureRow {
  std::string name;
  SymbolKind kind = SymbolKind::Predicate;
  std::size_t arity = 0;
  std::vector<std::size_t> sites;  // formula indices, conclusion last

  friend bool operator==(const SignatureRow&, const SignatureRow&) = default;
};

namespace detail {

using Key = std::tuple<SymbolKind, std::string, std::size_t>;

inline void census(const Term& t, std::size_t site, std::map<Key, std::set<std::size_t>>& out) {
  if (t.is_variable()) return;
  out[{t.is_function() ? SymbolKind::Function : SymbolKind::Constant, t.name, t.args.size()}].insert(site);
  for (const Term& a : t.args) census(a, site, out);
}

inline void census(const Formula& f, std::size_t site, std::map<Key, std::set<std::size_t>>& out) {
  if (f.kind == Formula::Kind::Predicate) out[{SymbolKind::Predicate, f.name, f.args.size()}].insert(site);
  for (const Term& a : f.args) census(a, site, out);
  for (const Formula& c : f.children) census(c, site, out);
}

inline std::set<std::string> predicates_of(const Formula& f) {
  std::map<Key, std::set<std::size_t>> m;
  census(f, 0, m);
  std::set<std::string> out;
  for (const auto& [k, s] : m)
    if (std::get<0>(k) == SymbolKind::Predicate) out.insert(std::get<1>(k));
  return out;
}

inline std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

}  // namespace detail

// Every predicate, function and constant with its arity and the formulas
// using it. A name used with two arities gets two rows.
inline std::vector<SignatureRow> signatures(const FolStory& story) {
  std::map<detail::Key, std::set<std::size_t>> m;
  for (std::size_t i = 0; i < story.formula_count(); ++i) detail::census(story.formula(i), i, m);
  std::vector<SignatureRow> out;
  for (const auto& [k, sites] : m)
    out.push_back({std::get<1>(k), std::get<0>(k), std::get<2>(k), {sites.begin(), sites.end()}});
  return out;
}

enum class DiagnosticKind : std::uint8_t {
  ArityMismatch,
  NearDuplicatePredicate,
  ConclusionVocabularyDisjoint,
  UnusedPremisePredicate,
  FreeVariableClosed,
  SyntaxError,
};

inline const char* to_string(DiagnosticKind k) {
  switch (k) {
    case DiagnosticKind::ArityMismatch: return "ArityMismatch";
    case DiagnosticKind::NearDuplicatePredicate: return "NearDuplicatePredicate";
    case DiagnosticKind::ConclusionVocabularyDisjoint: return "ConclusionVocabularyDisjoint";
    case DiagnosticKind::UnusedPremisePredicate: return "UnusedPremisePredicate";
    case DiagnosticKind::FreeVariableClosed: return "FreeVariableClosed";
    case DiagnosticKind::SyntaxError: return "SyntaxError";
  }
  return "?";
}

struct Diagnostic {
  DiagnosticKind kind = DiagnosticKind::SyntaxError;
  std::vector<std::size_t> formula_indices;
  std::vector<std::string> symbols;
  std::string message;
};

struct LintOptions {
  std::size_t max_edit_distance = 2;
  std::size_t max_prefix_suffix = 6;
};

inline bool near_duplicate(const std::string& a, const std::string& b, const LintOptions& o) {
  if (a == b) return false;
  // short names are all within a couple of edits of each other
  if (std::min(a.size(), b.size()) <= o.max_edit_distance) return false;
  const std::string& shorter = a.size() < b.size() ? a : b;
  const std::string& longer = a.size() < b.size() ? b : a;
  if (longer.starts_with(shorter) && longer.size() - shorter.size() <= o.max_prefix_suffix) return true;
  return detail::edit_distance(a, b) <= o.max_edit_distance;
}

inline std::vector<Diagnostic> lint(const FolStory& story, const LintOptions& opt = {}) {
  std::vector<Diagnostic> out;
  std::vector<SignatureRow> sig = signatures(story);
  std::size_t conclusion = story.premises.size();

  // arity
  std::map<std::pair<SymbolKind, std::string>, std::vector<const SignatureRow*>> by_name;
  for (const SignatureRow& r : sig)
    if (r.kind != SymbolKind::Constant) by_name[{r.kind, r.name}].push_back(&r);
  for (const auto& [key, rows] : by_name) {
    if (rows.size() < 2) continue;
    std::set<std::size_t> sites;
    std::string arities;
    for (const SignatureRow* r : rows) {
      sites.insert(r->sites.begin(), r->sites.end());
      arities += (arities.empty() ? "" : ", ") + std::to_string(r->arity);
    }
    out.push_back({DiagnosticKind::ArityMismatch, {sites.begin(), sites.end()}, {key.second},
                   std::string(to_string(key.first)) + " " + key.second + " used with arities " + arities});
  }

  // predicate names and where they occur
  std::map<std::string, std::set<std::size_t>> pred_sites;
  for (const SignatureRow& r : sig)
    if (r.kind == SymbolKind::Predicate) pred_sites[r.name].insert(r.sites.begin(), r.sites.end());

  for (auto a = pred_sites.begin(); a != pred_sites.end(); ++a)
    for (auto b = std::next(a); b != pred_sites.end(); ++b)
      if (near_duplicate(a->first, b->first, opt)) {
        std::set<std::size_t> sites = a->second;
        sites.insert(b->second.begin(), b->second.end());
        out.push_back({DiagnosticKind::NearDuplicatePredicate, {sites.begin(), sites.end()},
                       {a->first, b->first},
                       a->first + " and " + b->first + " look like the same predicate"});
      }

  std::set<std::string> concl_preds = detail::predicates_of(story.conclusion);
  std::set<std::string> premise_preds;
  for (const Formula& p : story.premises) {
    auto s = detail::predicates_of(p);
    premise_preds.insert(s.begin(), s.end());
  }
  if (!concl_preds.empty() &&
      std::none_of(concl_preds.begin(), concl_preds.end(),
                   [&](const std::string& p) { return premise_preds.count(p) > 0; })) {
    out.push_back({DiagnosticKind::ConclusionVocabularyDisjoint, {conclusion},
                   {concl_preds.begin(), concl_preds.end()},
                   "no conclusion predicate occurs in any premise"});
  }

  // reachability from the conclusion through formulas sharing a predicate
  std::set<std::string> reached = concl_preds;
  std::vector<std::set<std::string>> per_formula;
  for (const Formula& p : story.premises) per_formula.push_back(detail::predicates_of(p));
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& preds : per_formula)
      if (std::any_of(preds.begin(), preds.end(), [&](const std::string& p) { return reached.count(p) > 0; }))
        for (const std::string& p : preds) grew |= reached.insert(p).second;
  }
  for (const std::string& p : premise_preds) {
    if (reached.count(p)) continue;
    const auto& sites = pred_sites.at(p);
    out.push_back({DiagnosticKind::UnusedPremisePredicate, {sites.begin(), sites.end()}, {p},
                   p + " is not connected to the conclusion"});
  }

  for (std::size_t i = 0; i < story.formula_count(); ++i) {
    auto free = syntax::free_variables(story.formula(i));
    if (free.empty()) continue;
    std::string names;
    for (const auto& v : free) names += (names.empty() ? "" : ", ") + v;
    out.push_back({DiagnosticKind::FreeVariableClosed, {i}, free,
                   "free variable(s) " + names + " universally closed"});
  }
  return out;
}

// SyntaxError when the completion did not parse, the story's lint otherwise.
inline std::vector<Diagnostic> lint(const ParsedCompletion& pc, const LintOptions& opt = {}) {
  if (pc.ok()) return lint(*pc.story, opt);
  if (pc.failure && pc.failure->reason == ErrorReason::Parse)
    return {{DiagnosticKind::SyntaxError, {}, {}, pc.failure->message}};
  return {};
}

inline json to_json(const Diagnostic& d) {
  return json{{"kind", to_string(d.kind)},
              {"formula_indices", d.formula_indices},
              {"symbols", d.symbols},
              {"message", d.message}};
}

inline json to_json(const SignatureRow& r) {
  return json{{"name", r.name}, {"kind", to_string(r.kind)}, {"arity", r.arity}, {"sites", r.sites}};
}

// "<id> [i,j] Kind: message" per diagnostic.
inline std::string format_listing(const std::string& story_id, const std::vector<Diagnostic>& ds) {
  std::string out;
  for (const Diagnostic& d : ds) {
    out += story_id + " [";
    for (std::size_t i = 0; i < d.formula_indices.size(); ++i)
      out += (i ? "," : "") + std::to_string(d.formula_indices[i]);
    out += "] " + std::string(to_string(d.kind)) + ": " + d.message + "\n";
  }
  return out;
}

// ------------------------------------------------------ failure tagging

struct FailureHistogram {
  std::size_t l3_syntax = 0;
  std::size_t consistency_suspect = 0;
  std::size_t other_logic = 0;
};

// Over labeled candidates whose label differs from gold. Parse errors are
// syntax failures; other mismatches split on whether lint has anything to
// say about the candidate story.
inline FailureHistogram tag_failures(const std::vector<CandidateRecord>& cands,
                                     const std::vector<NlStory>& corpus, const LintOptions& opt = {}) {
  std::map<std::string, Label> gold;
  for (const NlStory& s : corpus)
    if (s.gold_label) gold[s.id] = *s.gold_label;
  FailureHistogram h;
  for (const CandidateRecord& c : cands) {
    if (!c.label) continue;
    if (c.label->label == Label::Error && c.label->error_reason == ErrorReason::Parse) {
      ++h.l3_syntax;
      continue;
    }
    auto g = gold.find(c.story_id);
    if (g == gold.end() || c.label->label == g->second) continue;
    if (c.parsed && !lint(*c.parsed, opt).empty())
      ++h.consistency_suspect;
    else
      ++h.other_logic;
  }
  return h;
}

}  // namespace folpo::lint
