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

// Logical label of a FOL story by two refutation attempts:
//   entail      = refute(premises + {-conclusion})
//   contradict  = refute(premises + { conclusion})
// True when only entail succeeds, False when only contradict succeeds,
// Uncertain when neither does, Error(InconsistentPremises) when both do.

#pragma once

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "folpo/clausify.hpp"
#include "folpo/fol_story.hpp"
#include "folpo/prover.hpp"

namespace folpo {

enum class Label : std::uint8_t { True, False, Uncertain, Error };

enum class ErrorReason : std::uint8_t {
  None,
  Parse,
  Alignment,
  ClauseExplosion,
  InconsistentPremises,
};

inline const char* to_string(Label l) {
  switch (l) {
    case Label::True: return "True";
    case Label::False: return "False";
    case Label::Uncertain: return "Uncertain";
    case Label::Error: return "Error";
  }
  return "?";
}

inline const char* to_string(ErrorReason r) {
  switch (r) {
    case ErrorReason::None: return "None";
    case ErrorReason::Parse: return "Parse";
    case ErrorReason::Alignment: return "Alignment";
    case ErrorReason::ClauseExplosion: return "ClauseExplosion";
    case ErrorReason::InconsistentPremises: return "InconsistentPremises";
  }
  return "?";
}

// Case-insensitive; "Unknown" is accepted for Uncertain.
inline std::optional<Label> parse_label(std::string_view s) {
  std::string lower;
  for (char c : s) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  while (!lower.empty() && std::isspace(static_cast<unsigned char>(lower.back()))) lower.pop_back();
  std::size_t first = lower.find_first_not_of(" \t");
  lower = first == std::string::npos ? "" : lower.substr(first);
  if (lower == "true") return Label::True;
  if (lower == "false") return Label::False;
  if (lower == "uncertain" || lower == "unknown") return Label::Uncertain;
  if (lower == "error") return Label::Error;
  return std::nullopt;
}

inline std::optional<ErrorReason> parse_error_reason(std::string_view s) {
  for (ErrorReason r : {ErrorReason::None, ErrorReason::Parse, ErrorReason::Alignment,
                        ErrorReason::ClauseExplosion, ErrorReason::InconsistentPremises})
    if (s == to_string(r)) return r;
  return std::nullopt;
}

struct LabelResult {
  Label label = Label::Uncertain;
  ErrorReason error_reason = ErrorReason::None;
  bool budget_limited = false;
  std::optional<prover::RefutationOutcome> entail_outcome;
  std::optional<prover::RefutationOutcome> contradict_outcome;
  std::string detail;

  static LabelResult error(ErrorReason reason, std::string detail = {}) {
    LabelResult r;
    r.label = Label::Error;
    r.error_reason = reason;
    r.detail = std::move(detail);
    return r;
  }
};

struct ClassifyOptions {
  clausify::Options clausify;
  prover::ProverOptions prover;
};

inline LabelResult classify(const FolStory& story, const prover::Budget& budget = {},
                            const ClassifyOptions& opts = {}) {
  clausify::ClausifiedStory cs;
  try {
    cs = clausify::to_clauses(story, opts.clausify);
  } catch (const clausify::ClauseExplosion& e) {
    return LabelResult::error(ErrorReason::ClauseExplosion, e.what());
  }

  std::vector<cnf::Clause> entail = cs.premise_clauses;
  entail.insert(entail.end(), cs.conclusion_clauses_neg.begin(), cs.conclusion_clauses_neg.end());
  std::vector<cnf::Clause> contradict = cs.premise_clauses;
  contradict.insert(contradict.end(), cs.conclusion_clauses_pos.begin(),
                    cs.conclusion_clauses_pos.end());

  LabelResult r;
  r.entail_outcome = prover::refute(entail, budget, opts.prover);
  r.contradict_outcome = prover::refute(contradict, budget, opts.prover);
  using prover::Status;
  bool proved = r.entail_outcome->status == Status::Refuted;
  bool disproved = r.contradict_outcome->status == Status::Refuted;
  r.budget_limited = r.entail_outcome->status == Status::BudgetExhausted ||
                     r.contradict_outcome->status == Status::BudgetExhausted;
  if (proved && disproved) {
    r.label = Label::Error;
    r.error_reason = ErrorReason::InconsistentPremises;
  } else if (proved) {
    r.label = Label::True;
  } else if (disproved) {
    r.label = Label::False;
  } else {
    r.label = Label::Uncertain;
  }
  return r;
}

}  // namespace folpo
