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

// Bounded resolution refutation: an Otter-style given-clause loop with
// binary resolution, eager factoring of the given clause, and forward
// subsumption. The passive clause with the fewest symbols is selected
// next, ties broken by insertion order, so runs are reproducible.
//
// Function-free inputs get a decision procedure instead of a bounded
// search: every clause is made range-restricted with $dom guards and
// resolution is restricted to one selected negative literal per clause
// (hyperresolution in effect). Derived positive clauses are then ground,
// and over a finite Herbrand universe the saturation always terminates.

#pragma once

#include <algorithm>
#include <chrono>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "folpo/clausify.hpp"
#include "folpo/cnf.hpp"
#include "folpo/unify.hpp"

namespace folpo::prover {

struct Budget {
  double max_seconds = 5.0;
  std::size_t max_kept_clauses = 20000;
  std::size_t max_iterations = 100000;
  std::size_t max_term_depth = 12;

  void validate() const {
    if (!(max_seconds > 0) || max_kept_clauses == 0 || max_iterations == 0 ||
        max_term_depth == 0)
      throw std::invalid_argument("budget limits must all be strictly positive");
  }
};

enum class Status : std::uint8_t { Refuted, Saturated, BudgetExhausted };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Refuted: return "Refuted";
    case Status::Saturated: return "Saturated";
    case Status::BudgetExhausted: return "BudgetExhausted";
  }
  return "?";
}

struct ProofStep {
  std::size_t id = 0;
  cnf::Clause clause;
  std::string rule;  // "input", "resolve", "factor"
  std::vector<std::size_t> parents;
};

struct RefutationOutcome {
  Status status = Status::Saturated;
  std::size_t kept_clause_count = 0;
  std::size_t iterations = 0;
  double elapsed_seconds = 0.0;
  // Derivation of the empty clause, parents before children; only when
  // status is Refuted.
  std::vector<ProofStep> proof_trace;
};

struct ProverOptions {
  bool forward_subsumption = true;
  bool backward_subsumption = false;
  // Use the range-restricted mode when the input has no function symbols.
  bool range_restrict = true;
};

namespace detail {

inline void shape(const cnf::Term& t, std::string& out) {
  if (t.var) {
    out += '?';
    return;
  }
  out += std::to_string(t.id);
  if (!t.args.empty()) {
    out += '(';
    for (const cnf::Term& a : t.args) {
      shape(a, out);
      out += ',';
    }
    out += ')';
  }
}

inline std::string literal_shape(const cnf::Literal& l) {
  std::string out = l.positive ? "+" : "-";
  out += std::to_string(l.predicate);
  out += '(';
  for (const cnf::Term& a : l.args) {
    shape(a, out);
    out += ',';
  }
  out += ')';
  return out;
}

inline void renumber(cnf::Term& t, std::vector<std::int32_t>& map, std::int32_t& next) {
  if (t.var) {
    auto v = static_cast<std::size_t>(t.id);
    if (v >= map.size()) map.resize(v + 1, -1);
    if (map[v] < 0) map[v] = next++;
    t.id = map[v];
    return;
  }
  for (cnf::Term& a : t.args) renumber(a, map, next);
}

inline void serialize(const cnf::Term& t, std::string& out) {
  if (t.var) {
    out += 'v';
    out += std::to_string(t.id);
    return;
  }
  out += std::to_string(t.id);
  if (!t.args.empty()) {
    out += '(';
    for (const cnf::Term& a : t.args) {
      serialize(a, out);
      out += ',';
    }
    out += ')';
  }
}

// Sorts literals by variable-blind shape and renumbers variables by first
// occurrence. Returns the canonical key used for duplicate detection.
inline std::string canonicalize(cnf::Clause& c) {
  std::vector<std::pair<std::string, std::size_t>> order;
  order.reserve(c.literals.size());
  for (std::size_t i = 0; i < c.literals.size(); ++i)
    order.emplace_back(literal_shape(c.literals[i]), i);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<cnf::Literal> sorted;
  sorted.reserve(c.literals.size());
  for (const auto& [_, i] : order) sorted.push_back(std::move(c.literals[i]));
  c.literals = std::move(sorted);

  std::vector<std::int32_t> map;
  std::int32_t next = 0;
  std::string key;
  for (cnf::Literal& l : c.literals) {
    for (cnf::Term& a : l.args) renumber(a, map, next);
    key += l.positive ? '+' : '-';
    key += std::to_string(l.predicate);
    key += '(';
    for (const cnf::Term& a : l.args) {
      serialize(a, key);
      key += ',';
    }
    key += ')';
  }
  return key;
}

inline cnf::Term offset_vars(const cnf::Term& t, std::int32_t off) {
  if (t.var) return cnf::Term::variable(t.id + off);
  cnf::Term out{t.id, false, {}};
  out.args.reserve(t.args.size());
  for (const cnf::Term& a : t.args) out.args.push_back(offset_vars(a, off));
  return out;
}

// One-way matching: binds only pattern variables; target variables are rigid.
class Matcher {
 public:
  explicit Matcher(std::size_t pattern_vars) : slots_(pattern_vars, nullptr) {}

  bool match(const cnf::Term& p, const cnf::Term& t) {
    if (p.var) {
      auto v = static_cast<std::size_t>(p.id);
      if (slots_[v] == nullptr) {
        slots_[v] = &t;
        trail_.push_back(v);
        return true;
      }
      return *slots_[v] == t;
    }
    if (t.var || p.id != t.id || p.args.size() != t.args.size()) return false;
    for (std::size_t i = 0; i < p.args.size(); ++i)
      if (!match(p.args[i], t.args[i])) return false;
    return true;
  }

  bool match(const cnf::Literal& p, const cnf::Literal& t) {
    if (p.positive != t.positive || p.predicate != t.predicate || p.args.size() != t.args.size())
      return false;
    for (std::size_t i = 0; i < p.args.size(); ++i)
      if (!match(p.args[i], t.args[i])) return false;
    return true;
  }

  std::size_t mark() const { return trail_.size(); }
  void undo(std::size_t m) {
    while (trail_.size() > m) {
      slots_[trail_.back()] = nullptr;
      trail_.pop_back();
    }
  }

 private:
  std::vector<const cnf::Term*> slots_;
  std::vector<std::size_t> trail_;
};

inline bool subsumes_from(const cnf::Clause& c, const cnf::Clause& d, std::size_t i, Matcher& m) {
  if (i == c.literals.size()) return true;
  for (const cnf::Literal& target : d.literals) {
    std::size_t mark = m.mark();
    if (m.match(c.literals[i], target) && subsumes_from(c, d, i + 1, m)) return true;
    m.undo(mark);
  }
  return false;
}

}  // namespace detail

// True when some substitution maps every literal of c onto a literal of d
// and c is no longer than d.
inline bool subsumes(const cnf::Clause& c, const cnf::Clause& d) {
  if (c.literals.size() > d.literals.size()) return false;
  detail::Matcher m(static_cast<std::size_t>(cnf::variable_count(c)));
  return detail::subsumes_from(c, d, 0, m);
}

namespace detail {

inline bool function_free(std::span<const cnf::Clause> cs) {
  for (const cnf::Clause& c : cs)
    for (const cnf::Literal& l : c.literals)
      for (const cnf::Term& t : l.args)
        if (!t.var && !t.args.empty()) return false;
  return true;
}

struct RangeRestricted {
  std::vector<cnf::Clause> clauses;
  cnf::SymbolId dom = 0;
};

// Adds -$dom(X) for every variable that occurs in no negative literal, and
// $dom(c) for each constant (or one placeholder constant when there are
// none). The new symbols take ids past every id in use.
inline RangeRestricted range_restrict(std::span<const cnf::Clause> input) {
  cnf::SymbolId top = 0;
  std::set<cnf::SymbolId> constants;
  for (const cnf::Clause& c : input)
    for (const cnf::Literal& l : c.literals) {
      top = std::max(top, l.predicate);
      for (const cnf::Term& t : l.args)
        if (!t.var) {
          top = std::max(top, static_cast<cnf::SymbolId>(t.id));
          constants.insert(static_cast<cnf::SymbolId>(t.id));
        }
    }
  RangeRestricted out;
  out.dom = top + 1;
  if (constants.empty()) constants.insert(top + 2);
  for (const cnf::Clause& c : input) {
    std::set<std::int32_t> guarded, open;
    for (const cnf::Literal& l : c.literals)
      for (const cnf::Term& t : l.args)
        if (t.var) (l.positive ? open : guarded).insert(t.id);
    cnf::Clause r = c;
    for (std::int32_t v : open)
      if (!guarded.count(v)) r.literals.push_back({false, out.dom, {cnf::Term::variable(v)}});
    out.clauses.push_back(std::move(r));
  }
  for (cnf::SymbolId k : constants)
    out.clauses.push_back({{{true, out.dom, {cnf::Term::symbol(k)}}}, cnf::kNoOrigin});
  return out;
}

}  // namespace detail

class Refuter {
 public:
  Refuter(const Budget& budget, const ProverOptions& opts) : budget_(budget), opts_(opts) {
    budget_.validate();
  }

  RefutationOutcome run(std::span<const cnf::Clause> input) {
    start_ = std::chrono::steady_clock::now();
    detail::RangeRestricted rr;
    if (opts_.range_restrict && detail::function_free(input)) {
      rr = detail::range_restrict(input);
      input = rr.clauses;
      select_ = true;
      dom_ = rr.dom;
    }
    for (const cnf::Clause& c : input) {
      if (add(c, "input", {})) return finish(Status::Refuted);
    }

    while (!passive_.empty()) {
      if (iterations_ >= budget_.max_iterations) return finish(Status::BudgetExhausted);
      if (active_.size() + passive_.size() > budget_.max_kept_clauses)
        return finish(Status::BudgetExhausted);
      if (elapsed() > budget_.max_seconds) return finish(Status::BudgetExhausted);

      auto first = passive_.begin();
      std::size_t given = first->second;
      passive_.erase(first);
      ++iterations_;

      if (opts_.forward_subsumption && subsumed_by_active(store_[given].clause)) continue;
      if (opts_.backward_subsumption) remove_subsumed_active(store_[given].clause);

      std::vector<Pending> fresh;
      factors(given, fresh);
      active_.push_back(given);
      for (std::size_t partner : active_) resolvents(given, partner, fresh);
      for (Pending& p : fresh)
        if (add(std::move(p.clause), p.rule, std::move(p.parents)))
          return finish(Status::Refuted);
    }
    return finish(depth_pruned_ ? Status::BudgetExhausted : Status::Saturated);
  }

 private:
  struct Entry {
    cnf::Clause clause;
    std::string rule;
    std::vector<std::size_t> parents;
  };

  struct Pending {
    cnf::Clause clause;
    const char* rule;
    std::vector<std::size_t> parents;
  };

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  bool subsumed_by_active(const cnf::Clause& c) const {
    for (std::size_t a : active_)
      if (subsumes(store_[a].clause, c)) return true;
    return false;
  }

  void remove_subsumed_active(const cnf::Clause& c) {
    std::erase_if(active_, [&](std::size_t a) { return subsumes(c, store_[a].clause); });
  }

  // Returns true when the empty clause was added.
  bool add(cnf::Clause c, const std::string& rule, std::vector<std::size_t> parents) {
    if (!clausify::simplify(c)) return false;
    if (cnf::max_term_depth(c) > budget_.max_term_depth) {
      depth_pruned_ = true;
      return false;
    }
    std::string key = detail::canonicalize(c);
    if (!seen_.insert(std::move(key)).second) return false;
    if (!c.empty() && opts_.forward_subsumption && subsumed_by_active(c)) return false;

    std::size_t id = store_.size();
    std::size_t weight = cnf::symbol_count(c);
    bool is_empty = c.empty();
    store_.push_back({std::move(c), rule, std::move(parents)});
    if (is_empty) {
      empty_id_ = id;
      return true;
    }
    passive_.emplace(weight, id);
    return false;
  }

  // Index of the selected literal, or npos when every literal may be
  // resolved upon. Domain guards are selected last.
  std::size_t selected(const cnf::Clause& c) const {
    if (!select_) return kAll;
    std::size_t guard = kAll;
    for (std::size_t i = 0; i < c.literals.size(); ++i) {
      if (c.literals[i].positive) continue;
      if (c.literals[i].predicate != dom_) return i;
      if (guard == kAll) guard = i;
    }
    return guard;
  }

  void factors(std::size_t given, std::vector<Pending>& out) {
    const cnf::Clause& g = store_[given].clause;
    if (selected(g) != kAll) return;  // only clauses without a selection factor
    Bindings b(static_cast<std::size_t>(cnf::variable_count(g)));
    for (std::size_t i = 0; i < g.literals.size(); ++i)
      for (std::size_t j = i + 1; j < g.literals.size(); ++j) {
        const cnf::Literal& li = g.literals[i];
        const cnf::Literal& lj = g.literals[j];
        if (li.positive != lj.positive || li.predicate != lj.predicate) continue;
        std::size_t mark = b.mark();
        if (b.unify_args(li.args, lj.args)) {
          cnf::Clause f;
          f.origin = g.origin;
          for (std::size_t k = 0; k < g.literals.size(); ++k)
            if (k != j) f.literals.push_back(b.resolve(g.literals[k]));
          out.push_back({std::move(f), "factor", {given}});
        }
        b.undo(mark);
      }
  }

  void resolvents(std::size_t given, std::size_t partner, std::vector<Pending>& out) {
    const cnf::Clause& g = store_[given].clause;
    std::int32_t off = cnf::variable_count(g);
    cnf::Clause p;
    p.origin = store_[partner].clause.origin;
    for (const cnf::Literal& l : store_[partner].clause.literals) {
      cnf::Literal r{l.positive, l.predicate, {}};
      for (const cnf::Term& a : l.args) r.args.push_back(detail::offset_vars(a, off));
      p.literals.push_back(std::move(r));
    }
    Bindings b(static_cast<std::size_t>(off + cnf::variable_count(p)));
    std::size_t sel_g = selected(g), sel_p = selected(p);
    for (std::size_t i = 0; i < g.literals.size(); ++i)
      for (std::size_t j = 0; j < p.literals.size(); ++j) {
        if ((sel_g != kAll && i != sel_g) || (sel_p != kAll && j != sel_p)) continue;
        const cnf::Literal& li = g.literals[i];
        const cnf::Literal& lj = p.literals[j];
        if (li.positive == lj.positive || li.predicate != lj.predicate) continue;
        std::size_t mark = b.mark();
        if (b.unify_args(li.args, lj.args)) {
          cnf::Clause r;
          r.origin = g.origin;
          for (std::size_t k = 0; k < g.literals.size(); ++k)
            if (k != i) r.literals.push_back(b.resolve(g.literals[k]));
          for (std::size_t k = 0; k < p.literals.size(); ++k)
            if (k != j) r.literals.push_back(b.resolve(p.literals[k]));
          out.push_back({std::move(r), "resolve", {given, partner}});
        }
        b.undo(mark);
      }
  }

  RefutationOutcome finish(Status s) {
    RefutationOutcome o;
    o.status = s;
    o.kept_clause_count = active_.size() + passive_.size();
    o.iterations = iterations_;
    o.elapsed_seconds = elapsed();
    if (s == Status::Refuted) {
      std::set<std::size_t> needed;
      std::vector<std::size_t> stack{empty_id_};
      while (!stack.empty()) {
        std::size_t id = stack.back();
        stack.pop_back();
        if (!needed.insert(id).second) continue;
        for (std::size_t p : store_[id].parents) stack.push_back(p);
      }
      for (std::size_t id : needed)
        o.proof_trace.push_back({id, store_[id].clause, store_[id].rule, store_[id].parents});
    }
    return o;
  }

  Budget budget_;
  ProverOptions opts_;
  std::chrono::steady_clock::time_point start_;
  std::vector<Entry> store_;
  std::set<std::pair<std::size_t, std::size_t>> passive_;  // (symbol count, id)
  std::vector<std::size_t> active_;
  std::unordered_set<std::string> seen_;
  std::size_t iterations_ = 0;
  std::size_t empty_id_ = 0;
  bool depth_pruned_ = false;
  bool select_ = false;
  cnf::SymbolId dom_ = 0;
  static constexpr std::size_t kAll = static_cast<std::size_t>(-1);
};

inline RefutationOutcome refute(std::span<const cnf::Clause> clauses, const Budget& budget = {},
                                const ProverOptions& opts = {}) {
  return Refuter(budget, opts).run(clauses);
}

inline std::string format_proof(const RefutationOutcome& o, const cnf::SymbolTable& symbols) {
  std::string out;
  for (const ProofStep& s : o.proof_trace) {
    out += std::to_string(s.id) + ": " + cnf::to_string(s.clause, symbols) + "  [" + s.rule;
    for (std::size_t i = 0; i < s.parents.size(); ++i)
      out += (i ? "," : " ") + std::to_string(s.parents[i]);
    out += "]\n";
  }
  return out;
}

}  // namespace folpo::prover
