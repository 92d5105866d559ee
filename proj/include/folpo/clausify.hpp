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

// Formula -> clause set pipeline:
//   universal closure of free variables
//   -> negation normal form (Implies/Iff/Xor eliminated)
//   -> Skolemization, inside out, each Skolem term taking only the
//      universals that occur in the existential's scope
//   -> CNF by plain distribution of | over &.

#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "folpo/cnf.hpp"
#include "folpo/fol_story.hpp"
#include "folpo/syntax/ast.hpp"

namespace folpo::clausify {

using syntax::Formula;
using syntax::Term;

struct ClauseExplosion : std::runtime_error {
  ClauseExplosion(std::size_t formula, std::size_t limit)
      : std::runtime_error("formula " + std::to_string(formula) + " yields more than " +
                           std::to_string(limit) + " clauses"),
        formula_index(formula) {}
  std::size_t formula_index;
};

struct Options {
  // Adds reflexivity, symmetry, transitivity and congruence clauses for every
  // symbol of arity <= 3; '=' is otherwise an ordinary binary predicate.
  bool equality_axioms = false;
  std::size_t max_clauses_per_formula = 4096;
};

inline Formula close_free(const Formula& f) {
  std::vector<std::string> free = syntax::free_variables(f);
  Formula out = f;
  for (auto it = free.rbegin(); it != free.rend(); ++it) out = Formula::forall(*it, std::move(out));
  return out;
}

namespace detail {

inline Formula nnf(const Formula& f, bool neg) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Predicate:
    case K::Equality:
      return neg ? Formula::negation(f) : f;
    case K::Not:
      return nnf(f.operand(), !neg);
    case K::And:
      return neg ? Formula::disj(nnf(f.lhs(), true), nnf(f.rhs(), true))
                 : Formula::conj(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case K::Or:
      return neg ? Formula::conj(nnf(f.lhs(), true), nnf(f.rhs(), true))
                 : Formula::disj(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case K::Implies:
      return neg ? Formula::conj(nnf(f.lhs(), false), nnf(f.rhs(), true))
                 : Formula::disj(nnf(f.lhs(), true), nnf(f.rhs(), false));
    case K::Iff:
    case K::Xor: {
      // Xor is the negated biconditional.
      bool as_iff = (f.kind == K::Iff) != neg;
      const Formula& a = f.lhs();
      const Formula& b = f.rhs();
      if (as_iff)
        return Formula::conj(Formula::disj(nnf(a, true), nnf(b, false)),
                             Formula::disj(nnf(a, false), nnf(b, true)));
      return Formula::disj(Formula::conj(nnf(a, false), nnf(b, true)),
                           Formula::conj(nnf(a, true), nnf(b, false)));
    }
    case K::ForAll:
      return neg ? Formula::exists(f.name, nnf(f.body(), true))
                 : Formula::forall(f.name, nnf(f.body(), false));
    case K::Exists:
      return neg ? Formula::forall(f.name, nnf(f.body(), true))
                 : Formula::exists(f.name, nnf(f.body(), false));
  }
  return f;
}

}  // namespace detail

// Output uses only &, |, quantifiers, and negation directly above atoms.
inline Formula to_nnf(const Formula& f) { return detail::nnf(f, false); }

// Issues sk1, sk2, ... skipping any name already taken in the story.
class SkolemNamer {
 public:
  SkolemNamer() = default;
  explicit SkolemNamer(std::set<std::string> taken) : taken_(std::move(taken)) {}

  std::string next() {
    while (true) {
      std::string name = "sk" + std::to_string(++counter_);
      if (taken_.insert(name).second) return name;
    }
  }

  // Reserves a name for other fresh symbols (renamed variables).
  std::string fresh(const std::string& base) {
    for (std::size_t k = 1;; ++k) {
      std::string name = base + "_" + std::to_string(k);
      if (taken_.insert(name).second) return name;
    }
  }

  const std::set<std::string>& taken() const { return taken_; }

 private:
  std::set<std::string> taken_;
  std::size_t counter_ = 0;
};

namespace detail {

// Gives every quantifier in the formula a distinct variable name so later
// substitutions cannot be captured.
inline Formula rename_apart(const Formula& f, std::set<std::string>& used, SkolemNamer& names) {
  if (f.is_atom()) return f;
  if (f.is_quantifier()) {
    std::string var = f.name;
    Formula body = f.body();
    if (!used.insert(var).second) {
      var = names.fresh(f.name);
      used.insert(var);
      body = syntax::substitute(body, f.name, Term::variable(var));
    }
    return Formula::unary(f.kind, var, rename_apart(body, used, names));
  }
  Formula out = f;
  for (Formula& c : out.children) c = rename_apart(c, used, names);
  return out;
}

inline Formula skolemize(const Formula& f, std::vector<std::string>& universals,
                         SkolemNamer& names) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::ForAll: {
      universals.push_back(f.name);
      Formula body = skolemize(f.body(), universals, names);
      universals.pop_back();
      return Formula::forall(f.name, std::move(body));
    }
    case K::Exists: {
      std::vector<std::string> free = syntax::free_variables(f);
      std::vector<Term> deps;
      for (const std::string& u : universals)
        if (std::find(free.begin(), free.end(), u) != free.end()) deps.push_back(Term::variable(u));
      std::string sk = names.next();
      Term witness = deps.empty() ? Term::constant(sk) : Term::function(sk, std::move(deps));
      return skolemize(syntax::substitute(f.body(), f.name, witness), universals, names);
    }
    case K::And:
    case K::Or: {
      Formula out = f;
      for (Formula& c : out.children) c = skolemize(c, universals, names);
      return out;
    }
    default:
      return f;
  }
}

}  // namespace detail

// Input must be closed and in NNF. Skolem symbols come from `names`.
inline Formula skolemize(const Formula& nnf, SkolemNamer& names) {
  std::set<std::string> used;
  Formula renamed = detail::rename_apart(nnf, used, names);
  std::vector<std::string> universals;
  return detail::skolemize(renamed, universals, names);
}

inline Formula skolemize(const Formula& nnf) {
  std::set<std::string> taken;
  syntax::collect_names(nnf, taken);
  SkolemNamer names(std::move(taken));
  return skolemize(nnf, names);
}

namespace detail {

struct SignedAtom {
  bool positive;
  const Formula* atom;
};
using RawClause = std::vector<SignedAtom>;

inline std::vector<RawClause> distribute(const Formula& f, std::size_t limit, std::size_t origin) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::ForAll:
      return distribute(f.body(), limit, origin);
    case K::And: {
      std::vector<RawClause> l = distribute(f.lhs(), limit, origin);
      std::vector<RawClause> r = distribute(f.rhs(), limit, origin);
      if (l.size() + r.size() > limit) throw ClauseExplosion(origin, limit);
      l.insert(l.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
      return l;
    }
    case K::Or: {
      std::vector<RawClause> l = distribute(f.lhs(), limit, origin);
      std::vector<RawClause> r = distribute(f.rhs(), limit, origin);
      if (l.size() * r.size() > limit) throw ClauseExplosion(origin, limit);
      std::vector<RawClause> out;
      out.reserve(l.size() * r.size());
      for (const RawClause& a : l)
        for (const RawClause& b : r) {
          RawClause c = a;
          c.insert(c.end(), b.begin(), b.end());
          out.push_back(std::move(c));
        }
      return out;
    }
    case K::Not:
      return {RawClause{{false, &f.operand()}}};
    case K::Predicate:
    case K::Equality:
      return {RawClause{{true, &f}}};
    default:
      throw std::logic_error("distribute: formula is not skolemized NNF");
  }
}

class ClauseBuilder {
 public:
  explicit ClauseBuilder(cnf::SymbolTable& symbols) : symbols_(symbols) {}

  cnf::Term term(const Term& t) {
    if (t.is_variable()) {
      auto [it, inserted] = vars_.emplace(t.name, static_cast<std::int32_t>(vars_.size()));
      return cnf::Term::variable(it->second);
    }
    std::vector<cnf::Term> args;
    args.reserve(t.args.size());
    for (const Term& a : t.args) args.push_back(term(a));
    return cnf::Term::symbol(symbols_.intern(t.name), std::move(args));
  }

  cnf::Literal literal(const SignedAtom& s) {
    cnf::Literal lit;
    lit.positive = s.positive;
    lit.predicate = symbols_.intern(s.atom->kind == Formula::Kind::Equality
                                        ? std::string(cnf::SymbolTable::kEquality)
                                        : s.atom->name);
    for (const Term& a : s.atom->args) lit.args.push_back(term(a));
    return lit;
  }

  void reset() { vars_.clear(); }

 private:
  cnf::SymbolTable& symbols_;
  std::map<std::string, std::int32_t> vars_;
};

}  // namespace detail

// Drops duplicate literals; returns false for tautologies.
inline bool simplify(cnf::Clause& c) {
  std::vector<cnf::Literal> kept;
  for (cnf::Literal& l : c.literals) {
    bool dup = false;
    for (const cnf::Literal& k : kept) {
      if (k.predicate == l.predicate && k.args == l.args) {
        if (k.positive != l.positive) return false;
        dup = true;
        break;
      }
    }
    if (!dup) kept.push_back(std::move(l));
  }
  c.literals = std::move(kept);
  return true;
}

// Clausifies one formula, closing it first.
inline std::vector<cnf::Clause> clausify_formula(const Formula& f, std::size_t origin,
                                                 cnf::SymbolTable& symbols, SkolemNamer& names,
                                                 const Options& opts = {}) {
  Formula sk = skolemize(to_nnf(close_free(f)), names);
  std::vector<detail::RawClause> raw =
      detail::distribute(sk, opts.max_clauses_per_formula, origin);
  std::vector<cnf::Clause> out;
  detail::ClauseBuilder builder(symbols);
  for (const detail::RawClause& rc : raw) {
    builder.reset();
    cnf::Clause c;
    c.origin = origin;
    for (const detail::SignedAtom& s : rc) c.literals.push_back(builder.literal(s));
    if (simplify(c)) out.push_back(std::move(c));
  }
  return out;
}

namespace detail {

inline void collect_signature(const cnf::Term& t, std::map<cnf::SymbolId, std::size_t>& funcs) {
  if (t.var) return;
  if (!t.args.empty()) funcs.emplace(static_cast<cnf::SymbolId>(t.id), t.args.size());
  for (const cnf::Term& a : t.args) collect_signature(a, funcs);
}

inline cnf::Literal eq_lit(bool pos, cnf::SymbolId eq, cnf::Term l, cnf::Term r) {
  cnf::Literal lit{pos, eq, {}};
  lit.args.push_back(std::move(l));
  lit.args.push_back(std::move(r));
  return lit;
}

}  // namespace detail

inline std::vector<cnf::Clause> equality_axioms(const std::vector<const std::vector<cnf::Clause>*>& sets,
                                                cnf::SymbolTable& symbols) {
  using cnf::Term;
  cnf::SymbolId eq = symbols.intern(cnf::SymbolTable::kEquality);
  std::map<cnf::SymbolId, std::size_t> funcs, preds;
  for (const auto* set : sets)
    for (const cnf::Clause& c : *set)
      for (const cnf::Literal& l : c.literals) {
        if (l.predicate != eq && !l.args.empty()) preds.emplace(l.predicate, l.args.size());
        for (const cnf::Term& a : l.args) detail::collect_signature(a, funcs);
      }

  auto V = [](std::int32_t i) { return Term::variable(i); };
  std::vector<cnf::Clause> out;
  out.push_back({{detail::eq_lit(true, eq, V(0), V(0))}, cnf::kNoOrigin});
  out.push_back({{detail::eq_lit(false, eq, V(0), V(1)), detail::eq_lit(true, eq, V(1), V(0))},
                 cnf::kNoOrigin});
  out.push_back({{detail::eq_lit(false, eq, V(0), V(1)), detail::eq_lit(false, eq, V(1), V(2)),
                  detail::eq_lit(true, eq, V(0), V(2))},
                 cnf::kNoOrigin});

  // X = Y -> f(..X..) = f(..Y..), one clause per argument position.
  for (const auto& [f, arity] : funcs) {
    if (arity > 3) continue;
    for (std::size_t pos = 0; pos < arity; ++pos) {
      std::vector<Term> l, r;
      for (std::size_t i = 0; i < arity; ++i) {
        std::int32_t v = static_cast<std::int32_t>(i + 2);
        l.push_back(i == pos ? V(0) : V(v));
        r.push_back(i == pos ? V(1) : V(v));
      }
      out.push_back({{detail::eq_lit(false, eq, V(0), V(1)),
                      detail::eq_lit(true, eq, Term::symbol(f, l), Term::symbol(f, r))},
                     cnf::kNoOrigin});
    }
  }
  for (const auto& [p, arity] : preds) {
    if (arity > 3) continue;
    for (std::size_t pos = 0; pos < arity; ++pos) {
      cnf::Literal before{false, p, {}}, after{true, p, {}};
      for (std::size_t i = 0; i < arity; ++i) {
        std::int32_t v = static_cast<std::int32_t>(i + 2);
        before.args.push_back(i == pos ? V(0) : V(v));
        after.args.push_back(i == pos ? V(1) : V(v));
      }
      out.push_back({{detail::eq_lit(false, eq, V(0), V(1)), before, after}, cnf::kNoOrigin});
    }
  }
  return out;
}

struct ClausifiedStory {
  cnf::SymbolTable symbols;
  std::vector<cnf::Clause> premise_clauses;
  // The conclusion as stated, and its negation.
  std::vector<cnf::Clause> conclusion_clauses_pos;
  std::vector<cnf::Clause> conclusion_clauses_neg;
  // Indices of formulas that had free variables and were closed.
  std::vector<std::size_t> closed_free;
};

// Premise i gets origin i, the conclusion gets origin n. Throws
// ClauseExplosion when one formula exceeds the clause limit.
inline ClausifiedStory to_clauses(const FolStory& story, const Options& opts = {}) {
  ClausifiedStory out;
  std::set<std::string> taken;
  for (std::size_t i = 0; i < story.formula_count(); ++i)
    syntax::collect_names(story.formula(i), taken);
  SkolemNamer names(std::move(taken));

  for (std::size_t i = 0; i < story.premises.size(); ++i) {
    if (!syntax::is_closed(story.premises[i])) out.closed_free.push_back(i);
    std::vector<cnf::Clause> cs = clausify_formula(story.premises[i], i, out.symbols, names, opts);
    out.premise_clauses.insert(out.premise_clauses.end(), cs.begin(), cs.end());
  }
  std::size_t ci = story.premises.size();
  if (!syntax::is_closed(story.conclusion)) out.closed_free.push_back(ci);
  Formula closed = close_free(story.conclusion);
  out.conclusion_clauses_pos = clausify_formula(closed, ci, out.symbols, names, opts);
  out.conclusion_clauses_neg =
      clausify_formula(Formula::negation(closed), ci, out.symbols, names, opts);

  if (opts.equality_axioms) {
    std::vector<cnf::Clause> ax = equality_axioms(
        {&out.premise_clauses, &out.conclusion_clauses_pos, &out.conclusion_clauses_neg},
        out.symbols);
    out.premise_clauses.insert(out.premise_clauses.end(), ax.begin(), ax.end());
  }
  return out;
}

}  // namespace folpo::clausify
