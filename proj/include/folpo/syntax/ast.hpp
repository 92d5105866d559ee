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

// Abstract syntax of first-order formulas: terms, formulas, and a few
// structural queries shared by the printer, clausifier and linter.

#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace folpo::syntax {

struct Term {
  enum class Kind : std::uint8_t { Variable, Constant, Function };

  Kind kind = Kind::Constant;
  std::string name;
  std::vector<Term> args;  // non-empty iff kind == Function

  static Term variable(std::string n) { return Term{Kind::Variable, std::move(n), {}}; }
  static Term constant(std::string n) { return Term{Kind::Constant, std::move(n), {}}; }
  static Term function(std::string n, std::vector<Term> a) {
    return Term{Kind::Function, std::move(n), std::move(a)};
  }

  bool is_variable() const { return kind == Kind::Variable; }
  bool is_constant() const { return kind == Kind::Constant; }
  bool is_function() const { return kind == Kind::Function; }

  friend bool operator==(const Term&, const Term&) = default;
};

struct Formula {
  enum class Kind : std::uint8_t {
    Predicate,
    Equality,
    Not,
    And,
    Or,
    Xor,
    Implies,
    Iff,
    ForAll,
    Exists,
  };

  Kind kind = Kind::Predicate;
  // Predicate name, or the bound variable of a quantifier.
  std::string name;
  // Predicate arguments; an Equality keeps its two sides here.
  std::vector<Term> args;
  // One child for Not and quantifiers, two for binary connectives.
  std::vector<Formula> children;

  static Formula predicate(std::string n, std::vector<Term> a = {}) {
    return Formula{Kind::Predicate, std::move(n), std::move(a), {}};
  }
  static Formula equality(Term l, Term r) {
    std::vector<Term> a;
    a.push_back(std::move(l));
    a.push_back(std::move(r));
    return Formula{Kind::Equality, {}, std::move(a), {}};
  }
  static Formula negation(Formula f) { return unary(Kind::Not, {}, std::move(f)); }
  static Formula conj(Formula l, Formula r) { return binary(Kind::And, std::move(l), std::move(r)); }
  static Formula disj(Formula l, Formula r) { return binary(Kind::Or, std::move(l), std::move(r)); }
  static Formula exclusive(Formula l, Formula r) {
    return binary(Kind::Xor, std::move(l), std::move(r));
  }
  static Formula implies(Formula l, Formula r) {
    return binary(Kind::Implies, std::move(l), std::move(r));
  }
  static Formula iff(Formula l, Formula r) { return binary(Kind::Iff, std::move(l), std::move(r)); }
  static Formula forall(std::string var, Formula body) {
    return unary(Kind::ForAll, std::move(var), std::move(body));
  }
  static Formula exists(std::string var, Formula body) {
    return unary(Kind::Exists, std::move(var), std::move(body));
  }

  static Formula binary(Kind k, Formula l, Formula r) {
    Formula f{k, {}, {}, {}};
    f.children.reserve(2);
    f.children.push_back(std::move(l));
    f.children.push_back(std::move(r));
    return f;
  }
  static Formula unary(Kind k, std::string n, Formula sub) {
    Formula f{k, std::move(n), {}, {}};
    f.children.push_back(std::move(sub));
    return f;
  }

  bool is_atom() const { return kind == Kind::Predicate || kind == Kind::Equality; }
  bool is_quantifier() const { return kind == Kind::ForAll || kind == Kind::Exists; }
  bool is_binary() const {
    return kind == Kind::And || kind == Kind::Or || kind == Kind::Xor || kind == Kind::Implies ||
           kind == Kind::Iff;
  }

  const Formula& lhs() const { return children[0]; }
  const Formula& rhs() const { return children[1]; }
  const Formula& body() const { return children[0]; }
  const Formula& operand() const { return children[0]; }

  friend bool operator==(const Formula&, const Formula&) = default;
};

namespace detail {

inline void collect_free(const Term& t, std::vector<std::string>& bound,
                         std::vector<std::string>& out) {
  if (t.is_variable()) {
    if (std::find(bound.begin(), bound.end(), t.name) == bound.end() &&
        std::find(out.begin(), out.end(), t.name) == out.end())
      out.push_back(t.name);
    return;
  }
  for (const Term& a : t.args) collect_free(a, bound, out);
}

inline void collect_free(const Formula& f, std::vector<std::string>& bound,
                         std::vector<std::string>& out) {
  if (f.is_atom()) {
    for (const Term& a : f.args) collect_free(a, bound, out);
    return;
  }
  if (f.is_quantifier()) {
    bound.push_back(f.name);
    collect_free(f.body(), bound, out);
    bound.pop_back();
    return;
  }
  for (const Formula& c : f.children) collect_free(c, bound, out);
}

inline void collect_names(const Term& t, std::set<std::string>& out) {
  out.insert(t.name);
  for (const Term& a : t.args) collect_names(a, out);
}

}  // namespace detail

// Free variables in order of first occurrence (left to right).
inline std::vector<std::string> free_variables(const Formula& f) {
  std::vector<std::string> bound, out;
  detail::collect_free(f, bound, out);
  return out;
}

inline bool is_closed(const Formula& f) { return free_variables(f).empty(); }

// Every identifier in the formula: predicates, functions, constants, and
// variables (bound and free).
inline void collect_names(const Formula& f, std::set<std::string>& out) {
  if (!f.name.empty()) out.insert(f.name);
  for (const Term& a : f.args) detail::collect_names(a, out);
  for (const Formula& c : f.children) collect_names(c, out);
}

inline std::size_t depth(const Formula& f) {
  std::size_t d = 0;
  for (const Formula& c : f.children) d = std::max(d, depth(c));
  return d + 1;
}

// Replaces every free occurrence of `var` with `replacement`. Callers make
// sure the replacement cannot be captured (the clausifier renames apart first).
inline Term substitute(const Term& t, const std::string& var, const Term& replacement) {
  if (t.is_variable()) return t.name == var ? replacement : t;
  Term out = t;
  for (Term& a : out.args) a = substitute(a, var, replacement);
  return out;
}

inline Formula substitute(const Formula& f, const std::string& var, const Term& replacement) {
  if (f.is_quantifier() && f.name == var) return f;
  Formula out = f;
  for (Term& a : out.args) a = substitute(a, var, replacement);
  for (Formula& c : out.children) c = substitute(c, var, replacement);
  return out;
}

// Rewrites every Xor into its either/or expansion (A & -B) | (-A & B).
inline Formula desugar_xor(const Formula& f) {
  if (f.is_atom()) return f;
  Formula out = f;
  for (Formula& c : out.children) c = desugar_xor(c);
  if (out.kind == Formula::Kind::Xor) {
    Formula a = out.children[0];
    Formula b = out.children[1];
    return Formula::disj(Formula::conj(a, Formula::negation(b)),
                         Formula::conj(Formula::negation(a), b));
  }
  return out;
}

}  // namespace folpo::syntax
