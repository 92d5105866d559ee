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

// Ground-enumeration satisfiability oracle for function-free formula sets.
//
// Formulas are evaluated directly (no clausification) over the domain
// D = constants + one fresh element per existential occurrence. Each
// ground atom over D is a boolean; a formula's truth table over every
// assignment is a bitset, so satisfiability is "some bit survives the
// conjunction of all tables".
//
// This is exact when no existential sits under a universal once negations
// are pushed inward (the Bernays-Schoenfinkel class): the Herbrand universe
// of the Skolemized set is then the constants plus one Skolem constant per
// existential, and extra domain elements can copy an existing one.
// The oracle throws for anything outside that fragment.

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "folpo/syntax/ast.hpp"

namespace folpo::testing {

using syntax::Formula;
using syntax::Term;

// Universal closure, written out here so the oracle shares no code with the
// clausifier.
inline Formula universal_closure(const Formula& f) {
  Formula out = f;
  std::vector<std::string> free = syntax::free_variables(f);
  for (auto it = free.rbegin(); it != free.rend(); ++it) out = Formula::forall(*it, out);
  return out;
}

class GroundOracle {
 public:
  static constexpr std::size_t kMaxAtoms = 22;

  explicit GroundOracle(std::vector<Formula> formulas, std::size_t max_atoms = kMaxAtoms)
      : formulas_(std::move(formulas)) {
    for (Formula& f : formulas_) f = universal_closure(f);
    std::size_t existentials = 0;
    for (const Formula& f : formulas_) {
      scan(f);
      existentials += count_existentials(f, true, false);
    }
    for (const std::string& c : constants_) domain_index_.emplace(c, domain_index_.size());
    domain_size_ = constants_.size() + existentials;
    if (domain_size_ == 0) domain_size_ = 1;

    for (const auto& [name, arity] : predicates_) {
      std::size_t count = 1;
      for (std::size_t i = 0; i < arity; ++i) count *= domain_size_;
      predicate_base_.emplace(std::make_pair(name, arity), atom_count_);
      atom_count_ += count;
    }
    if (atom_count_ > max_atoms)
      throw std::invalid_argument("too many ground atoms for enumeration: " +
                                  std::to_string(atom_count_));
    std::size_t rows = std::size_t{1} << atom_count_;
    words_ = std::max<std::size_t>(1, rows / 64);
    valid_mask_ = rows >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << rows) - 1);
  }

  std::size_t atom_count() const { return atom_count_; }
  std::size_t domain_size() const { return domain_size_; }

  bool satisfiable() const {
    Table acc = ones();
    for (const Formula& f : formulas_) {
      Env env;
      acc = and_(acc, eval(f, env));
    }
    for (std::size_t w = 0; w < words_; ++w)
      if (acc[w] & mask(w)) return true;
    return false;
  }

  static bool satisfiable(const std::vector<Formula>& fs, std::size_t max_atoms = kMaxAtoms) {
    return GroundOracle(fs, max_atoms).satisfiable();
  }

 private:
  using Table = std::vector<std::uint64_t>;
  using Env = std::vector<std::pair<std::string, std::size_t>>;

  void scan_term(const Term& t) {
    if (t.is_function()) throw std::invalid_argument("oracle handles function-free input only");
    if (t.is_constant()) constants_.insert(t.name);
  }

  void scan(const Formula& f) {
    if (f.kind == Formula::Kind::Equality)
      throw std::invalid_argument("oracle does not interpret equality");
    if (f.kind == Formula::Kind::Predicate) {
      predicates_.insert({f.name, f.args.size()});
      for (const Term& t : f.args) scan_term(t);
      return;
    }
    for (const Formula& c : f.children) scan(c);
  }

  // Counts quantifiers that act existentially under the current polarity.
  // Biconditionals see both polarities. Throws when an existential would be
  // nested under a universal.
  static std::size_t count_existentials(const Formula& f, bool positive, bool under_universal) {
    using K = Formula::Kind;
    switch (f.kind) {
      case K::Predicate:
      case K::Equality:
        return 0;
      case K::Not:
        return count_existentials(f.operand(), !positive, under_universal);
      case K::And:
      case K::Or:
        return count_existentials(f.lhs(), positive, under_universal) +
               count_existentials(f.rhs(), positive, under_universal);
      case K::Implies:
        return count_existentials(f.lhs(), !positive, under_universal) +
               count_existentials(f.rhs(), positive, under_universal);
      case K::Iff:
      case K::Xor: {
        std::size_t n = 0;
        for (bool p : {true, false})
          n += count_existentials(f.lhs(), p, under_universal) +
               count_existentials(f.rhs(), p, under_universal);
        return n;
      }
      case K::ForAll:
      case K::Exists: {
        bool existential = (f.kind == K::Exists) == positive;
        if (existential && under_universal)
          throw std::invalid_argument("existential under universal: outside the oracle fragment");
        return (existential ? 1 : 0) +
               count_existentials(f.body(), positive, under_universal || !existential);
      }
    }
    return 0;
  }

  std::uint64_t mask(std::size_t w) const { return w + 1 == words_ ? valid_mask_ : ~std::uint64_t{0}; }
  Table ones() const { return Table(words_, ~std::uint64_t{0}); }
  Table zeros() const { return Table(words_, 0); }
  static Table and_(Table a, const Table& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] &= b[i];
    return a;
  }
  static Table or_(Table a, const Table& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] |= b[i];
    return a;
  }
  static Table not_(Table a) {
    for (std::uint64_t& w : a) w = ~w;
    return a;
  }

  // Truth table of atom k: row r has bit k of r set.
  Table atom_table(std::size_t k) const {
    Table t(words_, 0);
    if (k < 6) {
      std::uint64_t pattern = 0;
      for (std::size_t r = 0; r < 64; ++r)
        if ((r >> k) & 1) pattern |= std::uint64_t{1} << r;
      for (std::uint64_t& w : t) w = pattern;
    } else {
      std::size_t block = std::size_t{1} << (k - 6);  // words per run
      for (std::size_t w = 0; w < words_; ++w)
        if ((w / block) & 1) t[w] = ~std::uint64_t{0};
    }
    return t;
  }

  std::size_t element(const Term& t, const Env& env) const {
    if (t.is_variable()) {
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == t.name) return it->second;
      throw std::logic_error("unbound variable in oracle: " + t.name);
    }
    return domain_index_.at(t.name);
  }

  Table eval(const Formula& f, Env& env) const {
    using K = Formula::Kind;
    switch (f.kind) {
      case K::Predicate: {
        std::size_t idx = 0;
        for (const Term& a : f.args) idx = idx * domain_size_ + element(a, env);
        return atom_table(predicate_base_.at({f.name, f.args.size()}) + idx);
      }
      case K::Equality:
        throw std::logic_error("equality");
      case K::Not:
        return not_(eval(f.operand(), env));
      case K::And:
        return and_(eval(f.lhs(), env), eval(f.rhs(), env));
      case K::Or:
        return or_(eval(f.lhs(), env), eval(f.rhs(), env));
      case K::Implies:
        return or_(not_(eval(f.lhs(), env)), eval(f.rhs(), env));
      case K::Iff:
      case K::Xor: {
        Table a = eval(f.lhs(), env);
        Table b = eval(f.rhs(), env);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = ~(a[i] ^ b[i]);
        return f.kind == K::Iff ? a : not_(a);
      }
      case K::ForAll:
      case K::Exists: {
        bool all = f.kind == K::ForAll;
        Table acc = all ? ones() : zeros();
        for (std::size_t d = 0; d < domain_size_; ++d) {
          env.emplace_back(f.name, d);
          Table body = eval(f.body(), env);
          env.pop_back();
          acc = all ? and_(std::move(acc), body) : or_(std::move(acc), body);
        }
        return acc;
      }
    }
    return zeros();
  }

  std::vector<Formula> formulas_;
  std::set<std::string> constants_;
  std::set<std::pair<std::string, std::size_t>> predicates_;
  std::map<std::string, std::size_t> domain_index_;
  std::map<std::pair<std::string, std::size_t>, std::size_t> predicate_base_;
  std::size_t domain_size_ = 0;
  std::size_t atom_count_ = 0;
  std::size_t words_ = 1;
  std::uint64_t valid_mask_ = ~std::uint64_t{0};
};

enum class OracleLabel { True, False, Uncertain, Inconsistent };

// Label by the same two satisfiability questions the prover answers.
inline OracleLabel ground_label(const std::vector<Formula>& premises, const Formula& conclusion,
                                std::size_t max_atoms = GroundOracle::kMaxAtoms) {
  Formula closed = universal_closure(conclusion);
  std::vector<Formula> with_neg = premises, with_pos = premises;
  with_neg.push_back(Formula::negation(closed));
  with_pos.push_back(closed);
  bool entailed = !GroundOracle::satisfiable(with_neg, max_atoms);
  bool refuted = !GroundOracle::satisfiable(with_pos, max_atoms);
  if (entailed && refuted) return OracleLabel::Inconsistent;
  if (entailed) return OracleLabel::True;
  if (refuted) return OracleLabel::False;
  return OracleLabel::Uncertain;
}

}  // namespace folpo::testing
