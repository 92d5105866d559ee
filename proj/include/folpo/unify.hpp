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

// Robinson unification with occurs check over clause terms.

#pragma once

#include <map>
#include <optional>
#include <vector>

#include "folpo/cnf.hpp"

namespace folpo::prover {

// Idempotent: no bound variable occurs in any binding's range.
struct Substitution {
  std::map<std::int32_t, cnf::Term> bindings;

  cnf::Term apply(const cnf::Term& t) const {
    if (t.var) {
      auto it = bindings.find(t.id);
      return it == bindings.end() ? t : it->second;
    }
    cnf::Term out{t.id, false, {}};
    out.args.reserve(t.args.size());
    for (const cnf::Term& a : t.args) out.args.push_back(apply(a));
    return out;
  }

  cnf::Literal apply(const cnf::Literal& l) const {
    cnf::Literal out{l.positive, l.predicate, {}};
    out.args.reserve(l.args.size());
    for (const cnf::Term& a : l.args) out.args.push_back(apply(a));
    return out;
  }
};

// Triangular bindings indexed by variable, with an undo trail. Used by the
// prover's inner loop; `unify` below wraps it for one-shot use.
class Bindings {
 public:
  explicit Bindings(std::size_t var_count = 0) : slots_(var_count, nullptr) {}

  void resize(std::size_t n) { slots_.assign(n, nullptr); trail_.clear(); }
  std::size_t mark() const { return trail_.size(); }
  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      slots_[static_cast<std::size_t>(trail_.back())] = nullptr;
      trail_.pop_back();
    }
  }

  const cnf::Term* deref(const cnf::Term* t) const {
    while (t->var && static_cast<std::size_t>(t->id) < slots_.size() &&
           slots_[static_cast<std::size_t>(t->id)] != nullptr)
      t = slots_[static_cast<std::size_t>(t->id)];
    return t;
  }

  bool unify(const cnf::Term* a, const cnf::Term* b) {
    a = deref(a);
    b = deref(b);
    if (a->var && b->var && a->id == b->id) return true;
    if (a->var) return bind(a->id, b);
    if (b->var) return bind(b->id, a);
    if (a->id != b->id || a->args.size() != b->args.size()) return false;
    for (std::size_t i = 0; i < a->args.size(); ++i)
      if (!unify(&a->args[i], &b->args[i])) return false;
    return true;
  }

  bool unify_args(const std::vector<cnf::Term>& a, const std::vector<cnf::Term>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!unify(&a[i], &b[i])) return false;
    return true;
  }

  cnf::Term resolve(const cnf::Term& t) const {
    const cnf::Term* d = deref(&t);
    if (d->var) return *d;
    cnf::Term out{d->id, false, {}};
    out.args.reserve(d->args.size());
    for (const cnf::Term& a : d->args) out.args.push_back(resolve(a));
    return out;
  }

  cnf::Literal resolve(const cnf::Literal& l) const {
    cnf::Literal out{l.positive, l.predicate, {}};
    out.args.reserve(l.args.size());
    for (const cnf::Term& a : l.args) out.args.push_back(resolve(a));
    return out;
  }

  Substitution to_substitution() const {
    Substitution s;
    for (std::size_t v = 0; v < slots_.size(); ++v)
      if (slots_[v] != nullptr)
        s.bindings.emplace(static_cast<std::int32_t>(v),
                           resolve(cnf::Term::variable(static_cast<std::int32_t>(v))));
    return s;
  }

 private:
  bool occurs(std::int32_t v, const cnf::Term* t) const {
    t = deref(t);
    if (t->var) return t->id == v;
    for (const cnf::Term& a : t->args)
      if (occurs(v, &a)) return true;
    return false;
  }

  bool bind(std::int32_t v, const cnf::Term* t) {
    if (occurs(v, t)) return false;
    slots_[static_cast<std::size_t>(v)] = t;
    trail_.push_back(v);
    return true;
  }

  std::vector<const cnf::Term*> slots_;
  std::vector<std::int32_t> trail_;
};

namespace detail {

inline std::int32_t max_var(const cnf::Term& t) { return cnf::max_variable(t); }

}  // namespace detail

// Most general unifier of two terms, or nullopt on clash or occurs failure.
inline std::optional<Substitution> unify(const cnf::Term& s, const cnf::Term& t) {
  std::int32_t n = std::max(detail::max_var(s), detail::max_var(t)) + 1;
  Bindings b(static_cast<std::size_t>(n));
  if (!b.unify(&s, &t)) return std::nullopt;
  return b.to_substitution();
}

// Atoms unify when predicate and arity agree and arguments unify; polarity
// is ignored.
inline std::optional<Substitution> unify(const cnf::Literal& s, const cnf::Literal& t) {
  if (s.predicate != t.predicate || s.args.size() != t.args.size()) return std::nullopt;
  std::int32_t n = -1;
  for (const cnf::Term& a : s.args) n = std::max(n, detail::max_var(a));
  for (const cnf::Term& a : t.args) n = std::max(n, detail::max_var(a));
  Bindings b(static_cast<std::size_t>(n + 1));
  if (!b.unify_args(s.args, t.args)) return std::nullopt;
  return b.to_substitution();
}

}  // namespace folpo::prover
