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

// Clausal form consumed by the prover. Symbols are interned per story;
// variables are clause-local integers, implicitly universally quantified.

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace folpo::cnf {

using SymbolId = std::uint32_t;

class SymbolTable {
 public:
  SymbolId intern(std::string_view name) {
    auto it = ids_.find(std::string(name));
    if (it != ids_.end()) return it->second;
    SymbolId id = static_cast<SymbolId>(names_.size());
    names_.emplace_back(name);
    ids_.emplace(names_.back(), id);
    return id;
  }

  bool contains(std::string_view name) const { return ids_.count(std::string(name)) != 0; }
  const std::string& name(SymbolId id) const { return names_.at(id); }
  // Like name(), but symbols added by the prover itself print as $<id>.
  std::string label(SymbolId id) const {
    return id < names_.size() ? names_[id] : "$" + std::to_string(id);
  }
  std::size_t size() const { return names_.size(); }

  // Reserved symbol for the equality predicate.
  static constexpr std::string_view kEquality = "=";

 private:
  std::vector<std::string> names_;
  std::map<std::string, SymbolId> ids_;
};

struct Term {
  std::int32_t id = 0;  // variable index when `var`, otherwise a SymbolId
  bool var = false;
  std::vector<Term> args;

  static Term variable(std::int32_t v) { return Term{v, true, {}}; }
  static Term symbol(SymbolId s, std::vector<Term> a = {}) {
    return Term{static_cast<std::int32_t>(s), false, std::move(a)};
  }

  friend bool operator==(const Term&, const Term&) = default;
};

struct Literal {
  bool positive = true;
  SymbolId predicate = 0;
  std::vector<Term> args;

  friend bool operator==(const Literal&, const Literal&) = default;
};

// Origin marker for clauses that come from no source formula (axioms).
inline constexpr std::size_t kNoOrigin = std::numeric_limits<std::size_t>::max();

struct Clause {
  std::vector<Literal> literals;
  std::size_t origin = kNoOrigin;

  bool empty() const { return literals.empty(); }
};

inline std::size_t term_size(const Term& t) {
  std::size_t n = 1;
  for (const Term& a : t.args) n += term_size(a);
  return n;
}

inline std::size_t term_depth(const Term& t) {
  std::size_t d = 0;
  for (const Term& a : t.args) d = std::max(d, term_depth(a));
  return d + 1;
}

inline std::size_t symbol_count(const Clause& c) {
  std::size_t n = 0;
  for (const Literal& l : c.literals) {
    ++n;
    for (const Term& a : l.args) n += term_size(a);
  }
  return n;
}

inline std::size_t max_term_depth(const Clause& c) {
  std::size_t d = 0;
  for (const Literal& l : c.literals)
    for (const Term& a : l.args) d = std::max(d, term_depth(a));
  return d;
}

inline std::int32_t max_variable(const Term& t) {
  std::int32_t m = t.var ? t.id : -1;
  for (const Term& a : t.args) m = std::max(m, max_variable(a));
  return m;
}

inline std::int32_t variable_count(const Clause& c) {
  std::int32_t m = -1;
  for (const Literal& l : c.literals)
    for (const Term& a : l.args) m = std::max(m, max_variable(a));
  return m + 1;
}

inline std::string to_string(const Term& t, const SymbolTable& st) {
  if (t.var) return "X" + std::to_string(t.id);
  std::string out = st.label(static_cast<SymbolId>(t.id));
  if (!t.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < t.args.size(); ++i) {
      if (i) out += ", ";
      out += to_string(t.args[i], st);
    }
    out += ')';
  }
  return out;
}

inline std::string to_string(const Literal& l, const SymbolTable& st) {
  std::string out = l.positive ? "" : "-";
  const std::string p = st.label(l.predicate);
  if (p == SymbolTable::kEquality && l.args.size() == 2)
    return out + "(" + to_string(l.args[0], st) + " = " + to_string(l.args[1], st) + ")";
  out += p;
  if (!l.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < l.args.size(); ++i) {
      if (i) out += ", ";
      out += to_string(l.args[i], st);
    }
    out += ')';
  }
  return out;
}

inline std::string to_string(const Clause& c, const SymbolTable& st) {
  if (c.literals.empty()) return "$false";
  std::string out;
  for (std::size_t i = 0; i < c.literals.size(); ++i) {
    if (i) out += " | ";
    out += to_string(c.literals[i], st);
  }
  return out;
}

}  // namespace folpo::cnf
