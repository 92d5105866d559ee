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

#pragma once

#include <string>
#include <vector>

#include "folpo/syntax/ast.hpp"

namespace folpo::syntax {

namespace detail {

// Innermost binder first; -1 when the name is free.
inline long binder_index(const std::vector<std::string>& scope, const std::string& name) {
  for (std::size_t i = scope.size(); i-- > 0;)
    if (scope[i] == name) return static_cast<long>(i);
  return -1;
}

inline bool alpha_equal(const Term& a, const Term& b, const std::vector<std::string>& sa,
                        const std::vector<std::string>& sb) {
  if (a.kind != b.kind) return false;
  if (a.is_variable()) {
    long ia = binder_index(sa, a.name);
    long ib = binder_index(sb, b.name);
    if (ia != ib) return false;
    return ia >= 0 || a.name == b.name;
  }
  if (a.name != b.name || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!alpha_equal(a.args[i], b.args[i], sa, sb)) return false;
  return true;
}

inline bool alpha_equal(const Formula& f, const Formula& g, std::vector<std::string>& sf,
                        std::vector<std::string>& sg) {
  if (f.kind != g.kind) return false;
  if (f.is_atom()) {
    if (f.name != g.name || f.args.size() != g.args.size()) return false;
    for (std::size_t i = 0; i < f.args.size(); ++i)
      if (!alpha_equal(f.args[i], g.args[i], sf, sg)) return false;
    return true;
  }
  if (f.is_quantifier()) {
    sf.push_back(f.name);
    sg.push_back(g.name);
    bool eq = alpha_equal(f.body(), g.body(), sf, sg);
    sf.pop_back();
    sg.pop_back();
    return eq;
  }
  if (f.children.size() != g.children.size()) return false;
  for (std::size_t i = 0; i < f.children.size(); ++i)
    if (!alpha_equal(f.children[i], g.children[i], sf, sg)) return false;
  return true;
}

}  // namespace detail

// True iff f and g differ only by a consistent renaming of bound variables.
inline bool alpha_equal(const Formula& f, const Formula& g) {
  std::vector<std::string> sf, sg;
  return detail::alpha_equal(f, g, sf, sg);
}

}  // namespace folpo::syntax
