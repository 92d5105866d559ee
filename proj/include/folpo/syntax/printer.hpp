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

#include <stdexcept>
#include <string>
#include <string_view>

#include "folpo/syntax/ast.hpp"

namespace folpo::syntax {

enum class Dialect : std::uint8_t { Ascii, Unicode };

inline Dialect parse_dialect(std::string_view s) {
  if (s == "ascii") return Dialect::Ascii;
  if (s == "unicode") return Dialect::Unicode;
  throw std::invalid_argument("unknown dialect '" + std::string(s) + "' (expected ascii|unicode)");
}

inline std::string render(const Term& t) {
  if (t.args.empty()) return t.name;
  std::string out = t.name + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ", ";
    out += render(t.args[i]);
  }
  return out + ")";
}

namespace detail {

struct Symbols {
  std::string_view neg, conj, disj, xor_, imp, iff, all, ex;
  bool quantifier_dot;
};

inline constexpr Symbols kAscii{"-", "&", "|", "", "->", "<->", "all ", "exists ", true};
inline constexpr Symbols kUnicode{"\xC2\xAC",     "\xE2\x88\xA7", "\xE2\x88\xA8",
                                  "\xE2\x8A\x95", "\xE2\x86\x92", "\xE2\x86\x94",
                                  "\xE2\x88\x80", "\xE2\x88\x83", false};

// Binary nodes always carry their own parentheses; `bare` drops the outer
// pair where the caller already provides one (quantifier bodies).
class Printer {
 public:
  explicit Printer(Dialect d) : sym_(d == Dialect::Ascii ? kAscii : kUnicode) {}

  void formula(const Formula& f, std::string& out, bool bare = false) const {
    using K = Formula::Kind;
    switch (f.kind) {
      case K::Predicate:
        out += f.name;
        if (!f.args.empty()) {
          out += '(';
          for (std::size_t i = 0; i < f.args.size(); ++i) {
            if (i) out += ", ";
            out += render(f.args[i]);
          }
          out += ')';
        }
        return;
      case K::Equality:
        if (!bare) out += '(';
        out += render(f.args[0]);
        out += " = ";
        out += render(f.args[1]);
        if (!bare) out += ')';
        return;
      case K::Not:
        out += sym_.neg;
        operand(f.operand(), out);
        return;
      case K::ForAll:
      case K::Exists:
        out += f.kind == K::ForAll ? sym_.all : sym_.ex;
        out += f.name;
        out += sym_.quantifier_dot ? ". (" : " (";
        formula(f.body(), out, true);
        out += ')';
        return;
      case K::Xor:
        if (sym_.xor_.empty()) {
          // No xor in the ASCII notation: spell out the either/or form.
          const Formula& a = f.lhs();
          const Formula& b = f.rhs();
          if (!bare) out += '(';
          out += '(';
          operand(a, out);
          out += ' ';
          out += sym_.conj;
          out += ' ';
          out += sym_.neg;
          operand(b, out);
          out += ") ";
          out += sym_.disj;
          out += " (";
          out += sym_.neg;
          operand(a, out);
          out += ' ';
          out += sym_.conj;
          out += ' ';
          operand(b, out);
          out += ')';
          if (!bare) out += ')';
          return;
        }
        [[fallthrough]];
      case K::And:
      case K::Or:
      case K::Implies:
      case K::Iff:
        if (!bare) out += '(';
        operand(f.lhs(), out);
        out += ' ';
        out += op(f.kind);
        out += ' ';
        operand(f.rhs(), out);
        if (!bare) out += ')';
        return;
    }
  }

 private:
  std::string_view op(Formula::Kind k) const {
    using K = Formula::Kind;
    switch (k) {
      case K::And: return sym_.conj;
      case K::Or: return sym_.disj;
      case K::Xor: return sym_.xor_;
      case K::Implies: return sym_.imp;
      case K::Iff: return sym_.iff;
      default: return "?";
    }
  }

  // A quantifier inside a larger formula is parenthesized so its body cannot
  // swallow what follows.
  void operand(const Formula& f, std::string& out) const {
    if (f.is_quantifier()) {
      out += '(';
      formula(f, out);
      out += ')';
    } else {
      formula(f, out);
    }
  }

  Symbols sym_;
};

}  // namespace detail

inline std::string render(const Formula& f, Dialect dialect = Dialect::Ascii) {
  std::string out;
  detail::Printer(dialect).formula(f, out);
  return out;
}

}  // namespace folpo::syntax
