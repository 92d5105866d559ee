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

// Recursive-descent parser for FOL formulas written in either the NLTK-style
// ASCII notation (all x. / exists x. / - & | -> <->) or Unicode notation
// (∀ ∃ ¬ ∧ ∨ ⊕ → ⇒ ↔ ⇔). The two may be mixed in one formula.
//
// Precedence, tightest first: negation, conjunction, disjunction and xor,
// implication (right associative), biconditional. A quantifier's body
// extends as far right as possible.
//
// An identifier in term position is a Variable when an enclosing quantifier
// binds it. An unbound identifier is a free Variable only when it looks like
// a conventional variable (a single letter u-z followed by optional digits),
// otherwise it is a Constant.

#pragma once

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "folpo/syntax/ast.hpp"

namespace folpo::syntax {

struct ParseDiagnostic {
  enum class Severity : std::uint8_t { Error, Warning };

  std::size_t begin = 0;  // byte offsets into the input, half open
  std::size_t end = 0;
  std::string message;
  Severity severity = Severity::Error;
};

struct ParseResult {
  std::optional<Formula> formula;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return formula.has_value(); }
};

inline bool looks_like_free_variable(std::string_view name) {
  if (name.empty() || name[0] < 'u' || name[0] > 'z') return false;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  return true;
}

namespace detail {

enum class Tok : std::uint8_t {
  Ident,
  LParen,
  RParen,
  Comma,
  Dot,
  Not,
  And,
  Or,
  Xor,
  Implies,
  Iff,
  Equals,
  NotEquals,
  ForAll,
  Exists,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string_view text;
};

struct SyntaxError {
  std::size_t begin;
  std::size_t end;
  std::string message;
};

inline const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Not: return "negation";
    case Tok::And: return "conjunction";
    case Tok::Or: return "disjunction";
    case Tok::Xor: return "exclusive or";
    case Tok::Implies: return "implication";
    case Tok::Iff: return "biconditional";
    case Tok::Equals: return "'='";
    case Tok::NotEquals: return "'!='";
    case Tok::ForAll: return "universal quantifier";
    case Tok::Exists: return "existential quantifier";
    case Tok::End: return "end of input";
  }
  return "token";
}

inline bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, src_.size(), src_.size(), {}});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  struct Symbol {
    std::string_view text;
    Tok kind;
  };

  void skip_space() {
    while (pos_ < src_.size()) {
      unsigned char c = static_cast<unsigned char>(src_[pos_]);
      if (std::isspace(c)) {
        ++pos_;
      } else if (src_.substr(pos_, 2) == "\xC2\xA0") {  // no-break space
        pos_ += 2;
      } else {
        break;
      }
    }
  }

  Token make(Tok k, std::size_t len) {
    Token t{k, pos_, pos_ + len, src_.substr(pos_, len)};
    pos_ += len;
    return t;
  }

  Token next() {
    // Longest symbols first so "<->" wins over "->" and "!=" over "!".
    static constexpr Symbol kSymbols[] = {
        {"<->", Tok::Iff},       {"<=>", Tok::Iff},      {"->", Tok::Implies},
        {"=>", Tok::Implies},    {"!=", Tok::NotEquals}, {"==", Tok::Equals},
        {"\xE2\x88\x80", Tok::ForAll},   // ∀
        {"\xE2\x88\x83", Tok::Exists},   // ∃
        {"\xC2\xAC", Tok::Not},          // ¬
        {"\xE2\x88\xA7", Tok::And},      // ∧
        {"\xE2\x88\xA8", Tok::Or},       // ∨
        {"\xE2\x8A\x95", Tok::Xor},      // ⊕
        {"\xE2\x86\x92", Tok::Implies},  // →
        {"\xE2\x87\x92", Tok::Implies},  // ⇒
        {"\xE2\x86\x94", Tok::Iff},      // ↔
        {"\xE2\x87\x94", Tok::Iff},      // ⇔
        {"\xE2\x89\xA0", Tok::NotEquals},  // ≠
        {"-", Tok::Not},         {"~", Tok::Not},        {"!", Tok::Not},
        {"&", Tok::And},         {"|", Tok::Or},         {"=", Tok::Equals},
        {"(", Tok::LParen},      {")", Tok::RParen},     {",", Tok::Comma},
        {".", Tok::Dot},
    };
    for (const Symbol& s : kSymbols)
      if (src_.substr(pos_, s.text.size()) == s.text) return make(s.kind, s.text.size());

    if (is_ident_char(src_[pos_])) {
      std::size_t len = 0;
      while (pos_ + len < src_.size() && is_ident_char(src_[pos_ + len])) ++len;
      std::string_view word = src_.substr(pos_, len);
      if (word == "all" || word == "forall") return make(Tok::ForAll, len);
      if (word == "exists") return make(Tok::Exists, len);
      return make(Tok::Ident, len);
    }

    std::size_t len = 1;
    // Report a whole UTF-8 sequence as one unexpected character.
    unsigned char lead = static_cast<unsigned char>(src_[pos_]);
    if (lead >= 0xC0) {
      while (pos_ + len < src_.size() &&
             (static_cast<unsigned char>(src_[pos_ + len]) & 0xC0) == 0x80)
        ++len;
    }
    throw SyntaxError{pos_, pos_ + len,
                      "unexpected character '" + std::string(src_.substr(pos_, len)) + "'"};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(std::string_view src, std::vector<Token> toks) : src_(src), toks_(std::move(toks)) {}

  Formula parse_all() {
    if (peek().kind == Tok::End) throw SyntaxError{0, src_.size(), "empty formula"};
    Formula f = parse_iff();
    const Token& t = peek();
    if (t.kind == Tok::RParen)
      throw SyntaxError{t.begin, t.end, "unbalanced parenthesis: unexpected ')'"};
    if (t.kind != Tok::End)
      throw SyntaxError{t.begin, t.end,
                        std::string("unexpected ") + describe(t.kind) + " after complete formula"};
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  const Token& advance() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  // Right operand of a connective must exist.
  void require_operand(const Token& op) {
    const Token& t = peek();
    if (t.kind == Tok::End || t.kind == Tok::RParen || t.kind == Tok::Comma)
      throw SyntaxError{op.begin, op.end,
                        std::string("dangling ") + describe(op.kind) + ": missing right operand"};
  }

  Formula parse_iff() {
    Formula left = parse_implies();
    while (peek().kind == Tok::Iff) {
      const Token& op = advance();
      require_operand(op);
      left = Formula::iff(std::move(left), parse_implies());
    }
    return left;
  }

  Formula parse_implies() {
    Formula left = parse_or();
    if (peek().kind == Tok::Implies) {
      const Token& op = advance();
      require_operand(op);
      return Formula::implies(std::move(left), parse_implies());
    }
    return left;
  }

  Formula parse_or() {
    Formula left = parse_and();
    while (peek().kind == Tok::Or || peek().kind == Tok::Xor) {
      const Token& op = advance();
      require_operand(op);
      Formula right = parse_and();
      left = op.kind == Tok::Or ? Formula::disj(std::move(left), std::move(right))
                                : Formula::exclusive(std::move(left), std::move(right));
    }
    return left;
  }

  Formula parse_and() {
    Formula left = parse_unary();
    while (peek().kind == Tok::And) {
      const Token& op = advance();
      require_operand(op);
      left = Formula::conj(std::move(left), parse_unary());
    }
    return left;
  }

  Formula parse_unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not: {
        const Token& op = advance();
        require_operand(op);
        return Formula::negation(parse_unary());
      }
      case Tok::ForAll:
      case Tok::Exists:
        return parse_quantifier();
      case Tok::LParen:
        return parse_group();
      case Tok::Ident:
        return parse_atom();
      case Tok::End:
        throw SyntaxError{t.begin, t.end, "unexpected end of input: expected a formula"};
      case Tok::RParen:
        throw SyntaxError{t.begin, t.end, "unbalanced parenthesis: unexpected ')'"};
      default:
        throw SyntaxError{t.begin, t.end,
                          std::string("dangling ") + describe(t.kind) + ": missing left operand"};
    }
  }

  Formula parse_quantifier() {
    const Token& q = advance();
    if (peek().kind != Tok::Ident)
      throw SyntaxError{q.begin, peek().end, "quantifier must be followed by a variable"};

    // "all x y z. body" binds several variables, but only when the list is
    // closed by a dot; "∀x P(x)" binds just x.
    std::size_t count = 1;
    while (peek(count).kind == Tok::Ident) ++count;
    if (peek(count).kind != Tok::Dot) count = 1;

    std::vector<std::string> vars;
    for (std::size_t i = 0; i < count; ++i) vars.emplace_back(advance().text);
    if (peek().kind == Tok::Dot) advance();
    const Token& last = toks_[pos_ - 1];
    if (peek().kind == Tok::End || peek().kind == Tok::RParen)
      throw SyntaxError{q.begin, last.end, "quantifier has no body"};

    for (const std::string& v : vars) bound_.push_back(v);
    Formula body = parse_iff();
    bound_.resize(bound_.size() - vars.size());

    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
      body = q.kind == Tok::ForAll ? Formula::forall(*it, std::move(body))
                                   : Formula::exists(*it, std::move(body));
    return body;
  }

  Formula parse_group() {
    const Token& open = advance();
    if (peek().kind == Tok::RParen)
      throw SyntaxError{open.begin, peek().end, "empty parentheses"};
    Formula inner = parse_iff();
    if (peek().kind != Tok::RParen)
      throw SyntaxError{open.begin, peek().kind == Tok::End ? src_.size() : peek().end,
                        "unbalanced parenthesis: '(' is never closed"};
    advance();
    return inner;
  }

  Formula parse_atom() {
    const Token& head = peek();
    std::size_t start = head.begin;
    if (peek(1).kind == Tok::LParen) {
      std::string name(advance().text);
      std::vector<Term> args = parse_args(start);
      if (peek().kind == Tok::Equals || peek().kind == Tok::NotEquals)
        return parse_equality(Term::function(std::move(name), std::move(args)));
      return Formula::predicate(std::move(name), std::move(args));
    }
    if (peek(1).kind == Tok::Equals || peek(1).kind == Tok::NotEquals) {
      Term left = classify_identifier(advance().text);
      return parse_equality(std::move(left));
    }
    return Formula::predicate(std::string(advance().text));
  }

  Formula parse_equality(Term left) {
    const Token& op = advance();
    if (peek().kind != Tok::Ident)
      throw SyntaxError{op.begin, op.end, "equality is missing its right-hand term"};
    Term right = parse_term();
    Formula eq = Formula::equality(std::move(left), std::move(right));
    return op.kind == Tok::NotEquals ? Formula::negation(std::move(eq)) : eq;
  }

  std::vector<Term> parse_args(std::size_t app_begin) {
    const Token& open = advance();
    if (peek().kind == Tok::RParen)
      throw SyntaxError{app_begin, peek().end, "empty argument list"};
    std::vector<Term> args;
    while (true) {
      const Token& t = peek();
      if (t.kind == Tok::End)
        throw SyntaxError{app_begin, src_.size(),
                          "unbalanced parenthesis: argument list is never closed"};
      if (t.kind != Tok::Ident)
        throw SyntaxError{t.begin, t.end,
                          std::string("expected a term, found ") + describe(t.kind)};
      args.push_back(parse_term());
      const Token& sep = peek();
      if (sep.kind == Tok::Comma) {
        advance();
        continue;
      }
      if (sep.kind == Tok::RParen) {
        advance();
        return args;
      }
      if (sep.kind == Tok::End)
        throw SyntaxError{app_begin, src_.size(),
                          "unbalanced parenthesis: argument list is never closed"};
      throw SyntaxError{open.begin, sep.end,
                        std::string("expected ',' or ')' in argument list, found ") +
                            describe(sep.kind)};
    }
  }

  Term parse_term() {
    const Token& id = advance();
    if (peek().kind == Tok::LParen) {
      std::vector<Term> args = parse_args(id.begin);
      return Term::function(std::string(id.text), std::move(args));
    }
    return classify_identifier(id.text);
  }

  Term classify_identifier(std::string_view name) const {
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
      if (*it == name) return Term::variable(std::string(name));
    if (looks_like_free_variable(name)) return Term::variable(std::string(name));
    return Term::constant(std::string(name));
  }

  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> bound_;
};

}  // namespace detail

inline ParseResult parse_formula(std::string_view input) {
  ParseResult result;
  try {
    detail::Lexer lexer(input);
    detail::Parser parser(input, lexer.run());
    result.formula = parser.parse_all();
  } catch (const detail::SyntaxError& e) {
    std::size_t end = std::min(std::max(e.end, e.begin), input.size());
    result.diagnostics.push_back(
        {std::min(e.begin, end), end, e.message, ParseDiagnostic::Severity::Error});
  }
  return result;
}

// Parses or throws std::invalid_argument carrying the first diagnostic.
inline Formula parse_or_throw(std::string_view input) {
  ParseResult r = parse_formula(input);
  if (!r.ok())
    throw std::invalid_argument("cannot parse '" + std::string(input) +
                                "': " + r.diagnostics.front().message);
  return std::move(*r.formula);
}

inline std::string format_diagnostic(std::string_view input, const ParseDiagnostic& d) {
  std::string out = (d.severity == ParseDiagnostic::Severity::Error ? "error" : "warning");
  out += " at bytes " + std::to_string(d.begin) + "-" + std::to_string(d.end) + ": " + d.message;
  if (d.end > d.begin) out += " [" + std::string(input.substr(d.begin, d.end - d.begin)) + "]";
  return out;
}

}  // namespace folpo::syntax
