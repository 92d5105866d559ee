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

#include <gtest/gtest.h>

#include "folpo/syntax/alpha.hpp"
#include "folpo/syntax/parser.hpp"
#include "folpo/syntax/printer.hpp"
#include "support/fixtures.hpp"
#include "support/random_stories.hpp"

namespace {

using folpo::syntax::alpha_equal;
using folpo::syntax::Dialect;
using folpo::syntax::Formula;
using folpo::syntax::parse_formula;
using folpo::syntax::parse_or_throw;
using folpo::syntax::render;
using folpo::syntax::Term;

Formula P(const char* name, std::vector<Term> args) { return Formula::predicate(name, std::move(args)); }
Term v(const char* n) { return Term::variable(n); }
Term c(const char* n) { return Term::constant(n); }

TEST(Parse, QuantifiedImplicationAscii) {
  Formula f = parse_or_throw("all x. (Dispensable(x) -> EnvironmentFriendly(x))");
  Formula want = Formula::forall(
      "x", Formula::implies(P("Dispensable", {v("x")}), P("EnvironmentFriendly", {v("x")})));
  EXPECT_EQ(f, want);
}

TEST(Parse, UnicodeConjunctionBindsTighterThanImplication) {
  Formula f = parse_or_throw("∀x (Year(x) ∧ Before2016(x) ⇒ ¬AlignHighSchool(x))");
  Formula want = Formula::forall(
      "x", Formula::implies(Formula::conj(P("Year", {v("x")}), P("Before2016", {v("x")})),
                            Formula::negation(P("AlignHighSchool", {v("x")}))));
  EXPECT_EQ(f, want);
}

TEST(Parse, UnclosedApplicationSpan) {
  auto r = parse_formula("P(a");
  ASSERT_FALSE(r.ok());
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].begin, 0u);
  EXPECT_EQ(r.diagnostics[0].end, 3u);
  EXPECT_NE(r.diagnostics[0].message.find("never closed"), std::string::npos);
}

TEST(Parse, ErrorsCarrySpansInsideInput) {
  for (const char* bad : {"", "P(a) &", "(P(a)", "P(a))", "P()", "-> Q(a)", "all x.", "P(a) Q(b)",
                          "all x. (P(x) |)", "()", "P(a,)"}) {
    auto r = parse_formula(bad);
    EXPECT_FALSE(r.ok()) << bad;
    ASSERT_FALSE(r.diagnostics.empty()) << bad;
    for (const auto& d : r.diagnostics) {
      EXPECT_LE(d.begin, d.end) << bad;
      EXPECT_LE(d.end, std::string_view(bad).size()) << bad;
    }
  }
}

TEST(Parse, Precedence) {
  // ¬ > ∧ > ∨ > → > ↔, implication to the right
  EXPECT_EQ(parse_or_throw("A -> B -> C"),
            Formula::implies(P("A", {}), Formula::implies(P("B", {}), P("C", {}))));
  EXPECT_EQ(parse_or_throw("A | B & C"),
            Formula::disj(P("A", {}), Formula::conj(P("B", {}), P("C", {}))));
  EXPECT_EQ(parse_or_throw("A <-> B -> C"),
            Formula::iff(P("A", {}), Formula::implies(P("B", {}), P("C", {}))));
  EXPECT_EQ(parse_or_throw("-A & B"), Formula::conj(Formula::negation(P("A", {})), P("B", {})));
  EXPECT_EQ(parse_or_throw("A ⊕ B ∨ C"),
            Formula::disj(Formula::exclusive(P("A", {}), P("B", {})), P("C", {})));
}

TEST(Parse, QuantifierBodyIsMaximal) {
  EXPECT_EQ(parse_or_throw("all x. P(x) & Q(x)"),
            Formula::forall("x", Formula::conj(P("P", {v("x")}), P("Q", {v("x")}))));
  EXPECT_EQ(parse_or_throw("exists y P(y) -> Q(y)"),
            Formula::exists("y", Formula::implies(P("P", {v("y")}), P("Q", {v("y")}))));
}

TEST(Parse, MultiVariableBinderList) {
  EXPECT_EQ(parse_or_throw("all x y. R(x, y)"),
            Formula::forall("x", Formula::forall("y", P("R", {v("x"), v("y")}))));
}

TEST(Parse, IdentifierClassification) {
  // bound names are variables, unbound lowercase ones constants
  Formula f = parse_or_throw("Own(sat, collegeBoard) ∧ ¬Own(sat, others)");
  EXPECT_EQ(f.lhs().args[0], c("sat"));
  EXPECT_EQ(f.lhs().args[1], c("collegeBoard"));
  // x outside any binder keeps its variable reading, closed later
  Formula g = parse_or_throw("¬(DepartFrom(x) ∧ ArriveAt(x))");
  EXPECT_EQ(g.operand().lhs().args[0], v("x"));
  EXPECT_EQ(folpo::syntax::free_variables(g), std::vector<std::string>{"x"});
  Formula h = parse_or_throw("all x. Likes(x, f(x, y1))");
  EXPECT_EQ(h.body().args[1], Term::function("f", {v("x"), v("y1")}));
}

TEST(Parse, EqualityAndNegatedEquality) {
  EXPECT_EQ(parse_or_throw("a = b"), Formula::equality(c("a"), c("b")));
  EXPECT_EQ(parse_or_throw("a != b"), Formula::negation(Formula::equality(c("a"), c("b"))));
  EXPECT_EQ(parse_or_throw("f(a) ≠ b"),
            Formula::negation(Formula::equality(Term::function("f", {c("a")}), c("b"))));
}

TEST(Render, NegatedAtomAscii) {
  EXPECT_EQ(render(Formula::negation(P("Dispensable", {c("Worksheet")}))), "-Dispensable(Worksheet)");
}

TEST(Render, UniversalRoundTrip) {
  Formula f = Formula::forall("x", P("P", {v("x")}));
  EXPECT_EQ(render(f), "all x. (P(x))");
  EXPECT_EQ(parse_or_throw(render(f)), f);
}

TEST(Render, XorExpandsInAscii) {
  Formula f = Formula::exclusive(P("A", {c("c")}), P("B", {c("c")}));
  EXPECT_EQ(render(f, Dialect::Ascii), "((A(c) & -B(c)) | (-A(c) & B(c)))");
  EXPECT_EQ(render(f, Dialect::Unicode), "(A(c) ⊕ B(c))");
}

TEST(Render, Deterministic) {
  folpo::testing::FormulaGen gen(11);
  for (int i = 0; i < 200; ++i) {
    Formula f = gen.formula(5);
    Formula copy = f;
    EXPECT_EQ(render(f, Dialect::Ascii), render(copy, Dialect::Ascii));
    EXPECT_EQ(render(f, Dialect::Unicode), render(copy, Dialect::Unicode));
  }
}

TEST(Alpha, Examples) {
  Formula fx = Formula::forall("x", P("P", {v("x")}));
  Formula fy = Formula::forall("y", P("P", {v("y")}));
  Formula ex = Formula::exists("x", P("P", {v("x")}));
  EXPECT_TRUE(alpha_equal(fx, fy));
  EXPECT_FALSE(alpha_equal(fx, ex));
  EXPECT_TRUE(alpha_equal(fx, fx));
}

TEST(Alpha, ScopingAndFreeNames) {
  // shadowing: inner binder wins
  Formula a = parse_or_throw("all x. all x. P(x)");
  Formula b = parse_or_throw("all y. all z. P(z)");
  Formula c2 = parse_or_throw("all y. all z. P(y)");
  EXPECT_TRUE(alpha_equal(a, b));
  EXPECT_FALSE(alpha_equal(a, c2));
  // free variables are compared by name
  EXPECT_FALSE(alpha_equal(parse_or_throw("P(x)"), parse_or_throw("P(y)")));
  EXPECT_FALSE(alpha_equal(parse_or_throw("all x. R(x, y)"), parse_or_throw("all y. R(y, y)")));
}

TEST(RoundTrip, RandomFormulasBothDialects) {
  folpo::testing::FormulaGen gen(20260116);
  for (int i = 0; i < 2000; ++i) {
    Formula f = gen.formula(1 + static_cast<std::size_t>(i % 6));
    for (Dialect d : {Dialect::Ascii, Dialect::Unicode}) {
      std::string text = render(f, d);
      auto r = parse_formula(text);
      ASSERT_TRUE(r.ok()) << text << ": " << r.diagnostics.front().message;
      // ascii has no xor symbol, so compare against the expanded form
      const Formula& want = d == Dialect::Ascii ? folpo::syntax::desugar_xor(f) : f;
      ASSERT_TRUE(alpha_equal(*r.formula, want)) << text;
    }
  }
}

TEST(RoundTrip, DialectAgreement) {
  folpo::testing::FormulaGen gen(5);
  for (int i = 0; i < 500; ++i) {
    Formula f = folpo::syntax::desugar_xor(gen.formula(4));
    Formula a = parse_or_throw(render(f, Dialect::Ascii));
    Formula u = parse_or_throw(render(f, Dialect::Unicode));
    ASSERT_TRUE(alpha_equal(a, u)) << render(f);
  }
}

TEST(Corpus, PublishedFormulasParseAndRoundTrip) {
  auto corpus = folpo::testing::published_formulas();
  ASSERT_GE(corpus.size(), 15u);
  for (const std::string& s : corpus) {
    auto r = parse_formula(s);
    ASSERT_TRUE(r.ok()) << s << ": " << r.diagnostics.front().message;
    EXPECT_TRUE(r.diagnostics.empty()) << s;
    for (Dialect d : {Dialect::Ascii, Dialect::Unicode}) {
      Formula back = parse_or_throw(render(*r.formula, d));
      EXPECT_TRUE(alpha_equal(back, folpo::syntax::desugar_xor(*r.formula)) ||
                  alpha_equal(back, *r.formula))
          << s;
    }
  }
}

TEST(Diagnostic, FormatShowsOffendingText) {
  auto r = parse_formula("P(a) & ");
  ASSERT_FALSE(r.ok());
  std::string msg = folpo::syntax::format_diagnostic("P(a) & ", r.diagnostics[0]);
  EXPECT_NE(msg.find("dangling"), std::string::npos);
  EXPECT_NE(msg.find("[&]"), std::string::npos);
}

}  // namespace
