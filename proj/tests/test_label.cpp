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

#include <chrono>
#include <filesystem>
#include <fstream>

#include "folpo/external.hpp"
#include "folpo/label.hpp"
#include "folpo/story.hpp"
#include "support/fixtures.hpp"
#include "support/ground_oracle.hpp"
#include "support/random_stories.hpp"

namespace {

using folpo::classify;
using folpo::ErrorReason;
using folpo::FolStory;
using folpo::Label;
using folpo::make_story;
using folpo::testing::OracleLabel;

Label expected(OracleLabel o) {
  switch (o) {
    case OracleLabel::True: return Label::True;
    case OracleLabel::False: return Label::False;
    case OracleLabel::Uncertain: return Label::Uncertain;
    case OracleLabel::Inconsistent: return Label::Error;
  }
  return Label::Error;
}

Label flipped(Label l) {
  return l == Label::True ? Label::False : l == Label::False ? Label::True : l;
}

double seconds_for(const FolStory& s, Label* out) {
  auto t0 = std::chrono::steady_clock::now();
  *out = classify(s).label;
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

TEST(Classify, ChosenStoryIsTrue) {
  Label l;
  EXPECT_LT(seconds_for(folpo::testing::sat_chosen(), &l), 1.0);
  EXPECT_EQ(l, Label::True);
}

TEST(Classify, RejectedStoryIsFalse) {
  Label l;
  EXPECT_LT(seconds_for(folpo::testing::sat_rejected(), &l), 1.0);
  EXPECT_EQ(l, Label::False);
}

TEST(Classify, DisjointVocabularyIsUncertain) {
  auto r = classify(make_story({"P(a)"}, "Q(a)"));
  EXPECT_EQ(r.label, Label::Uncertain);
  EXPECT_FALSE(r.budget_limited);
  ASSERT_TRUE(r.entail_outcome && r.contradict_outcome);
  EXPECT_EQ(r.entail_outcome->status, folpo::prover::Status::Saturated);
}

TEST(Classify, LaLigaMatchesOracle) {
  FolStory s = folpo::testing::la_liga();
  EXPECT_EQ(folpo::testing::ground_label(s.premises, s.conclusion), OracleLabel::True);
  auto r = classify(s);
  EXPECT_EQ(r.label, Label::True);
  ASSERT_TRUE(r.entail_outcome);
  EXPECT_FALSE(r.entail_outcome->proof_trace.empty());
}

TEST(Classify, WorksheetMatchesOracle) {
  FolStory s = folpo::testing::worksheet();
  Label want = expected(folpo::testing::ground_label(s.premises, s.conclusion));
  EXPECT_EQ(classify(s).label, want);
}

TEST(Classify, InconsistentPremises) {
  auto r = classify(make_story({"P(a)", "-P(a)"}, "Q(b)"));
  EXPECT_EQ(r.label, Label::Error);
  EXPECT_EQ(r.error_reason, ErrorReason::InconsistentPremises);
}

TEST(Classify, ClauseExplosionIsError) {
  std::string big;
  for (int i = 0; i < 13; ++i) {
    if (i) big += " | ";
    big += "(A" + std::to_string(i) + "(a) & B" + std::to_string(i) + "(a))";
  }
  auto r = classify(make_story({big}, "C(a)"));
  EXPECT_EQ(r.label, Label::Error);
  EXPECT_EQ(r.error_reason, ErrorReason::ClauseExplosion);
}

TEST(Classify, BudgetExhaustionIsUncertain) {
  folpo::prover::Budget b;
  b.max_iterations = 3;
  auto r = classify(make_story({"P(a)", "all x. (P(x) -> P(f(x)))"}, "Q(b)"), b);
  EXPECT_EQ(r.label, Label::Uncertain);
  EXPECT_TRUE(r.budget_limited);
}

TEST(Classify, AgreesWithOracleOnRandomStories) {
  folpo::testing::StoryGen gen(31337);
  int seen[4] = {0, 0, 0, 0};
  for (int i = 0; i < 400; ++i) {
    auto s = gen.next();
    auto r = classify(s.story);
    ASSERT_EQ(r.label, expected(s.label)) << i << "\n" << folpo::render_story(s.story);
    ASSERT_FALSE(r.budget_limited);
    if (r.label == Label::Error) {
      ASSERT_EQ(r.error_reason, ErrorReason::InconsistentPremises);
    }
    seen[static_cast<int>(s.label)]++;
  }
  for (int k = 0; k < 4; ++k) EXPECT_GT(seen[k], 5) << k;
}

TEST(Classify, NegationFlip) {
  folpo::testing::StoryGen gen(99);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    auto s = gen.next();
    auto r = classify(s.story);
    if (r.budget_limited || r.label == Label::Error) continue;
    FolStory neg = s.story;
    neg.conclusion = folpo::syntax::Formula::negation(folpo::clausify::close_free(s.story.conclusion));
    FolStory pos = s.story;
    pos.conclusion = folpo::clausify::close_free(s.story.conclusion);
    auto rn = classify(neg);
    ASSERT_EQ(classify(pos).label, r.label) << i;
    ASSERT_EQ(rn.label, flipped(r.label)) << i;
    ++checked;
  }
  EXPECT_GT(checked, 200);
}

TEST(Classify, MonotoneInBudget) {
  folpo::testing::StoryGen gen(7);
  folpo::prover::Budget small;
  small.max_iterations = 6;
  small.max_kept_clauses = 30;
  int improved = 0;
  for (int i = 0; i < 300; ++i) {
    auto s = gen.next();
    Label lo = classify(s.story, small).label;
    Label hi = classify(s.story).label;
    // a larger budget may still uncover inconsistent premises
    if (lo == Label::True || lo == Label::False) {
      ASSERT_NE(hi, Label::Uncertain) << i;
      if (hi != Label::Error) {
        ASSERT_EQ(hi, lo) << i;
      }
    }
    improved += lo == Label::Uncertain && hi != Label::Uncertain;
  }
  EXPECT_GT(improved, 0);
}

TEST(Classify, Pure) {
  FolStory s = folpo::testing::sat_rejected();
  auto a = classify(s), b = classify(s);
  EXPECT_EQ(a.label, b.label);
  EXPECT_EQ(a.entail_outcome->kept_clause_count, b.entail_outcome->kept_clause_count);
  EXPECT_EQ(a.contradict_outcome->iterations, b.contradict_outcome->iterations);
}

TEST(LabelText, ParseAliases) {
  EXPECT_EQ(folpo::parse_label("UNKNOWN"), Label::Uncertain);
  EXPECT_EQ(folpo::parse_label(" true "), Label::True);
  EXPECT_EQ(folpo::parse_label("False"), Label::False);
  EXPECT_FALSE(folpo::parse_label("maybe"));
}

// ---------------------------------------------------------------- external

TEST(External, MinimalStory) {
  std::string text = folpo::external::emit_external(make_story({"P(a)"}, "P(a)"));
  EXPECT_NE(text.find("formulas(assumptions)."), std::string::npos);
  EXPECT_NE(text.find("formulas(goals)."), std::string::npos);
  std::size_t goals = text.find("formulas(goals).");
  std::size_t first = text.find("P(");
  std::size_t second = text.find("P(", goals);
  EXPECT_LT(first, goals);
  EXPECT_NE(second, std::string::npos);
}

std::size_t count_formula_lines(const std::string& block) {
  std::size_t n = 0, pos = 0;
  while (pos < block.size()) {
    std::size_t nl = block.find('\n', pos);
    std::string line = block.substr(pos, nl - pos);
    pos = nl == std::string::npos ? block.size() : nl + 1;
    if (!line.empty() && line.back() == '.' && line.find("formulas(") == std::string::npos &&
        line != "end_of_list.")
      ++n;
  }
  return n;
}

TEST(External, ChosenStoryShape) {
  std::string text = folpo::external::emit_external(folpo::testing::sat_chosen());
  std::size_t goals = text.find("formulas(goals).");
  ASSERT_NE(goals, std::string::npos);
  EXPECT_EQ(count_formula_lines(text.substr(0, goals)), 4u);
  EXPECT_EQ(count_formula_lines(text.substr(goals)), 1u);
  for (char c : text) EXPECT_LT(static_cast<unsigned char>(c), 0x80);
}

TEST(External, XorIsDesugared) {
  std::string text = folpo::external::emit_external(make_story({"A(c) ⊕ B(c)"}, "A(c)"));
  EXPECT_EQ(text.find("⊕"), std::string::npos);
  EXPECT_NE(text.find("|"), std::string::npos);
  EXPECT_NE(text.find("&"), std::string::npos);
}

std::vector<folpo::external::NamedStory> curated() {
  auto loaded = folpo::load_corpus(std::string(FOLPO_DATA_DIR) + "/curated_suite.jsonl");
  std::vector<folpo::external::NamedStory> out;
  for (const auto& s : loaded.records) out.push_back({s.id, *s.gold_fol});
  return out;
}

TEST(Curated, LabelsConfirmedByOracleAndProver) {
  auto loaded = folpo::load_corpus(std::string(FOLPO_DATA_DIR) + "/curated_suite.jsonl");
  ASSERT_TRUE(loaded.diagnostics.empty());
  ASSERT_EQ(loaded.records.size(), 25u);
  int per_label[3] = {0, 0, 0};
  for (const auto& s : loaded.records) {
    ASSERT_TRUE(s.gold_fol && s.gold_label) << s.id;
    Label oracle = expected(folpo::testing::ground_label(s.gold_fol->premises, s.gold_fol->conclusion));
    EXPECT_EQ(oracle, *s.gold_label) << s.id;
    EXPECT_EQ(classify(*s.gold_fol).label, *s.gold_label) << s.id;
    per_label[static_cast<int>(*s.gold_label)]++;
  }
  for (int n : per_label) EXPECT_GE(n, 5);
}

TEST(CrossCheck, MissingBinaryIsSkipped) {
  auto r = folpo::external::cross_check(curated(), {}, "/nonexistent/prover9");
  EXPECT_TRUE(r.skipped);
  EXPECT_TRUE(r.entries.empty());
  EXPECT_NE(r.skip_reason.find("not found"), std::string::npos);
}

struct FakeProver {
  std::filesystem::path path;
  explicit FakeProver(const std::string& name, const std::string& body) {
    path = std::filesystem::temp_directory_path() / name;
    std::ofstream f(path);
    f << "#!/bin/sh\n" << body << "\n";
    f.close();
    std::filesystem::permissions(path, std::filesystem::perms::owner_all);
  }
  ~FakeProver() { std::filesystem::remove(path); }
};

TEST(CrossCheck, EmptyListGivesEmptyReport) {
  FakeProver fake("folpo-fake-empty.sh", "echo 'SEARCH FAILED'");
  auto r = folpo::external::cross_check({}, {}, fake.path);
  EXPECT_FALSE(r.skipped);
  EXPECT_TRUE(r.entries.empty());
}

TEST(CrossCheck, FailingEngineAgreesOnUncertainOnly) {
  FakeProver fake("folpo-fake-fail.sh", "echo '------ process 1 exit (sos_empty) ------'\necho 'SEARCH FAILED'");
  auto stories = curated();
  auto r = folpo::external::cross_check(stories, {}, fake.path, 4);
  ASSERT_EQ(r.entries.size(), stories.size());
  std::size_t uncertain = 0;
  for (const auto& e : r.entries) {
    EXPECT_EQ(e.external, Label::Uncertain);
    EXPECT_EQ(e.agree, e.internal == Label::Uncertain) << e.id;
    uncertain += e.internal == Label::Uncertain;
  }
  EXPECT_DOUBLE_EQ(r.agreement_rate, static_cast<double>(uncertain) / stories.size());
}

TEST(CrossCheck, GoalMarkerDrivesExternalLabel) {
  // proves only the non-negated goal: the negated file starts its goal with -(
  FakeProver fake("folpo-fake-goal.sh",
                  "if sed -n '/formulas(goals)/{n;p;}' \"$2\" | grep -q '^-('; then echo 'SEARCH FAILED'; "
                  "else echo 'THEOREM PROVED'; fi");
  std::vector<folpo::external::NamedStory> one{{"s", make_story({"P(a)"}, "P(a)")}};
  auto r = folpo::external::cross_check(one, {}, fake.path, 1);
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_EQ(r.entries[0].external, Label::True);
  EXPECT_EQ(r.entries[0].internal, Label::True);
  EXPECT_DOUBLE_EQ(r.agreement_rate, 1.0);
}

TEST(CrossCheck, TimeoutInBothEnginesCountsAsAgreement) {
  FakeProver fake("folpo-fake-slow.sh", "sleep 5\necho 'THEOREM PROVED'");
  folpo::prover::Budget b;
  b.max_seconds = 0.3;
  std::vector<folpo::external::NamedStory> one{
      {"loop", make_story({"P(a)", "all x. (P(x) -> P(f(x)))"}, "Q(b)")}};
  auto t0 = std::chrono::steady_clock::now();
  auto r = folpo::external::cross_check(one, b, fake.path, 2);
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 4.0);
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_EQ(r.entries[0].external, Label::Uncertain);
  EXPECT_EQ(r.entries[0].internal, Label::Uncertain);
  EXPECT_TRUE(r.entries[0].agree);
}

}  // namespace
