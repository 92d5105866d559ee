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

// Published FOL stories used across the test suites: the SAT story with
// its chosen and rejected translations, and the two few-shot exemplars.

#pragma once

#include <string>
#include <vector>

#include "folpo/fol_story.hpp"

namespace folpo::testing {

inline const std::vector<std::string> kSatGoldPremises = {
    "Own(sat, collegeBoard) ∧ ¬Own(sat, others)",
    "Test(sat, readiness)",
    "∀x (Year(x) ∧ Before2016(x) ⇒ ¬AlignHighSchool(x))",
    "∃x (Year(x) ∧ Since2016(x) ∧ AlignHighSchool(x))",
};

inline const std::vector<std::string> kSatChosenPremises = {
    "∀x. (SAT(x) ⇒ CollegeBoardOwns(x))",
    "∀x. (SAT(x) ⇒ CollegeReady(x))",
    "∀x. (SAT(x) ∧ ¬Aligned(x))",
    "∀x. (SAT(x) ∧ IntroducedIn2016(x) ⇒ Aligned(x))",
};
inline const std::string kSatChosenConclusion = "∀x. (IntroducedIn2016(x) ⇒ Aligned(x))";

inline const std::vector<std::string> kSatRejectedPremises = {
    "∀x. (SAT(x) ⇒ CollegeBoard(x))",
    "∀x. (SAT(x) ⇒ CollegeReady(x))",
    "∀x. (SAT(x) ∧ ¬AlignedWithHighSchool(x))",
    "∀x. (SAT2016(x) ⇒ AlignedWithHighSchool(x))",
};
inline const std::string kSatRejectedConclusion =
    "∀x. (Since2016(x) ∧ AlignedWithHighSchool(x))";

inline const std::vector<std::string> kWorksheetPremises = {
    "all x. (Dispensable(x) -> EnvironmentFriendly(x))",
    "all x. (Woodware(x) -> Dispensable(x))",
    "all x. (Paper(x) -> Woodware(x))",
    "all x. (Good(x) -> -Bad(x))",
    "all x. (EnvironmentFriendly(x) -> Good(x))",
    "((Paper(Worksheet) & -EnvironmentFriendly(Worksheet)) | (-Paper(Worksheet) & "
    "EnvironmentFriendly(Worksheet)))",
};
inline const std::string kWorksheetConclusion = "-Dispensable(Worksheet)";

inline const std::vector<std::string> kLaLigaPremises = {
    "all x. all y. (LaLiga(x) & LaLiga(y) & MorePoints(x, y) -> HigherRank(x, y))",
    "all x. all y. (LaLiga(x) & LaLiga(y) & -MorePoints(x, y) & -MorePoints(y, x) "
    "& MorePointsInGameBetween(x, y) -> HigherRank(x, y))",
    "LaLiga(RealMadrid) & LaLiga(Barcelona)",
    "MorePoints(RealMadrid, Barcelona)",
    "-MorePointsInGameBetween(RealMadrid, Barcelona) & -MorePointsInGameBetween(Barcelona, "
    "RealMadrid)",
};
inline const std::string kLaLigaConclusion = "HigherRank(RealMadrid, Barcelona)";

// Formulas quoted in the error analysis discussion; they mix dialects.
inline const std::vector<std::string> kAnalysisFormulas = {
    "FliesTo(Susan, LGAAirport)",
    "¬EqualAirports(Daniel, Susan)",
    "¬(DepartFrom(x) ∧ ArriveAt(x))",
    "∀x ∀y (Departure(x) ∧ Arrival(y) ∧ ¬SameAirport(x, y))",
    "FliesFrom(John, LGAAirport)",
    "FliesFrom(Susan, LGAAirport)",
    "¬((Fly(Rock) ∨ Bird(Rock)) ⇒ (¬Fly(Rock) ∧ -Breathes(Rock)))",
    "(¬Fly(Rock) & ¬Bird(Rock)) ⇒ (¬Fly(Rock) & ¬Breathe(Rock))",
    "((Database(James) ∧ ¬PartTime(James)) ∨ (¬Database(James) ∧ "
    "PartTime(James)))",
    "(TakesDatabaseCourse(James) ∨ HasPartTimeJob(James))",
};

inline std::vector<std::string> published_formulas() {
  std::vector<std::string> all;
  for (const auto* group : {&kSatGoldPremises, &kSatChosenPremises, &kSatRejectedPremises,
                            &kWorksheetPremises, &kLaLigaPremises, &kAnalysisFormulas})
    all.insert(all.end(), group->begin(), group->end());
  for (const std::string* s : {&kSatChosenConclusion, &kSatRejectedConclusion,
                               &kWorksheetConclusion, &kLaLigaConclusion})
    all.push_back(*s);
  return all;
}

inline FolStory sat_chosen() { return make_story(kSatChosenPremises, kSatChosenConclusion); }
inline FolStory sat_rejected() { return make_story(kSatRejectedPremises, kSatRejectedConclusion); }
inline FolStory worksheet() { return make_story(kWorksheetPremises, kWorksheetConclusion); }
inline FolStory la_liga() { return make_story(kLaLigaPremises, kLaLigaConclusion); }

}  // namespace folpo::testing
