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

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "folpo/syntax/parser.hpp"
#include "folpo/syntax/printer.hpp"

namespace folpo {

// Premises f_1..f_n and one conclusion f_{n+1}.
struct FolStory {
  std::vector<syntax::Formula> premises;
  syntax::Formula conclusion;
  // Source text per formula, premises first; may be empty for built stories.
  std::vector<std::string> raw_lines;

  std::size_t formula_count() const { return premises.size() + 1; }

  // Index n refers to the conclusion.
  const syntax::Formula& formula(std::size_t i) const {
    return i < premises.size() ? premises[i] : conclusion;
  }
};

// Builds a story from formula strings; throws std::invalid_argument on the
// first unparseable line.
inline FolStory make_story(std::span<const std::string> premises, const std::string& conclusion) {
  if (premises.empty()) throw std::invalid_argument("a story needs at least one premise");
  FolStory s;
  for (const std::string& p : premises) {
    s.premises.push_back(syntax::parse_or_throw(p));
    s.raw_lines.push_back(p);
  }
  s.conclusion = syntax::parse_or_throw(conclusion);
  s.raw_lines.push_back(conclusion);
  return s;
}

inline FolStory make_story(std::initializer_list<std::string> premises,
                           const std::string& conclusion) {
  std::vector<std::string> v(premises);
  return make_story(std::span<const std::string>(v), conclusion);
}

// Plain-text story: one formula per non-empty line, '#' starts a comment
// line, the last formula is the conclusion.
inline FolStory parse_story_text(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(pos, nl - pos);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
      line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first != std::string::npos && line[first] != '#') lines.push_back(line.substr(first));
    pos = nl + 1;
  }
  if (lines.size() < 2)
    throw std::invalid_argument("story needs at least one premise and a conclusion");
  std::string conclusion = lines.back();
  lines.pop_back();
  return make_story(std::span<const std::string>(lines), conclusion);
}

inline std::string render_story(const FolStory& s,
                                syntax::Dialect d = syntax::Dialect::Ascii) {
  std::string out;
  for (const syntax::Formula& p : s.premises) out += syntax::render(p, d) + "\n";
  out += syntax::render(s.conclusion, d) + "\n";
  return out;
}

}  // namespace folpo
