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

// Natural-language stories, generation records, and the text protocol
// between them: corpus JSONL, few-shot prompts, and EVALUATE blocks.

#pragma once

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "folpo/fol_story.hpp"
#include "folpo/label.hpp"
#include "folpo/syntax/parser.hpp"
#include "folpo/syntax/printer.hpp"

namespace folpo {

using json = nlohmann::json;

struct NlStory {
  std::string id;
  std::vector<std::string> premises;
  std::string conclusion;
  std::optional<Label> gold_label;
  std::optional<FolStory> gold_fol;
};

struct LineDiagnostic {
  std::size_t line = 0;  // 1-based
  std::string message;
};

template <typename T>
struct Loaded {
  std::vector<T> records;
  std::vector<LineDiagnostic> diagnostics;
  std::size_t skipped = 0;
};

namespace detail {

inline std::string json_id(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw std::invalid_argument("id must be a string or an integer");
}

// Calls parse(record, line_no) for every non-blank line; exceptions become
// diagnostics and the line is skipped.
template <typename T, typename F>
Loaded<T> read_jsonl(std::istream& in, F&& parse) {
  Loaded<T> out;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      json j = json::parse(line);
      if (!j.is_object()) throw std::invalid_argument("record is not an object");
      out.records.push_back(parse(j));
    } catch (const std::exception& e) {
      out.diagnostics.push_back({no, e.what()});
      ++out.skipped;
    }
  }
  return out;
}

inline std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

}  // namespace detail

// Corpus record: {id, premises, conclusion, label, premises_fol?, conclusion_fol?}.
// A record whose FOL does not parse keeps its NL side and drops gold_fol.
inline NlStory story_from_json(const json& j, std::vector<std::string>* warnings = nullptr) {
  NlStory s;
  if (!j.contains("id")) throw std::invalid_argument("missing id");
  s.id = detail::json_id(j.at("id"));
  if (!j.contains("premises") || !j.at("premises").is_array())
    throw std::invalid_argument("missing premises");
  for (const json& p : j.at("premises")) s.premises.push_back(p.get<std::string>());
  if (s.premises.empty()) throw std::invalid_argument("no premises");
  if (!j.contains("conclusion") || !j.at("conclusion").is_string() ||
      j.at("conclusion").get<std::string>().empty())
    throw std::invalid_argument("missing conclusion");
  s.conclusion = j.at("conclusion").get<std::string>();
  if (j.contains("label") && !j.at("label").is_null()) {
    auto l = parse_label(j.at("label").get<std::string>());
    if (!l || *l == Label::Error)
      throw std::invalid_argument("unknown label '" + j.at("label").get<std::string>() + "'");
    s.gold_label = l;
  }
  if (j.contains("premises_fol") && j.contains("conclusion_fol")) {
    std::vector<std::string> pf;
    for (const json& p : j.at("premises_fol")) pf.push_back(p.get<std::string>());
    try {
      s.gold_fol = make_story(pf, j.at("conclusion_fol").get<std::string>());
    } catch (const std::invalid_argument& e) {
      if (warnings) warnings->push_back(s.id + ": gold FOL ignored: " + e.what());
    }
  }
  return s;
}

inline json to_json(const NlStory& s) {
  json j{{"id", s.id}, {"premises", s.premises}, {"conclusion", s.conclusion}};
  if (s.gold_label) j["label"] = to_string(*s.gold_label);
  if (s.gold_fol) {
    std::vector<std::string> pf;
    for (const auto& p : s.gold_fol->premises) pf.push_back(syntax::render(p));
    j["premises_fol"] = pf;
    j["conclusion_fol"] = syntax::render(s.gold_fol->conclusion);
  }
  return j;
}

inline Loaded<NlStory> load_corpus(std::istream& in) {
  return detail::read_jsonl<NlStory>(in, [](const json& j) { return story_from_json(j); });
}

inline Loaded<NlStory> load_corpus(const std::string& path) {
  std::ifstream in = detail::open_or_throw(path);
  return load_corpus(in);
}

struct GenerationMeta {
  std::string model_name;
  int shots = 0;
  double temperature = 0.0;
  int sample_index = 0;
  std::string timestamp;  // ISO-8601, informational
};

struct CompletionFailure {
  ErrorReason reason = ErrorReason::Parse;
  std::string message;
};

struct ParsedCompletion {
  std::optional<FolStory> story;
  std::optional<CompletionFailure> failure;
  std::vector<std::string> warnings;
  std::vector<std::string> texts;  // TEXT: lines, aligned loosely with FOL lines

  bool ok() const { return story.has_value(); }
};

struct CandidateRecord {
  std::string story_id;
  GenerationMeta meta;
  std::string raw_completion;
  std::string fetch_error;  // non-empty when generation failed (no completion)
  std::optional<FolStory> parsed;
  std::optional<CompletionFailure> failure;
  std::optional<LabelResult> label;
};

inline json to_json(const CandidateRecord& c) {
  json j{{"story_id", c.story_id},         {"model", c.meta.model_name},
         {"shots", c.meta.shots},          {"temperature", c.meta.temperature},
         {"sample_index", c.meta.sample_index}, {"completion", c.raw_completion}};
  if (!c.meta.timestamp.empty()) j["timestamp"] = c.meta.timestamp;
  if (!c.fetch_error.empty()) j["error"] = c.fetch_error;
  return j;
}

inline CandidateRecord candidate_from_json(const json& j) {
  CandidateRecord c;
  if (!j.contains("story_id")) throw std::invalid_argument("missing story_id");
  c.story_id = detail::json_id(j.at("story_id"));
  c.meta.model_name = j.value("model", std::string());
  c.meta.shots = j.value("shots", 0);
  c.meta.temperature = j.value("temperature", 0.0);
  c.meta.sample_index = j.value("sample_index", 0);
  c.meta.timestamp = j.value("timestamp", std::string());
  c.fetch_error = j.value("error", std::string());
  if (c.meta.temperature < 0) throw std::invalid_argument("negative temperature");
  if (!j.contains("completion") || !j.at("completion").is_string()) {
    if (c.fetch_error.empty()) throw std::invalid_argument("missing completion");
  } else {
    c.raw_completion = j.at("completion").get<std::string>();
  }
  return c;
}

// ---------------------------------------------------------------- prompts

inline constexpr std::string_view kPromptHeader =
    "You are an expert in working with first-order logic (FOL) problems.\n"
    "You will be given a context with a set of premise sentences and a single conclusion "
    "sentence.\n"
    "Your task is to translate each of the premise sentences and the conclusion sentence into "
    "FOL expressions,\n"
    "so that the expressions can be evaluated by a theorem solver to determine whether the "
    "conclusion follows from the premise sentences.\n"
    "Expressions should be adhere to the format of the Python NLTK package logic module.\n";

inline constexpr std::string_view kExamplesIntro = "Here are some examples of the task:\n";

inline constexpr std::string_view kFormatNote =
    "Notice the output inside the <EVALUATE> and </EVALUATE> block. We have taken each sentence "
    "from our premise and conclusion and\n"
    "converted it to the corresponding FOL expression. The lines starting with TEXT: copies the "
    "original sentence from our context. The lines starting\n"
    "with FOL: shows the corresponding FOL form.\n";

inline constexpr std::string_view kQueryIntro =
    "Can you now generate the FOL expressions for the following example, maintaining the format "
    "shown earlier. Do not generate any explanations.\n";

struct Exemplar {
  NlStory story;
  FolStory fol;
};

inline std::string story_block(const NlStory& s) {
  std::string out = "<PREMISES>\n";
  for (const std::string& p : s.premises) out += p + "\n";
  out += "</PREMISES>\n<CONCLUSION>\n" + s.conclusion + "\n</CONCLUSION>\n";
  return out;
}

// TEXT/FOL lines without the surrounding tags. Source text is kept when the
// story carries it, otherwise formulas are rendered.
inline std::string evaluate_lines(const FolStory& fol, const std::vector<std::string>& texts,
                                  syntax::Dialect d = syntax::Dialect::Ascii,
                                  bool prefer_raw = false) {
  std::string out;
  for (std::size_t i = 0; i < fol.formula_count(); ++i) {
    if (i < texts.size()) out += "TEXT:\t" + texts[i] + "\n";
    bool raw = prefer_raw && fol.raw_lines.size() == fol.formula_count();
    out += "FOL:\t" + (raw ? fol.raw_lines[i] : syntax::render(fol.formula(i), d)) + "\n";
  }
  return out;
}

inline std::vector<std::string> sentences(const NlStory& s) {
  std::vector<std::string> t = s.premises;
  t.push_back(s.conclusion);
  return t;
}

inline std::string render_evaluate_block(const FolStory& fol,
                                         const std::vector<std::string>& texts = {},
                                         syntax::Dialect d = syntax::Dialect::Ascii) {
  return "<EVALUATE>\n" + evaluate_lines(fol, texts, d) + "</EVALUATE>\n";
}

// Completion text as a model continuing an opened <EVALUATE> would write it.
inline std::string render_completion(const NlStory& s, const FolStory& fol,
                                     syntax::Dialect d = syntax::Dialect::Ascii) {
  return evaluate_lines(fol, sentences(s), d) + "</EVALUATE>";
}

// Header, n exemplar blocks, then the query with an opened <EVALUATE>.
// n == 0 gives the zero-shot form.
inline std::string build_prompt(const NlStory& query, const std::vector<Exemplar>& exemplars,
                                std::size_t n) {
  if (n > exemplars.size())
    throw std::invalid_argument("requested " + std::to_string(n) + " shots but only " +
                                std::to_string(exemplars.size()) + " exemplars are available");
  std::string out(kPromptHeader);
  if (n > 0) {
    out += kExamplesIntro;
    for (std::size_t i = 0; i < n; ++i) {
      const Exemplar& e = exemplars[i];
      out += "\nExample " + std::to_string(i + 1) + ":\n";
      out += story_block(e.story);
      out += "<EVALUATE>\n" + evaluate_lines(e.fol, sentences(e.story), syntax::Dialect::Ascii, true);
      out += "</EVALUATE>\n";
    }
    out += "\n";
    out += kFormatNote;
  }
  out += "\n";
  out += kQueryIntro;
  out += story_block(query);
  out += "<EVALUATE>\n";
  return out;
}

// Exemplars are corpus records that carry gold FOL.
inline std::vector<Exemplar> exemplars_from(const std::vector<NlStory>& stories) {
  std::vector<Exemplar> out;
  for (const NlStory& s : stories) {
    if (!s.gold_fol) throw std::invalid_argument("exemplar " + s.id + " has no FOL");
    out.push_back({s, *s.gold_fol});
  }
  return out;
}

// ------------------------------------------------------------ completions

namespace detail {

inline std::string_view trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

// Reads the first <EVALUATE> region. FOL: lines are the formulas in order,
// the last one being the conclusion; a line with neither prefix continues
// the previous one.
inline ParsedCompletion parse_completion(std::string_view text, std::size_t expected_premises) {
  ParsedCompletion r;
  auto fail = [&](ErrorReason reason, std::string msg) {
    r.failure = CompletionFailure{reason, std::move(msg)};
    return r;
  };
  std::size_t open = text.find("<EVALUATE>");
  if (open == std::string_view::npos) return fail(ErrorReason::Parse, "no <EVALUATE> block");
  std::string_view body = text.substr(open + std::string_view("<EVALUATE>").size());
  std::size_t close = std::min(body.find("</EVALUATE>"), body.find("<\\EVALUATE>"));
  if (close == std::string_view::npos)
    r.warnings.push_back("missing </EVALUATE>; read to end of text");
  else
    body = body.substr(0, close);

  enum class Kind { None, Text, Fol };
  Kind last = Kind::None;
  std::vector<std::string> fol;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t nl = body.find('\n', pos);
    if (nl == std::string_view::npos) nl = body.size();
    std::string_view line = detail::trim(body.substr(pos, nl - pos));
    pos = nl + 1;
    if (line.empty()) continue;
    if (line.starts_with("TEXT:")) {
      r.texts.emplace_back(detail::trim(line.substr(5)));
      last = Kind::Text;
    } else if (line.starts_with("FOL:")) {
      fol.emplace_back(detail::trim(line.substr(4)));
      last = Kind::Fol;
    } else if (last == Kind::Text) {
      r.texts.back() += " " + std::string(line);
    } else if (last == Kind::Fol) {
      fol.back() += " " + std::string(line);
    }
  }
  if (fol.empty()) return fail(ErrorReason::Parse, "no FOL: lines");

  std::vector<syntax::Formula> parsed;
  for (std::size_t i = 0; i < fol.size(); ++i) {
    syntax::ParseResult pr = syntax::parse_formula(fol[i]);
    if (!pr.ok()) {
      std::string msg = "FOL line " + std::to_string(i + 1) + ": ";
      for (const auto& d : pr.diagnostics) msg += syntax::format_diagnostic(fol[i], d);
      return fail(ErrorReason::Parse, msg);
    }
    parsed.push_back(std::move(*pr.formula));
  }
  if (parsed.size() < 2)
    return fail(ErrorReason::Alignment, "a story needs at least one premise and a conclusion");

  FolStory s;
  s.conclusion = std::move(parsed.back());
  parsed.pop_back();
  s.premises = std::move(parsed);
  s.raw_lines = std::move(fol);
  if (s.premises.size() != expected_premises)
    r.warnings.push_back("Alignment: " + std::to_string(s.premises.size()) +
                         " premise formulas for " + std::to_string(expected_premises) +
                         " premise sentences");
  r.story = std::move(s);
  return r;
}

// Candidate completions continue a prompt that already opened <EVALUATE>,
// so the tag is supplied when the model did not repeat it.
inline ParsedCompletion parse_candidate(std::string_view completion, std::size_t expected_premises) {
  if (completion.find("<EVALUATE>") != std::string_view::npos)
    return parse_completion(completion, expected_premises);
  return parse_completion("<EVALUATE>\n" + std::string(completion), expected_premises);
}

inline Loaded<CandidateRecord> load_candidates(std::istream& in) {
  return detail::read_jsonl<CandidateRecord>(in, candidate_from_json);
}

inline Loaded<CandidateRecord> load_candidates(const std::string& path) {
  std::ifstream in = detail::open_or_throw(path);
  return load_candidates(in);
}

}  // namespace folpo
