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

#include <CLI11.hpp>
#include <httplib.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "folpo/folpo.hpp"

namespace {

namespace fs = std::filesystem;
using folpo::json;

// Configuration problems exit with 2, everything else that fails with 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void log_event(const std::string& event, json fields = json::object()) {
  fields["event"] = event;
  std::cerr << fields.dump() << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Common {
  std::uint64_t seed = 0;
  std::size_t workers = folpo::default_workers();
  folpo::prover::Budget budget;
};

void add_budget(CLI::App* app, folpo::prover::Budget& b) {
  app->add_option("--max-seconds", b.max_seconds, "Prover wall-clock limit per refutation")
      ->capture_default_str();
  app->add_option("--max-kept", b.max_kept_clauses, "Prover kept-clause limit")->capture_default_str();
  app->add_option("--max-iterations", b.max_iterations, "Prover given-clause iterations")
      ->capture_default_str();
  app->add_option("--max-depth", b.max_term_depth, "Deepest term the prover keeps")
      ->capture_default_str();
}

std::vector<folpo::NlStory> load_corpus_or_throw(const std::string& path) {
  auto loaded = folpo::load_corpus(path);
  for (const auto& d : loaded.diagnostics)
    log_event("corpus_diagnostic", {{"file", path}, {"line", d.line}, {"message", d.message}});
  return loaded.records;
}

std::string label_text(const folpo::LabelResult& r) {
  if (r.label != folpo::Label::Error) return folpo::to_string(r.label);
  return std::string("Error(") + folpo::to_string(r.error_reason) + ")";
}

json outcome_json(const folpo::prover::RefutationOutcome& o) {
  return json{{"status", folpo::prover::to_string(o.status)},
              {"kept_clauses", o.kept_clause_count},
              {"iterations", o.iterations},
              {"seconds", o.elapsed_seconds}};
}

json label_json(const folpo::LabelResult& r) {
  json j{{"label", folpo::to_string(r.label)}, {"budget_limited", r.budget_limited}};
  if (r.label == folpo::Label::Error) j["error_reason"] = folpo::to_string(r.error_reason);
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (r.entail_outcome) j["entail"] = outcome_json(*r.entail_outcome);
  if (r.contradict_outcome) j["contradict"] = outcome_json(*r.contradict_outcome);
  return j;
}

// Corpus stories that carry FOL, as (id, story) pairs.
std::vector<folpo::external::NamedStory> fol_stories(const std::vector<folpo::NlStory>& corpus) {
  std::vector<folpo::external::NamedStory> out;
  for (const auto& s : corpus) {
    if (!s.gold_fol) {
      log_event("skip_story", {{"id", s.id}, {"reason", "no FOL"}});
      continue;
    }
    out.push_back({s.id, *s.gold_fol});
  }
  return out;
}

// ------------------------------------------------------------ commands

int cmd_parse(const std::string& formula, const std::string& story_file, const std::string& dialect) {
  auto d = dialect == "unicode" ? folpo::syntax::Dialect::Unicode : folpo::syntax::Dialect::Ascii;
  std::vector<std::string> lines;
  if (!formula.empty()) lines.push_back(formula);
  if (!story_file.empty()) {
    std::istringstream in(read_file(story_file));
    std::string line;
    while (std::getline(in, line)) {
      auto t = folpo::detail::trim(line);
      if (!t.empty() && t[0] != '#') lines.emplace_back(t);
    }
  }
  if (lines.empty()) throw ConfigError("give --formula or --story");
  int rc = 0;
  for (const std::string& text : lines) {
    auto r = folpo::syntax::parse_formula(text);
    if (!r.ok()) {
      for (const auto& diag : r.diagnostics) std::cerr << folpo::syntax::format_diagnostic(text, diag) << "\n";
      rc = 1;
      continue;
    }
    std::cout << folpo::syntax::render(*r.formula, d) << "\n";
  }
  return rc;
}

folpo::FolStory story_from_file(const std::string& path) {
  try {
    return folpo::parse_story_text(read_file(path));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

int cmd_prove(const std::string& story_file, const Common& c) {
  folpo::FolStory s = story_from_file(story_file);
  auto cs = folpo::clausify::to_clauses(s);
  for (bool entail : {true, false}) {
    auto clauses = cs.premise_clauses;
    const auto& extra = entail ? cs.conclusion_clauses_neg : cs.conclusion_clauses_pos;
    clauses.insert(clauses.end(), extra.begin(), extra.end());
    auto o = folpo::prover::refute(clauses, c.budget);
    std::cout << (entail ? "premises + not conclusion: " : "premises + conclusion: ")
              << folpo::prover::to_string(o.status) << " (" << o.iterations << " iterations, "
              << o.kept_clause_count << " kept)\n";
    if (o.status == folpo::prover::Status::Refuted) std::cout << folpo::prover::format_proof(o, cs.symbols);
  }
  return 0;
}

int cmd_classify(const std::string& story_file, const std::string& corpus, bool as_json, const Common& c) {
  if (!story_file.empty()) {
    auto r = folpo::classify(story_from_file(story_file), c.budget);
    std::cout << (as_json ? label_json(r).dump() : label_text(r)) << "\n";
    return 0;
  }
  if (corpus.empty()) throw ConfigError("give --story or --corpus");
  auto stories = fol_stories(load_corpus_or_throw(corpus));
  std::vector<folpo::LabelResult> results(stories.size());
  folpo::parallel_for(stories.size(), c.workers,
                      [&](std::size_t i) { results[i] = folpo::classify(stories[i].story, c.budget); });
  for (std::size_t i = 0; i < stories.size(); ++i) {
    if (as_json) {
      json j = label_json(results[i]);
      j["id"] = stories[i].id;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << stories[i].id << "\t" << label_text(results[i]) << "\n";
    }
  }
  return 0;
}

int cmd_lint(const std::string& story_file, const std::string& corpus, bool as_json,
             const folpo::lint::LintOptions& opt) {
  std::vector<folpo::external::NamedStory> stories;
  if (!story_file.empty()) stories.push_back({story_file, story_from_file(story_file)});
  else if (!corpus.empty()) stories = fol_stories(load_corpus_or_throw(corpus));
  else throw ConfigError("give --story or --corpus");
  for (const auto& s : stories) {
    auto ds = folpo::lint::lint(s.story, opt);
    if (as_json) {
      for (const auto& d : ds) {
        json j = folpo::lint::to_json(d);
        j["id"] = s.id;
        std::cout << j.dump() << "\n";
      }
    } else {
      std::cout << folpo::lint::format_listing(s.id, ds);
    }
  }
  return 0;
}

void write_candidates(const std::string& path, const std::vector<folpo::CandidateRecord>& recs) {
  std::string out;
  for (const auto& r : recs) {
    json j = folpo::to_json(r);
    if (r.label) {
      j["label"] = folpo::to_string(r.label->label);
      if (r.label->label == folpo::Label::Error) j["error_reason"] = folpo::to_string(r.label->error_reason);
      j["budget_limited"] = r.label->budget_limited;
    }
    out += j.dump() + "\n";
  }
  folpo::dataset::detail::write_atomically(path, out);
}

struct GenArgs {
  std::string corpus, exemplars, out;
  folpo::gen::GenConfig config;
};

int cmd_gen(GenArgs& a) {
  auto stories = load_corpus_or_throw(a.corpus);
  auto exemplars = folpo::exemplars_from(load_corpus_or_throw(a.exemplars));
  if (a.config.models.empty()) throw ConfigError("at least one --model is required");
  try {
    a.config.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  folpo::gen::HttpChatTransport http(a.config.endpoint, a.config.api_key_env,
                                     a.config.request_timeout_seconds);
  folpo::gen::GenStats stats;
  auto recs = folpo::gen::generate(stories, exemplars, a.config, http, &stats);
  write_candidates(a.out, recs);
  log_event("gen_done", {{"records", recs.size()},
                         {"requests", stats.requests},
                         {"cache_hits", stats.cache_hits},
                         {"failures", stats.failures}});
  return 0;
}

std::vector<folpo::CandidateRecord> load_and_label(const std::string& candidates,
                                                   const std::vector<folpo::NlStory>& corpus,
                                                   const Common& c) {
  auto loaded = folpo::gen::ingest_offline(candidates);
  for (const auto& d : loaded.diagnostics)
    log_event("candidate_diagnostic", {{"file", candidates}, {"line", d.line}, {"message", d.message}});
  folpo::dataset::label_all(loaded.records, corpus, c.budget, c.workers);
  return loaded.records;
}

int cmd_ingest(const std::string& candidates, const std::string& corpus, const std::string& out,
               const Common& c) {
  auto stories = load_corpus_or_throw(corpus);
  auto recs = load_and_label(candidates, stories, c);
  write_candidates(out, recs);
  log_event("ingest_done", {{"records", recs.size()}});
  return 0;
}

struct BuildArgs {
  std::string corpus, candidates, out, pairing = "sampled", exemplars;
  std::size_t sft_target = 0, pref_target = 0, prompt_shots = 0;
};

int cmd_build(const BuildArgs& a, const Common& c) {
  auto stories = load_corpus_or_throw(a.corpus);
  folpo::dataset::BuildOptions opt;
  opt.seed = c.seed;
  opt.pairing = a.pairing == "all" ? folpo::dataset::Pairing::All : folpo::dataset::Pairing::Sampled;
  opt.sft_target = a.sft_target;
  opt.pref_target = a.pref_target;
  opt.prompt_shots = a.prompt_shots;
  if (a.prompt_shots > 0) {
    if (a.exemplars.empty()) throw ConfigError("--prompt-shots needs --exemplars");
    opt.exemplars = folpo::exemplars_from(load_corpus_or_throw(a.exemplars));
  }
  auto recs = load_and_label(a.candidates, stories, c);
  auto result = folpo::dataset::build(stories, recs, opt);
  for (const auto& line : result.log) log_event("build_note", {{"message", line}});
  folpo::dataset::emit(result, a.out, {opt, c.budget});
  std::cout << folpo::dataset::stats_table(result.stats);
  return 0;
}

struct EvalArgs {
  std::string gold, predictions, candidates, out;
  bool majority = false, buckets = false;
};

int cmd_eval(const EvalArgs& a, const Common& c) {
  auto corpus = load_corpus_or_throw(a.gold);
  std::vector<std::string> ids;
  std::vector<folpo::Label> golds;
  std::vector<std::size_t> sizes;
  for (const auto& s : corpus) {
    if (!s.gold_label) throw std::runtime_error("story " + s.id + " has no gold label");
    ids.push_back(s.id);
    golds.push_back(*s.gold_label);
    sizes.push_back(s.premises.size());
  }
  std::vector<folpo::eval::RunPredictions> runs;
  if (!a.predictions.empty()) {
    std::istringstream in(read_file(a.predictions));
    runs = folpo::eval::load_predictions(in, ids);
  } else if (!a.candidates.empty()) {
    // each sample index is one run
    auto recs = load_and_label(a.candidates, corpus, c);
    std::ostringstream preds;
    for (const auto& r : recs) {
      folpo::Label l = r.label ? r.label->label : folpo::Label::Error;
      preds << json{{"story_id", r.story_id}, {"run", r.meta.sample_index}, {"label", folpo::to_string(l)}}.dump()
            << "\n";
    }
    std::istringstream in(preds.str());
    runs = folpo::eval::load_predictions(in, ids);
  } else {
    throw ConfigError("give --predictions or --candidates");
  }
  if (a.majority) runs = {folpo::eval::majority_vote(runs)};
  auto report = a.buckets ? folpo::eval::score_bucketed(golds, sizes, runs) : folpo::eval::score(golds, runs);
  std::vector<folpo::eval::TableRow> rows{{a.majority ? "majority" : "mean of runs", report}};
  for (const auto& [name, b] : report.buckets) rows.push_back({"  " + name, b});
  std::cout << folpo::eval::format_table(rows);
  if (!a.out.empty())
    folpo::dataset::detail::write_atomically(a.out, folpo::eval::to_json(report).dump(2) + "\n");
  return 0;
}

int cmd_stats(const std::string& dir, const std::string& corpus, const std::string& candidates,
              const Common& c) {
  if (!dir.empty()) {
    json s = json::parse(read_file((fs::path(dir) / "stats.json").string()));
    folpo::dataset::BuildStats b;
    auto fill = [](const json& j, folpo::dataset::LabelCounts& out) {
      out = {j.at("True").get<std::size_t>(), j.at("False").get<std::size_t>(),
             j.at("Uncertain").get<std::size_t>()};
    };
    fill(s.at("source"), b.source);
    fill(s.at("sft"), b.sft);
    fill(s.at("pref"), b.pref);
    std::cout << folpo::dataset::stats_table(b);
    return 0;
  }
  if (corpus.empty()) throw ConfigError("give --dir or --corpus");
  auto stories = load_corpus_or_throw(corpus);
  folpo::dataset::BuildStats b;
  for (const auto& s : stories)
    if (s.gold_label && *s.gold_label != folpo::Label::Error)
      b.source[static_cast<std::size_t>(*s.gold_label)]++;
  std::cout << folpo::dataset::stats_table(b);
  if (!candidates.empty()) {
    auto recs = load_and_label(candidates, stories, c);
    auto h = folpo::lint::tag_failures(recs, stories);
    std::cout << "\nL3_syntax " << h.l3_syntax << "\nconsistency_suspect " << h.consistency_suspect
              << "\nother_logic " << h.other_logic << "\n";
  }
  return 0;
}

std::string find_in_path(const std::string& name) {
  if (name.find('/') != std::string::npos) return name;
  const char* path = std::getenv("PATH");
  std::istringstream dirs(path ? path : "");
  std::string d;
  while (std::getline(dirs, d, ':')) {
    fs::path p = fs::path(d) / name;
    if (fs::exists(p)) return p.string();
  }
  return name;
}

int cmd_crosscheck(const std::string& corpus, const std::string& prover, const Common& c) {
  auto stories = fol_stories(load_corpus_or_throw(corpus));
  auto report = folpo::external::cross_check(stories, c.budget, find_in_path(prover), c.workers);
  if (report.skipped) {
    std::cout << "skipped: " << report.skip_reason << "\n";
    return 0;
  }
  for (const auto& e : report.entries)
    std::cout << e.id << "\t" << folpo::to_string(e.internal) << "\t" << folpo::to_string(e.external)
              << "\t" << (e.agree ? "agree" : "DISAGREE") << "\n";
  std::printf("agreement %.2f%%\n", 100.0 * report.agreement_rate);
  return 0;
}

// POST /classify {"premises": [...], "conclusion": "..."}
void handle_classify(const httplib::Request& req, httplib::Response& res, const Common& c) {
  json in;
  try {
    in = json::parse(req.body);
  } catch (const std::exception& e) {
    res.status = 400;
    res.set_content(json{{"error", std::string("bad JSON: ") + e.what()}}.dump(), "application/json");
    return;
  }
  if (!in.contains("premises") || !in["premises"].is_array() || in["premises"].empty() ||
      !in.contains("conclusion") || !in["conclusion"].is_string()) {
    res.status = 400;
    res.set_content(json{{"error", "need premises (non-empty array) and conclusion (string)"}}.dump(),
                    "application/json");
    return;
  }
  std::vector<std::string> lines;
  for (const auto& p : in["premises"]) lines.push_back(p.is_string() ? p.get<std::string>() : p.dump());
  lines.push_back(in["conclusion"].get<std::string>());

  json out;
  json diags = json::array();
  folpo::FolStory story;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto r = folpo::syntax::parse_formula(lines[i]);
    if (!r.ok()) {
      for (const auto& d : r.diagnostics)
        diags.push_back({{"kind", "SyntaxError"}, {"formula_indices", {i}},
                         {"message", folpo::syntax::format_diagnostic(lines[i], d)}});
      continue;
    }
    if (i + 1 < lines.size())
      story.premises.push_back(*r.formula);
    else
      story.conclusion = *r.formula;
  }
  if (!diags.empty()) {
    out = label_json(folpo::LabelResult::error(folpo::ErrorReason::Parse));
  } else {
    out = label_json(folpo::classify(story, c.budget));
    for (const auto& d : folpo::lint::lint(story)) diags.push_back(folpo::lint::to_json(d));
  }
  out["diagnostics"] = diags;
  res.set_content(out.dump(), "application/json");
}

int cmd_serve(const std::string& host, int port, const Common& c) {
  httplib::Server srv;
  srv.Post("/classify", [&](const httplib::Request& req, httplib::Response& res) { handle_classify(req, res, c); });
  srv.Get("/health", [](const httplib::Request&, httplib::Response& res) { res.set_content("ok\n", "text/plain"); });
  int bound = port;
  if (port == 0) {
    bound = srv.bind_to_any_port(host);
  } else if (!srv.bind_to_port(host, port)) {
    throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  }
  if (bound < 0) throw std::runtime_error("cannot bind " + host);
  log_event("serve", {{"host", host}, {"port", bound}});
  std::printf("listening on %s:%d\n", host.c_str(), bound);
  std::fflush(stdout);
  return srv.listen_after_bind() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"folpo: FOL translation checking, dataset building and scoring"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--seed", common.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--workers", common.workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);

  std::string formula, story, corpus, dialect = "ascii", candidates, out, exemplars, dir;
  bool as_json = false;

  auto* parse = app.add_subcommand("parse", "Parse formulas and print them normalized");
  parse->add_option("--formula", formula, "Formula text");
  parse->add_option("--story", story, "File with one formula per line")->check(CLI::ExistingFile);
  parse->add_option("--dialect", dialect, "Output dialect")->check(CLI::IsMember({"ascii", "unicode"}))
      ->capture_default_str();

  auto* prove = app.add_subcommand("prove", "Run both refutations on a story file and print proofs");
  prove->add_option("--story", story, "Story file (last formula is the conclusion)")
      ->required()->check(CLI::ExistingFile);
  add_budget(prove, common.budget);

  auto* classify = app.add_subcommand("classify", "Label a story file or every FOL story in a corpus");
  classify->add_option("--story", story, "Story file (last formula is the conclusion)")->check(CLI::ExistingFile);
  classify->add_option("--corpus", corpus, "Corpus records with premises_fol/conclusion_fol")
      ->check(CLI::ExistingFile);
  classify->add_flag("--json", as_json, "Print JSON with proof statistics");
  add_budget(classify, common.budget);

  folpo::lint::LintOptions lint_opt;
  auto* lint = app.add_subcommand("lint", "Report predicate consistency diagnostics");
  lint->add_option("--story", story, "Story file")->check(CLI::ExistingFile);
  lint->add_option("--corpus", corpus, "Corpus records with FOL")->check(CLI::ExistingFile);
  lint->add_flag("--json", as_json, "One JSON record per diagnostic");
  lint->add_option("--max-edit-distance", lint_opt.max_edit_distance, "Near-duplicate edit distance")
      ->capture_default_str();
  lint->add_option("--max-prefix-suffix", lint_opt.max_prefix_suffix, "Near-duplicate prefix suffix length")
      ->capture_default_str();

  GenArgs gen_args;
  auto& gc = gen_args.config;
  auto* gen = app.add_subcommand("gen", "Sample candidate translations from a chat-completion endpoint");
  gen->add_option("--corpus", gen_args.corpus, "Stories to translate")->required()->check(CLI::ExistingFile);
  gen->add_option("--exemplars", gen_args.exemplars, "Corpus records with FOL used as shots")
      ->required()->check(CLI::ExistingFile);
  gen->add_option("--out", gen_args.out, "Candidate records output")->required();
  gen->add_option("--endpoint", gc.endpoint, "Chat-completion URL")->capture_default_str();
  gen->add_option("--api-key-env", gc.api_key_env, "Environment variable holding the API key")
      ->capture_default_str();
  gen->add_option("--model", gc.models, "Model name (repeatable)")->required();
  gen->add_option("--temperature", gc.temperatures, "Sampling temperature (repeatable)")->capture_default_str();
  gen->add_option("--shots", gc.shots, "Exemplar count (repeatable)")->capture_default_str();
  gen->add_option("--samples-per-story", gc.samples_per_story, "Total samples per story")->capture_default_str();
  gen->add_option("--samples-per-combination", gc.samples_per_combination,
                  "Fixed samples per model/temperature/shots combination (overrides the split)");
  gen->add_option("--max-in-flight", gc.max_in_flight, "Concurrent requests")->capture_default_str();
  gen->add_option("--max-attempts", gc.retry.max_attempts, "Attempts per request")->capture_default_str();
  gen->add_option("--backoff-ms", gc.retry.backoff_base_ms, "First retry delay, doubled each time")
      ->capture_default_str();
  gen->add_option("--timeout", gc.request_timeout_seconds, "Per-request timeout in seconds")->capture_default_str();
  gen->add_option("--cache-dir", gc.cache_dir, "Completion cache directory");

  auto* ingest = app.add_subcommand("ingest", "Load offline candidate records and label them");
  ingest->add_option("--candidates", candidates, "Candidate records")->required()->check(CLI::ExistingFile);
  ingest->add_option("--corpus", corpus, "Source stories")->required()->check(CLI::ExistingFile);
  ingest->add_option("--out", out, "Labeled candidate records output")->required();
  add_budget(ingest, common.budget);

  BuildArgs build_args;
  auto* build = app.add_subcommand("build", "Filter labeled candidates into SFT and preference files");
  build->add_option("--corpus", build_args.corpus, "Source stories with gold labels")
      ->required()->check(CLI::ExistingFile);
  build->add_option("--candidates", build_args.candidates, "Candidate records")->required()->check(CLI::ExistingFile);
  build->add_option("--out", build_args.out, "Output directory")->required();
  build->add_option("--pairing", build_args.pairing, "Preference pairing")
      ->check(CLI::IsMember({"all", "sampled"}))->capture_default_str();
  build->add_option("--sft-target", build_args.sft_target, "Stratified SFT total (0 keeps all)");
  build->add_option("--pref-target", build_args.pref_target, "Stratified pair total (0 keeps all)");
  build->add_option("--prompt-shots", build_args.prompt_shots, "Exemplars in stored prompts")->capture_default_str();
  build->add_option("--exemplars", build_args.exemplars, "Exemplar records for --prompt-shots")
      ->check(CLI::ExistingFile);
  add_budget(build, common.budget);

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Score predictions against gold labels");
  eval->add_option("--gold", eval_args.gold, "Corpus with gold labels")->required()->check(CLI::ExistingFile);
  eval->add_option("--predictions", eval_args.predictions, "Records {story_id, run, label}")
      ->check(CLI::ExistingFile);
  eval->add_option("--candidates", eval_args.candidates, "Candidate records; sample_index is the run")
      ->check(CLI::ExistingFile);
  eval->add_flag("--majority", eval_args.majority, "Score the majority vote across runs");
  eval->add_flag("--buckets", eval_args.buckets, "Add small/medium/large premise-count buckets");
  eval->add_option("--out", eval_args.out, "Report JSON output");
  add_budget(eval, common.budget);

  auto* stats = app.add_subcommand("stats", "Per-label counts of a corpus or a build directory");
  stats->add_option("--dir", dir, "Build output directory")->check(CLI::ExistingDirectory);
  stats->add_option("--corpus", corpus, "Corpus file")->check(CLI::ExistingFile);
  stats->add_option("--candidates", candidates, "Also tag candidate failures")->check(CLI::ExistingFile);
  add_budget(stats, common.budget);

  std::string prover9 = "prover9";
  auto* xcheck = app.add_subcommand("crosscheck", "Compare labels with an external prover");
  xcheck->add_option("--corpus", corpus, "Corpus records with FOL")->required()->check(CLI::ExistingFile);
  xcheck->add_option("--prover9", prover9, "External prover binary")->capture_default_str();
  add_budget(xcheck, common.budget);

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Serve POST /classify over HTTP");
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_option("--port", port, "Port (0 picks a free one)")->capture_default_str();
  add_budget(serve, common.budget);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  try {
    common.budget.validate();
    if (*parse) return cmd_parse(formula, story, dialect);
    if (*prove) return cmd_prove(story, common);
    if (*classify) return cmd_classify(story, corpus, as_json, common);
    if (*lint) return cmd_lint(story, corpus, as_json, lint_opt);
    if (*gen) return cmd_gen(gen_args);
    if (*ingest) return cmd_ingest(candidates, corpus, out, common);
    if (*build) return cmd_build(build_args, common);
    if (*eval) return cmd_eval(eval_args, common);
    if (*stats) return cmd_stats(dir, corpus, candidates, common);
    if (*xcheck) return cmd_crosscheck(corpus, prover9, common);
    if (*serve) return cmd_serve(host, port, common);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
