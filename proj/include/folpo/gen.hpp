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

// Candidate generation against a chat-completion HTTP endpoint. Every
// completion is cached on disk under a hash of (prompt, model, temperature,
// sample index), so a rerun only fetches what is missing.

#pragma once

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>

#include "folpo/hash.hpp"
#include "folpo/parallel.hpp"
#include "folpo/story.hpp"

namespace folpo::gen {

struct RetryPolicy {
  int max_attempts = 3;
  int backoff_base_ms = 250;  // doubled after each failed attempt
};

struct GenConfig {
  std::string endpoint = "http://127.0.0.1:8000/v1/chat/completions";
  std::string api_key_env = "OPENAI_API_KEY";  // name of the variable, never the key
  std::vector<std::string> models;
  std::vector<double> temperatures{0.25, 0.6};
  std::vector<int> shots{2, 4, 8};
  int samples_per_story = 30;
  int samples_per_combination = 0;  // > 0 overrides the per-story split
  std::size_t max_in_flight = 4;
  RetryPolicy retry;
  double request_timeout_seconds = 120;
  std::filesystem::path cache_dir;  // empty: no cache

  void validate() const {
    if (models.empty()) throw std::invalid_argument("at least one model is required");
    if (temperatures.empty() || shots.empty())
      throw std::invalid_argument("temperatures and shot counts must be non-empty");
    for (double t : temperatures)
      if (t < 0) throw std::invalid_argument("temperature must be >= 0");
    for (int n : shots)
      if (n < 1) throw std::invalid_argument("shot count must be >= 1");
    if (samples_per_combination < 0 || (samples_per_combination == 0 && samples_per_story < 1))
      throw std::invalid_argument("sample counts must be positive");
    if (max_in_flight < 1) throw std::invalid_argument("max_in_flight must be >= 1");
    if (retry.max_attempts < 1) throw std::invalid_argument("retry attempts must be >= 1");
  }
};

struct PlanSlot {
  std::string model;
  double temperature = 0;
  int shots = 0;
  int sample_index = 0;
};

// models x temperatures x shots, in that nesting order. The per-story total
// is split evenly and the remainder goes to the first combinations.
inline std::vector<PlanSlot> sampling_plan(const GenConfig& c) {
  c.validate();
  std::size_t combos = c.models.size() * c.temperatures.size() * c.shots.size();
  std::vector<PlanSlot> plan;
  std::size_t i = 0;
  for (const std::string& m : c.models)
    for (double t : c.temperatures)
      for (int n : c.shots) {
        int k = c.samples_per_combination;
        if (k == 0) {
          auto total = static_cast<std::size_t>(c.samples_per_story);
          k = static_cast<int>(total / combos + (i < total % combos ? 1 : 0));
        }
        for (int s = 0; s < k; ++s) plan.push_back({m, t, n, s});
        ++i;
      }
  return plan;
}

// ------------------------------------------------------------- transport

struct ChatRequest {
  std::string model;
  std::string prompt;
  double temperature = 0;
};

struct HttpReply {
  int status = 0;
  std::string body;
};

struct TransportError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ChatTransport {
 public:
  virtual ~ChatTransport() = default;
  // Throws TransportError when no reply arrived at all.
  virtual HttpReply post(const ChatRequest& req) = 0;
};

inline json request_body(const ChatRequest& req) {
  return json{{"model", req.model},
              {"messages", json::array({json{{"role", "user"}, {"content", req.prompt}}})},
              {"temperature", req.temperature},
              {"n", 1}};
}

// choices[0].message.content; throws on anything else.
inline std::string completion_text(const std::string& body) {
  json j = json::parse(body);
  const json& content = j.at("choices").at(0).at("message").at("content");
  if (!content.is_string()) throw std::invalid_argument("content is not a string");
  return content.get<std::string>();
}

class HttpChatTransport : public ChatTransport {
 public:
  HttpChatTransport(const std::string& endpoint, const std::string& api_key_env,
                    double timeout_seconds) {
    std::size_t scheme = endpoint.find("://");
    std::size_t slash = endpoint.find('/', scheme == std::string::npos ? 0 : scheme + 3);
    base_ = endpoint.substr(0, slash);
    path_ = slash == std::string::npos ? "/" : endpoint.substr(slash);
    if (const char* key = std::getenv(api_key_env.c_str()); key && *key) key_ = key;
    timeout_ = timeout_seconds;
  }

  HttpReply post(const ChatRequest& req) override {
    httplib::Client cli(base_);
    if (!cli.is_valid()) throw TransportError("invalid endpoint '" + base_ + "'");
    auto secs = static_cast<time_t>(timeout_);
    cli.set_connection_timeout(secs);
    cli.set_read_timeout(secs);
    cli.set_write_timeout(secs);
    httplib::Headers headers;
    if (!key_.empty()) headers.emplace("Authorization", "Bearer " + key_);
    auto res = cli.Post(path_, headers, request_body(req).dump(), "application/json");
    if (!res) throw TransportError("request failed: " + httplib::to_string(res.error()));
    return {res->status, res->body};
  }

 private:
  std::string base_, path_, key_;
  double timeout_ = 120;
};

// ----------------------------------------------------------------- cache

struct CachedCompletion {
  std::string completion;
  std::string timestamp;
};

inline std::string cache_key(const std::string& prompt, const std::string& model,
                             double temperature, int sample_index) {
  return sha256_hex(json::array({prompt, model, temperature, sample_index}).dump());
}

// One file per key. Reads are lock-free; writes go through one mutex and
// land via rename so a killed run never leaves a torn entry.
class CompletionCache {
 public:
  explicit CompletionCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) std::filesystem::create_directories(dir_);
  }

  bool enabled() const { return !dir_.empty(); }

  std::optional<CachedCompletion> get(const std::string& key) const {
    if (!enabled()) return std::nullopt;
    std::ifstream in(dir_ / (key + ".json"));
    if (!in) return std::nullopt;
    try {
      json j = json::parse(in);
      return CachedCompletion{j.at("completion").get<std::string>(), j.value("timestamp", "")};
    } catch (const std::exception&) {
      return std::nullopt;  // unreadable entry is refetched
    }
  }

  void put(const std::string& key, const CachedCompletion& c) {
    if (!enabled()) return;
    std::lock_guard lock(mu_);
    auto tmp = dir_ / (key + ".tmp");
    {
      std::ofstream out(tmp, std::ios::binary);
      out << json{{"completion", c.completion}, {"timestamp", c.timestamp}}.dump();
    }
    std::filesystem::rename(tmp, dir_ / (key + ".json"));
  }

 private:
  std::filesystem::path dir_;
  std::mutex mu_;
};

// ------------------------------------------------------------- generate

struct GenStats {
  std::size_t requests = 0;  // HTTP attempts, including retries
  std::size_t cache_hits = 0;
  std::size_t failures = 0;  // records left with a NetworkError
};

inline std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Exemplars with the query's own id are left out of its prompt.
inline std::vector<Exemplar> exemplars_for(const NlStory& query, const std::vector<Exemplar>& all) {
  std::vector<Exemplar> out;
  for (const Exemplar& e : all)
    if (e.story.id != query.id) out.push_back(e);
  return out;
}

using SleepFn = std::function<void(std::chrono::milliseconds)>;

// One record per (story, plan slot), in story order then plan order.
// Failed fetches become records with fetch_error set; nothing throws for
// network trouble.
inline std::vector<CandidateRecord> generate(const std::vector<NlStory>& stories,
                                             const std::vector<Exemplar>& exemplars,
                                             const GenConfig& config, ChatTransport& transport,
                                             GenStats* stats = nullptr,
                                             SleepFn sleep = nullptr) {
  std::vector<PlanSlot> plan = sampling_plan(config);
  if (!sleep) sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  for (const PlanSlot& s : plan)
    for (const NlStory& q : stories)
      if (static_cast<std::size_t>(s.shots) > exemplars_for(q, exemplars).size())
        throw std::invalid_argument("not enough exemplars for " + std::to_string(s.shots) +
                                    " shots");

  CompletionCache cache(config.cache_dir);
  std::vector<CandidateRecord> out(stories.size() * plan.size());
  std::atomic<std::size_t> requests{0}, hits{0}, failures{0};

  parallel_for(out.size(), config.max_in_flight, [&](std::size_t job) {
    const NlStory& q = stories[job / plan.size()];
    const PlanSlot& slot = plan[job % plan.size()];
    CandidateRecord& rec = out[job];
    rec.story_id = q.id;
    rec.meta = {slot.model, slot.shots, slot.temperature, slot.sample_index, {}};

    std::string prompt = build_prompt(q, exemplars_for(q, exemplars), static_cast<std::size_t>(slot.shots));
    std::string key = cache_key(prompt, slot.model, slot.temperature, slot.sample_index);
    if (auto hit = cache.get(key)) {
      ++hits;
      rec.raw_completion = hit->completion;
      rec.meta.timestamp = hit->timestamp;
      return;
    }
    std::string last_error;
    for (int attempt = 0; attempt < config.retry.max_attempts; ++attempt) {
      if (attempt > 0) sleep(std::chrono::milliseconds(config.retry.backoff_base_ms << (attempt - 1)));
      ++requests;
      try {
        HttpReply reply = transport.post({slot.model, prompt, slot.temperature});
        if (reply.status != 200) {
          last_error = "HTTP " + std::to_string(reply.status);
          continue;
        }
        rec.raw_completion = completion_text(reply.body);
        rec.meta.timestamp = utc_timestamp();
        cache.put(key, {rec.raw_completion, rec.meta.timestamp});
        return;
      } catch (const std::exception& e) {
        last_error = e.what();
      }
    }
    ++failures;
    rec.fetch_error = "NetworkError: " + last_error;
  });

  if (stats) {
    stats->requests += requests;
    stats->cache_hits += hits;
    stats->failures += failures;
  }
  return out;
}

// Candidate file produced elsewhere; records come back unlabeled.
inline Loaded<CandidateRecord> ingest_offline(const std::string& path) {
  return load_candidates(path);
}

}  // namespace folpo::gen
