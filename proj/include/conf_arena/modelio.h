// Copyright 2026 The Conf Arena Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Talking to the model: prompt templates, response parsers, a chat-completion
// client and the on-disk response cache that sits in front of it.

#ifndef CONF_ARENA_MODELIO_H_
#define CONF_ARENA_MODELIO_H_

#include <array>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "conf_arena/core.h"
#include "json.hpp"

namespace conf_arena {

inline constexpr const char* kApiKeyEnv = "CONF_ARENA_API_KEY";
inline constexpr int kAnswerMaxTokens = 64;
inline constexpr int kPreferenceMaxTokens = 64;
inline constexpr int kCotMaxTokens = 512;

struct ChatRequest {
  std::string prompt_text;
  double temperature = 0.0;
  int max_tokens = kAnswerMaxTokens;
  // Distinguishes repeated samples of one prompt in the cache.
  int sample_index = 0;
};

struct ChatResponse {
  std::string text;
  std::string model_name;
  bool cached = false;
};

struct ModelEndpointConfig {
  // e.g. "https://api.openai.com/v1"; "/chat/completions" is appended.
  std::string base_url;
  std::string model_name;
  std::string api_key;
  std::filesystem::path cache_dir;  // empty disables caching
  std::chrono::milliseconds timeout{120'000};
  int max_retries = 3;
  std::chrono::milliseconds retry_backoff{500};
  std::size_t max_concurrency = 4;
};

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

// Content address of a request: model, prompt, temperature and sample index.
std::string cache_key(std::string_view model_name, const ChatRequest& request);

// One JSON file per key, named by the key. Reads and writes of distinct keys
// proceed concurrently; writes to the same key are serialized and land via
// rename, so readers never observe a partial file.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir);

  std::optional<nlohmann::json> get(const std::string& key) const;
  void put(const std::string& key, const nlohmann::json& raw_response) const;

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::mutex& lock_for(const std::string& key) const;

  std::filesystem::path dir_;
  mutable std::array<std::mutex, 64> locks_;
};

// Pulls choices[0].message.content out of a chat-completion response body.
std::string extract_completion_text(const nlohmann::json& raw_response);

// Produces the raw chat-completion JSON for one request.
class ChatTransport {
 public:
  virtual ~ChatTransport() = default;
  virtual nlohmann::json send(const ChatRequest& request,
                              const ModelEndpointConfig& endpoint) = 0;
};

// Chat-completion HTTP API with bounded retries on network failures, 429 and
// 5xx. Other non-success statuses throw StatusError immediately.
class HttpTransport : public ChatTransport {
 public:
  nlohmann::json send(const ChatRequest& request,
                      const ModelEndpointConfig& endpoint) override;
};

// In-process transport for tests and simulations: the callback maps a request
// to the completion text, which is wrapped in a chat-completion envelope.
class FunctionTransport : public ChatTransport {
 public:
  using Handler = std::function<std::string(const ChatRequest&)>;

  explicit FunctionTransport(Handler handler) : handler_(std::move(handler)) {}

  nlohmann::json send(const ChatRequest& request,
                      const ModelEndpointConfig& endpoint) override;

 private:
  Handler handler_;
};

// Cache in front of a transport. Thread-safe; callers may issue up to
// max_concurrency() requests at once.
class ChatClient {
 public:
  ChatClient(ModelEndpointConfig endpoint, std::shared_ptr<ChatTransport> transport);

  ChatResponse complete(const ChatRequest& request) const;

  const ModelEndpointConfig& endpoint() const { return endpoint_; }
  std::size_t max_concurrency() const { return endpoint_.max_concurrency; }
  // Requests that reached the transport (cache misses).
  std::size_t network_calls() const { return network_calls_.load(); }

 private:
  ModelEndpointConfig endpoint_;
  std::shared_ptr<ChatTransport> transport_;
  std::optional<ResponseCache> cache_;
  mutable std::atomic<std::size_t> network_calls_{0};
};

// One-shot completion over HTTP, honoring the endpoint's cache directory.
ChatResponse complete(const ChatRequest& request, const ModelEndpointConfig& endpoint);

// --- Prompts --------------------------------------------------------------

// kIJ shows q_i as "Question 1"; kJI shows q_j first.
enum class PresentationOrder { kIJ, kJI };

std::string render_direct_prompt(const QuestionRecord& question);

std::string render_relative_prompt(const QuestionRecord& q_i, const AnswerRecord& a_i,
                                   const QuestionRecord& q_j, const AnswerRecord& a_j,
                                   PresentationOrder order);

std::string render_cot_relative_prompt(const QuestionRecord& q_i,
                                       const AnswerRecord& a_i,
                                       const QuestionRecord& q_j,
                                       const AnswerRecord& a_j,
                                       PresentationOrder order);

// Neither answer is shown; the model is asked which question is harder.
std::string render_difficulty_prompt(const QuestionRecord& q_i,
                                     const QuestionRecord& q_j,
                                     PresentationOrder order);

// --- Parsers --------------------------------------------------------------

struct ParsedAnswer {
  Choice choice;
  std::optional<double> confidence;

  bool operator==(const ParsedAnswer&) const = default;
};

ParsedAnswer parse_answer_confidence(std::string_view text, int n_choices);

enum class PreferenceOutcome { kFirst, kSecond, kUnparseable };

// Which shown question (1 or 2) the model is more confident in. In difficulty
// mode the question called more difficult loses, so the outcome is inverted.
PreferenceOutcome parse_preference(std::string_view text, PreferenceMode mode);

}  // namespace conf_arena

#endif  // CONF_ARENA_MODELIO_H_
