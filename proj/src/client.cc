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

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <functional>
#include <regex>
#include <sstream>
#include <thread>

#include "conf_arena/error.h"
#include "conf_arena/modelio.h"
#include "httplib.h"
#include "spdlog/spdlog.h"

namespace conf_arena {
namespace {

using nlohmann::json;

constexpr std::size_t kBodyExcerptChars = 300;

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;    // prefix without trailing slash
};

SplitUrl split_url(const std::string& base_url) {
  static const std::regex re(R"(^(https?://[^/]+)(/.*)?$)", std::regex::icase);
  std::smatch m;
  if (!std::regex_match(base_url, m, re)) {
    throw ConfigError("invalid base URL '" + base_url +
                      "'; expected http(s)://host[:port][/path]");
  }
  std::string path = m[2].matched ? m[2].str() : std::string();
  while (!path.empty() && path.back() == '/') path.pop_back();
  return {m[1].str(), path};
}

bool retryable_status(int status) { return status == 429 || status >= 500; }

json completion_envelope(std::string_view model, std::string text) {
  return json{{"object", "chat.completion"},
              {"model", model},
              {"choices",
               json::array({json{{"index", 0},
                                 {"message", {{"role", "assistant"},
                                              {"content", std::move(text)}}},
                                 {"finish_reason", "stop"}}})}};
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

std::string cache_key(std::string_view model_name, const ChatRequest& request) {
  // JSON array serialization keeps field boundaries unambiguous.
  const json fields = json::array(
      {model_name, request.prompt_text, request.temperature, request.sample_index});
  return sha256_hex(fields.dump());
}

ResponseCache::ResponseCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::mutex& ResponseCache::lock_for(const std::string& key) const {
  return locks_[std::hash<std::string>{}(key) % locks_.size()];
}

std::optional<json> ResponseCache::get(const std::string& key) const {
  std::lock_guard lock(lock_for(key));
  std::ifstream in(dir_ / key);
  if (!in) return std::nullopt;
  try {
    return json::parse(in);
  } catch (const json::exception&) {
    spdlog::warn("ignoring corrupt cache entry {}", key);
    return std::nullopt;
  }
}

void ResponseCache::put(const std::string& key, const json& raw_response) const {
  std::lock_guard lock(lock_for(key));
  std::ostringstream tmp_name;
  tmp_name << key << ".tmp." << std::this_thread::get_id();
  const auto tmp = dir_ / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw DataError("cannot write cache entry " + tmp.string());
    out << raw_response.dump();
  }
  std::filesystem::rename(tmp, dir_ / key);
}

std::string extract_completion_text(const json& raw_response) {
  try {
    const auto& content = raw_response.at("choices").at(0).at("message").at("content");
    return content.is_null() ? std::string() : content.get<std::string>();
  } catch (const json::exception& e) {
    throw TransportError(std::string("malformed chat-completion response: ") +
                         e.what());
  }
}

json HttpTransport::send(const ChatRequest& request,
                         const ModelEndpointConfig& endpoint) {
  const SplitUrl url = split_url(endpoint.base_url);
  const std::string path = url.path + "/chat/completions";
  const json body{{"model", endpoint.model_name},
                  {"messages", json::array({json{{"role", "user"},
                                                 {"content", request.prompt_text}}})},
                  {"temperature", request.temperature},
                  {"max_tokens", request.max_tokens}};
  const std::string payload = body.dump();

  httplib::Client cli(url.origin);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(endpoint.timeout);
  cli.set_connection_timeout(secs);
  cli.set_read_timeout(secs);
  cli.set_write_timeout(secs);
  httplib::Headers headers;
  if (!endpoint.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + endpoint.api_key);
  }

  std::string last_error;
  for (int attempt = 0; attempt <= endpoint.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(endpoint.retry_backoff * (1 << (attempt - 1)));
    }
    auto res = cli.Post(path, headers, payload, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      spdlog::warn("chat request failed ({}), attempt {}/{}", last_error, attempt + 1,
                   endpoint.max_retries + 1);
      continue;
    }
    if (res->status >= 200 && res->status < 300) {
      try {
        return json::parse(res->body);
      } catch (const json::exception& e) {
        throw TransportError(std::string("response body is not JSON: ") + e.what());
      }
    }
    const std::string excerpt = res->body.substr(0, kBodyExcerptChars);
    if (!retryable_status(res->status) || attempt == endpoint.max_retries) {
      throw StatusError(res->status, excerpt);
    }
    spdlog::warn("chat request returned HTTP {}, attempt {}/{}", res->status,
                 attempt + 1, endpoint.max_retries + 1);
  }
  throw TransportError("chat request to " + endpoint.base_url + " failed after " +
                       std::to_string(endpoint.max_retries + 1) +
                       " attempts: " + last_error);
}

json FunctionTransport::send(const ChatRequest& request,
                             const ModelEndpointConfig& endpoint) {
  return completion_envelope(endpoint.model_name, handler_(request));
}

ChatClient::ChatClient(ModelEndpointConfig endpoint,
                       std::shared_ptr<ChatTransport> transport)
    : endpoint_(std::move(endpoint)), transport_(std::move(transport)) {
  if (!transport_) throw ConfigError("chat client needs a transport");
  if (!endpoint_.cache_dir.empty()) cache_.emplace(endpoint_.cache_dir);
}

ChatResponse ChatClient::complete(const ChatRequest& request) const {
  const std::string key = cache_key(endpoint_.model_name, request);
  if (cache_) {
    if (auto hit = cache_->get(key)) {
      return {extract_completion_text(*hit), endpoint_.model_name, true};
    }
  }
  json raw = transport_->send(request, endpoint_);
  ++network_calls_;
  std::string text = extract_completion_text(raw);
  if (cache_) cache_->put(key, raw);
  return {std::move(text), endpoint_.model_name, false};
}

ChatResponse complete(const ChatRequest& request, const ModelEndpointConfig& endpoint) {
  ChatClient client(endpoint, std::make_shared<HttpTransport>());
  return client.complete(request);
}

}  // namespace conf_arena
