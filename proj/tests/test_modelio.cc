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

#include <random>
#include <set>
#include <thread>

#include "conf_arena/error.h"
#include "conf_arena/modelio.h"
#include "conf_arena/parallel.h"
#include "doctest.h"
#include "mock_chat_server.h"
#include "test_util.h"

namespace ca = conf_arena;
using ca::PreferenceMode;
using ca::PreferenceOutcome;
using ca::PresentationOrder;

namespace {

ca::QuestionRecord q_alpha() {
  return {"alpha", "Which planet is largest?", {"Jupiter", "Mars", "Venus", "Earth"}, 0};
}
ca::QuestionRecord q_beta() {
  return {"beta", "What is 7 times 6?", {"40", "41", "42", "43", "44"}, 2};
}
ca::AnswerRecord a_alpha() { return {"alpha", 0, 0.9, true}; }
ca::AnswerRecord a_beta() { return {"beta", 3, 0.6, false}; }

ca::ModelEndpointConfig endpoint(const std::string& url, const std::filesystem::path& cache) {
  ca::ModelEndpointConfig ep;
  ep.base_url = url;
  ep.model_name = "mock-model";
  ep.api_key = "secret";
  ep.cache_dir = cache;
  ep.timeout = std::chrono::milliseconds(5000);
  ep.retry_backoff = std::chrono::milliseconds(1);
  return ep;
}

}  // namespace

// --- prompts ---------------------------------------------------------------

TEST_CASE("direct prompt ends with the real question and an answer cue") {
  const std::string p = ca::render_direct_prompt(q_alpha());
  CHECK(p.starts_with("Answer the following question to the best of your ability"));
  CHECK(p.find("provide a score between 0 and 1") != std::string::npos);
  CHECK(p.find("Answer: (D)\nConfidence: 0.4") != std::string::npos);
  CHECK(p.find("Answer: (A)\nConfidence: 0.7") != std::string::npos);
  CHECK(p.ends_with("Question: Which planet is largest?\n(A) Jupiter\n(B) Mars\n(C) Venus\n"
                    "(D) Earth\nAnswer:"));
  CHECK(ca::render_direct_prompt(q_alpha()) == p);
}

TEST_CASE("direct prompts differ only in the final question block") {
  const std::string a = ca::render_direct_prompt(q_alpha());
  const std::string b = ca::render_direct_prompt(q_beta());
  const auto cut_a = a.rfind("Question: ");
  const auto cut_b = b.rfind("Question: ");
  CHECK(cut_a == cut_b);
  CHECK(a.substr(0, cut_a) == b.substr(0, cut_b));
  CHECK(a.substr(cut_a) != b.substr(cut_b));
}

TEST_CASE("more than 26 choices cannot be lettered") {
  ca::QuestionRecord q{"big", "?", std::vector<std::string>(27, "x"), 0};
  CHECK_THROWS_AS(ca::render_direct_prompt(q), ca::DataError);
}

TEST_CASE("relative prompt embeds both answers and swaps with order") {
  const std::string ij =
      ca::render_relative_prompt(q_alpha(), a_alpha(), q_beta(), a_beta(), PresentationOrder::kIJ);
  const std::string ji =
      ca::render_relative_prompt(q_alpha(), a_alpha(), q_beta(), a_beta(), PresentationOrder::kJI);
  CHECK(ij.find("Your answer: (A) Jupiter") != std::string::npos);
  CHECK(ij.find("Your answer: (D) 43") != std::string::npos);
  CHECK(ij.find("Question 1: Which planet") < ij.find("Question 2: What is 7"));
  CHECK(ji.find("Question 1: What is 7") < ji.find("Question 2: Which planet"));
  CHECK(ij.find("more confident") != std::string::npos);
  CHECK(ij.size() == ji.size());
  // Same content once the labels are swapped back.
  std::string swapped = ji;
  const auto p1 = swapped.find("Question 1: ");
  const auto p2 = swapped.find("Question 2: ");
  swapped[p1 + 9] = '2';
  swapped[p2 + 9] = '1';
  std::multiset<char> a(ij.begin(), ij.end()), b(swapped.begin(), swapped.end());
  CHECK(a == b);
  CHECK(ca::render_relative_prompt(q_alpha(), a_alpha(), q_beta(), a_beta(),
                                   PresentationOrder::kIJ) == ij);
}

TEST_CASE("abstained answers render as no valid answer") {
  ca::AnswerRecord none{"beta", ca::kAbstain, std::nullopt, false};
  const std::string p =
      ca::render_relative_prompt(q_alpha(), a_alpha(), q_beta(), none, PresentationOrder::kIJ);
  CHECK(p.find("Your answer: (no valid answer)") != std::string::npos);
  CHECK_THROWS_AS(ca::render_relative_prompt(q_alpha(), a_beta(), q_beta(), a_beta(),
                                             PresentationOrder::kIJ),
                  ca::DataError);
}

TEST_CASE("cot prompt carries the mandated response format") {
  const std::string p = ca::render_cot_relative_prompt(q_alpha(), a_alpha(), q_beta(), a_beta(),
                                                       PresentationOrder::kIJ);
  CHECK(p.find("I am more confident that I correctly answered question <your selected "
               "question>, because <your reasoning>.") != std::string::npos);
  CHECK(p.find("and why?") != std::string::npos);
  const std::string q = ca::render_cot_relative_prompt(q_alpha(), a_alpha(), q_beta(), a_beta(),
                                                       PresentationOrder::kJI);
  CHECK(q.find("Question 1: What is 7") != std::string::npos);
  CHECK(ca::render_cot_relative_prompt(q_alpha(), a_alpha(), q_beta(), a_beta(),
                                       PresentationOrder::kIJ) == p);
}

TEST_CASE("difficulty prompt shows no answers") {
  const std::string p = ca::render_difficulty_prompt(q_alpha(), q_beta(), PresentationOrder::kIJ);
  CHECK(p.find("Which question is more difficult?") != std::string::npos);
  CHECK(p.find("is more difficult.") != std::string::npos);
  CHECK(p.find("Your answer") == std::string::npos);
  CHECK(p.find("Question 1: Which planet") < p.find("Question 2: What is 7"));
  const std::string q = ca::render_difficulty_prompt(q_alpha(), q_beta(), PresentationOrder::kJI);
  CHECK(q.find("Question 1: What is 7") < q.find("Question 2: Which planet"));
  CHECK(ca::render_difficulty_prompt(q_alpha(), q_beta(), PresentationOrder::kIJ) == p);
}

TEST_CASE("pair prompts are injective over question, answer and order") {
  std::set<std::string> seen;
  const ca::AnswerRecord alt{"alpha", 1, 0.5, false};
  for (auto order : {PresentationOrder::kIJ, PresentationOrder::kJI}) {
    seen.insert(ca::render_relative_prompt(q_alpha(), a_alpha(), q_beta(), a_beta(), order));
    seen.insert(ca::render_relative_prompt(q_alpha(), alt, q_beta(), a_beta(), order));
    seen.insert(ca::render_cot_relative_prompt(q_alpha(), a_alpha(), q_beta(), a_beta(), order));
    seen.insert(ca::render_difficulty_prompt(q_alpha(), q_beta(), order));
  }
  CHECK(seen.size() == 8);
}

// --- parsers ---------------------------------------------------------------

TEST_CASE("parse_answer_confidence examples") {
  CHECK(ca::parse_answer_confidence("Answer: (A)\nConfidence: 0.7", 4) ==
        ca::ParsedAnswer{0, 0.7});
  CHECK(ca::parse_answer_confidence("Answer: (D) Confidence: 0.4", 5) ==
        ca::ParsedAnswer{3, 0.4});
  CHECK(ca::parse_answer_confidence("I think maybe B?", 4) ==
        ca::ParsedAnswer{ca::kAbstain, std::nullopt});
}

TEST_CASE("parse_answer_confidence edge cases") {
  // Out-of-range letter.
  CHECK(ca::parse_answer_confidence("Answer: (F)\nConfidence: 0.5", 4).choice == ca::kAbstain);
  // Clamping and percentages.
  CHECK(ca::parse_answer_confidence("(B) Confidence: 1.7", 4).confidence == 1.0);
  CHECK(ca::parse_answer_confidence("(B) Confidence: 85%", 4).confidence == doctest::Approx(0.85));
  CHECK(ca::parse_answer_confidence("(C)", 4) == ca::ParsedAnswer{2, std::nullopt});
  // Letter without parentheses after an answer cue.
  CHECK(ca::parse_answer_confidence("Answer: B\nConfidence: 0.3", 4) == ca::ParsedAnswer{1, 0.3});
  // First parenthesized letter wins.
  CHECK(ca::parse_answer_confidence("(B) not (C)", 4).choice == 1);
}

TEST_CASE("parse_preference examples") {
  CHECK(ca::parse_preference("I am more confident that I correctly answered question 2, "
                             "because it is simpler.",
                             PreferenceMode::kCot) == PreferenceOutcome::kSecond);
  CHECK(ca::parse_preference("I am more confident that I correctly answered question 1.",
                             PreferenceMode::kPlain) == PreferenceOutcome::kFirst);
  CHECK(ca::parse_preference("Question 1 is more difficult.", PreferenceMode::kDifficulty) ==
        PreferenceOutcome::kSecond);
  CHECK(ca::parse_preference("Question 2 is more difficult.", PreferenceMode::kDifficulty) ==
        PreferenceOutcome::kFirst);
  CHECK(ca::parse_preference("both are easy", PreferenceMode::kPlain) ==
        PreferenceOutcome::kUnparseable);
  CHECK(ca::parse_preference("", PreferenceMode::kDifficulty) == PreferenceOutcome::kUnparseable);
}

TEST_CASE("parsers are total on arbitrary input") {
  std::mt19937_64 rng(3);
  const std::vector<std::string> atoms{"Question ", "question 1", "2", "(", ")", "A", "Z",
                                       "Answer:", "Confidence:", " ", "\n", "0.", "9", "%",
                                       "-", "e400", "is more difficult", "\xff", "\0"};
  for (int trial = 0; trial < 3000; ++trial) {
    std::string s;
    const int len = static_cast<int>(rng() % 40);
    for (int i = 0; i < len; ++i) {
      if (rng() % 3 == 0) {
        s += static_cast<char>(rng() % 256);
      } else {
        s += atoms[rng() % atoms.size()];
      }
    }
    const auto a = ca::parse_answer_confidence(s, 1 + static_cast<int>(rng() % 26));
    if (a.confidence) {
      CHECK(*a.confidence >= 0.0);
      CHECK(*a.confidence <= 1.0);
    }
    for (auto mode : {PreferenceMode::kPlain, PreferenceMode::kCot, PreferenceMode::kDifficulty}) {
      CHECK_NOTHROW(ca::parse_preference(s, mode));
    }
  }
  // Very long inputs are bounded.
  const std::string big(1 << 20, '(');
  CHECK_NOTHROW(ca::parse_answer_confidence(big, 4));
  CHECK_NOTHROW(ca::parse_preference(big, PreferenceMode::kPlain));
  CHECK(ca::parse_answer_confidence("Confidence: 1e999999", 4).confidence == 1.0);
}

// --- cache ---------------------------------------------------------------

TEST_CASE("cache keys separate every field") {
  const ca::ChatRequest base{"prompt", 0.0, 64, 0};
  const auto k = ca::cache_key("m", base);
  CHECK(k == ca::cache_key("m", base));
  CHECK(k.size() == 64);
  CHECK(k != ca::cache_key("m2", base));
  CHECK(k != ca::cache_key("m", {"prompt!", 0.0, 64, 0}));
  CHECK(k != ca::cache_key("m", {"prompt", 0.7, 64, 0}));
  CHECK(k != ca::cache_key("m", {"prompt", 0.0, 64, 1}));
  CHECK(ca::sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("second identical request is served from the cache") {
  ca::test::TempDir dir;
  int calls = 0;
  auto transport = std::make_shared<ca::FunctionTransport>([&](const ca::ChatRequest& r) {
    ++calls;
    return "reply to " + r.prompt_text;
  });
  ca::ChatClient client(endpoint("http://unused", dir.path()), transport);
  const auto first = client.complete({"hello", 0.0, 64, 0});
  const auto second = client.complete({"hello", 0.0, 64, 0});
  CHECK_FALSE(first.cached);
  CHECK(second.cached);
  CHECK(first.text == second.text);
  CHECK(calls == 1);
  CHECK(client.network_calls() == 1);
  // The entry is a file named by the key holding the raw response.
  const auto file = dir.path() / ca::cache_key("mock-model", {"hello", 0.0, 64, 0});
  REQUIRE(std::filesystem::exists(file));
  CHECK(ca::extract_completion_text(nlohmann::json::parse(ca::test::read_file(file))) ==
        "reply to hello");
  // A fresh client over the same directory reuses it.
  ca::ChatClient again(endpoint("http://unused", dir.path()), transport);
  CHECK(again.complete({"hello", 0.0, 64, 0}).cached);
  CHECK(calls == 1);
}

TEST_CASE("fifteen sample indices make fifteen cache entries") {
  ca::test::TempDir dir;
  auto transport = std::make_shared<ca::FunctionTransport>(
      [](const ca::ChatRequest& r) { return "sample " + std::to_string(r.sample_index); });
  ca::ChatClient client(endpoint("http://unused", dir.path()), transport);
  for (int s = 0; s < 15; ++s) client.complete({"same prompt", 0.7, 64, s});
  std::size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir.path())) {
    if (e.is_regular_file()) ++files;
  }
  CHECK(files == 15);
  CHECK(client.network_calls() == 15);
}

TEST_CASE("concurrent use of the cache") {
  ca::test::TempDir dir;
  auto transport = std::make_shared<ca::FunctionTransport>(
      [](const ca::ChatRequest& r) { return "echo " + r.prompt_text; });
  ca::ChatClient client(endpoint("http://unused", dir.path()), transport);
  std::vector<std::string> out(400);
  ca::parallel_for(out.size(), 8, [&](std::size_t i) {
    // 40 distinct keys, each requested 10 times.
    out[i] = client.complete({"p" + std::to_string(i % 40), 0.0, 64, 0}).text;
  });
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == "echo p" + std::to_string(i % 40));
  for (int k = 0; k < 40; ++k) {
    CHECK(client.complete({"p" + std::to_string(k), 0.0, 64, 0}).cached);
  }
}

TEST_CASE("malformed completion envelopes are transport errors") {
  CHECK_THROWS_AS(ca::extract_completion_text(nlohmann::json::object()), ca::TransportError);
  CHECK(ca::extract_completion_text(
            {{"choices", {{{"message", {{"content", "hi"}}}}}}}) == "hi");
}

// --- HTTP against the mock server -----------------------------------------

TEST_CASE("HTTP transport against the mock server") {
  const std::vector<ca::QuestionRecord> qs{q_alpha(), q_beta()};
  ca::testing::MockChatServer server{ca::testing::MockModel(qs)};
  server.start();
  ca::test::TempDir dir;
  const auto ep = endpoint(server.base_url(), dir.path());

  SUBCASE("temperature 0 is repeatable and cached") {
    ca::ChatClient client(ep, std::make_shared<ca::HttpTransport>());
    const std::string prompt = ca::render_direct_prompt(q_alpha());
    const auto a = client.complete({prompt, 0.0, 64, 0});
    const auto b = client.complete({prompt, 0.0, 64, 0});
    CHECK(a.text == b.text);
    CHECK(b.cached);
    CHECK(server.requests() == 1);
    auto uncached = ep;
    uncached.cache_dir.clear();
    const auto c = ca::complete({prompt, 0.0, 64, 0}, uncached);
    const auto d = ca::complete({prompt, 0.0, 64, 0}, uncached);
    CHECK(c.text == a.text);
    CHECK(d.text == a.text);
    CHECK_FALSE(d.cached);
    CHECK(server.requests() == 3);
  }
  SUBCASE("5xx is retried") {
    server.fail_next(2, 503);
    auto cfg = ep;
    cfg.cache_dir.clear();
    const auto r = ca::complete({ca::render_direct_prompt(q_beta()), 0.0, 64, 0}, cfg);
    CHECK(ca::parse_answer_confidence(r.text, 5).confidence.has_value());
    CHECK(server.requests() == 3);
  }
  SUBCASE("429 is retried") {
    server.fail_next(1, 429);
    auto cfg = ep;
    cfg.cache_dir.clear();
    CHECK_NOTHROW(ca::complete({"anything", 0.0, 64, 0}, cfg));
    CHECK(server.requests() == 2);
  }
  SUBCASE("retry budget exhausted") {
    server.fail_next(100, 500);
    auto cfg = ep;
    cfg.cache_dir.clear();
    cfg.max_retries = 2;
    CHECK_THROWS_AS(ca::complete({"anything", 0.0, 64, 0}, cfg), ca::TransportError);
    CHECK(server.requests() == 3);
  }
  SUBCASE("4xx is a status error with a body excerpt") {
    server.fail_next(1, 404);
    auto cfg = ep;
    cfg.cache_dir.clear();
    try {
      ca::complete({"anything", 0.0, 64, 0}, cfg);
      FAIL("expected StatusError");
    } catch (const ca::StatusError& e) {
      CHECK(e.status() == 404);
      CHECK(std::string(e.what()).find("injected failure") != std::string::npos);
    }
    CHECK(server.requests() == 1);
  }
  SUBCASE("missing key is refused by the server") {
    auto cfg = ep;
    cfg.cache_dir.clear();
    cfg.api_key.clear();
    CHECK_THROWS_AS(ca::complete({"anything", 0.0, 64, 0}, cfg), ca::StatusError);
  }
  server.stop();
}

TEST_CASE("unreachable endpoint is a transport error") {
  int port = 0;
  {
    ca::testing::MockChatServer probe{ca::testing::MockModel({})};
    probe.start();
    port = probe.port();
  }
  ca::ModelEndpointConfig cfg = endpoint("http://127.0.0.1:" + std::to_string(port) + "/v1", {});
  cfg.max_retries = 1;
  CHECK_THROWS_AS(ca::complete({"x", 0.0, 64, 0}, cfg), ca::TransportError);
  CHECK_THROWS_AS(ca::complete({"x", 0.0, 64, 0}, endpoint("not a url", {})), ca::ConfigError);
}
