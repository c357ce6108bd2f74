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

#include "conf_arena/prefgen.h"

#include <numeric>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "conf_arena/error.h"
#include "conf_arena/parallel.h"
#include "conf_arena/rng.h"
#include "spdlog/spdlog.h"

namespace conf_arena {
namespace {

constexpr std::uint64_t kPlanStream = 0x706c616e;  // "plan"

template <typename T>
std::unordered_map<std::string, const T*> index_by_id(std::span<const T> items,
                                                       auto id_of) {
  std::unordered_map<std::string, const T*> out;
  for (const auto& item : items) out.emplace(id_of(item), &item);
  return out;
}

std::string render_for_mode(PreferenceMode mode, const Matchup& m,
                            const QuestionRecord& q_i, const AnswerRecord* a_i,
                            const QuestionRecord& q_j, const AnswerRecord* a_j) {
  switch (mode) {
    case PreferenceMode::kPlain:
      return render_relative_prompt(q_i, *a_i, q_j, *a_j, m.order);
    case PreferenceMode::kCot:
      return render_cot_relative_prompt(q_i, *a_i, q_j, *a_j, m.order);
    case PreferenceMode::kDifficulty:
      return render_difficulty_prompt(q_i, q_j, m.order);
  }
  throw DataError("unknown preference mode");
}

}  // namespace

MatchupPlan plan_matchups(std::span<const std::string> ids, int n, std::uint64_t seed) {
  if (n < 1) throw ConfigError("comparisons per question must be >= 1");
  if (ids.size() < 2) throw DataError("need at least two questions to plan matchups");
  std::unordered_set<std::string_view> unique(ids.begin(), ids.end());
  if (unique.size() != ids.size()) throw DataError("duplicate question ids in plan");

  const std::size_t m = ids.size();
  const auto n_size = static_cast<std::size_t>(n);
  const bool distinct = n_size <= m - 1;
  Rng rng = make_rng(seed, kPlanStream);
  std::bernoulli_distribution coin(0.5);

  MatchupPlan plan;
  plan.n_per_question = n;
  plan.matchups.reserve(m * n_size);
  std::vector<std::size_t> others(m - 1);
  for (std::size_t i = 0; i < m; ++i) {
    // Every index except i.
    std::iota(others.begin(), others.begin() + i, 0);
    std::iota(others.begin() + i, others.end(), i + 1);
    for (std::size_t k = 0; k < n_size; ++k) {
      std::size_t j;
      if (distinct) {
        std::uniform_int_distribution<std::size_t> pick(k, others.size() - 1);
        std::swap(others[k], others[pick(rng)]);
        j = others[k];
      } else {
        std::uniform_int_distribution<std::size_t> pick(0, others.size() - 1);
        j = others[pick(rng)];
      }
      const auto order = coin(rng) ? PresentationOrder::kIJ : PresentationOrder::kJI;
      plan.matchups.push_back({ids[i], ids[j], order});
    }
  }
  return plan;
}

MatchupPlan plan_matchups(std::span<const QuestionRecord> questions, int n,
                          std::uint64_t seed) {
  const auto ids = question_ids(questions);
  return plan_matchups(std::span<const std::string>(ids), n, seed);
}

std::vector<AnswerRecord> generate_answers(std::span<const QuestionRecord> questions,
                                           const ChatClient& client) {
  std::vector<AnswerRecord> out(questions.size());
  parallel_for(questions.size(), client.max_concurrency(), [&](std::size_t i) {
    const auto& q = questions[i];
    ChatRequest req{render_direct_prompt(q), 0.0, kAnswerMaxTokens, 0};
    const ChatResponse resp = client.complete(req);
    const ParsedAnswer parsed =
        parse_answer_confidence(resp.text, static_cast<int>(q.choices.size()));
    out[i] = make_answer(q, parsed.choice, parsed.confidence);
  });
  return out;
}

PreferenceDataset generate_preferences(const MatchupPlan& plan,
                                       std::span<const QuestionRecord> questions,
                                       std::span<const AnswerRecord> answers,
                                       PreferenceMode mode, const ChatClient& client) {
  const auto q_by_id =
      index_by_id(questions, [](const QuestionRecord& q) { return q.id; });
  const auto a_by_id =
      index_by_id(answers, [](const AnswerRecord& a) { return a.question_id; });
  const bool needs_answers = mode != PreferenceMode::kDifficulty;

  auto question = [&](const std::string& id) -> const QuestionRecord& {
    auto it = q_by_id.find(id);
    if (it == q_by_id.end()) throw DataError("plan references unknown question '" + id + "'");
    return *it->second;
  };
  auto answer = [&](const std::string& id) -> const AnswerRecord* {
    if (!needs_answers) return nullptr;
    auto it = a_by_id.find(id);
    if (it == a_by_id.end()) throw DataError("no answer for question '" + id + "'");
    return it->second;
  };
  // Validate up front so a bad plan fails before any request is sent.
  for (const auto& m : plan.matchups) {
    question(m.i_id);
    question(m.j_id);
    answer(m.i_id);
    answer(m.j_id);
  }

  const int max_tokens = mode == PreferenceMode::kCot ? kCotMaxTokens : kPreferenceMaxTokens;
  std::vector<std::optional<PreferenceRecord>> slots(plan.matchups.size());
  parallel_for(plan.matchups.size(), client.max_concurrency(), [&](std::size_t idx) {
    const Matchup& m = plan.matchups[idx];
    const std::string prompt = render_for_mode(mode, m, question(m.i_id), answer(m.i_id),
                                               question(m.j_id), answer(m.j_id));
    // One re-ask on an unparseable reply; sample_index 1 keeps it out of the
    // first reply's cache slot.
    for (int attempt = 0; attempt < 2; ++attempt) {
      const ChatResponse resp = client.complete({prompt, 0.0, max_tokens, attempt});
      const PreferenceOutcome outcome = parse_preference(resp.text, mode);
      if (outcome == PreferenceOutcome::kUnparseable) continue;
      const bool first_wins = outcome == PreferenceOutcome::kFirst;
      slots[idx] = PreferenceRecord{first_wins ? m.first_shown() : m.second_shown(),
                                    first_wins ? m.second_shown() : m.first_shown(),
                                    mode, m.first_shown(), sha256_hex(resp.text)};
      return;
    }
    spdlog::warn("dropping matchup {} vs {}: unparseable after re-ask", m.i_id, m.j_id);
  });

  PreferenceDataset out;
  out.n_per_question = plan.n_per_question;
  out.mode = mode;
  out.planned = plan.matchups.size();
  for (auto& slot : slots) {
    if (slot) {
      out.records.push_back(std::move(*slot));
    } else {
      ++out.dropped;
    }
  }
  return out;
}

nlohmann::json preference_manifest(const PreferenceDataset& data, std::uint64_t seed,
                                   const std::string& model_name) {
  return {{"seed", seed},
          {"n", data.n_per_question},
          {"mode", std::string(to_string(data.mode))},
          {"planned", data.planned},
          {"records", data.records.size()},
          {"dropped", data.dropped},
          {"model", model_name}};
}

}  // namespace conf_arena
