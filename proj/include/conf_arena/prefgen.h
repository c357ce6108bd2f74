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

// Confidence preference data generation: every question is matched against n
// random opponents and the model says which of the two it is more confident
// it answered correctly.

#ifndef CONF_ARENA_PREFGEN_H_
#define CONF_ARENA_PREFGEN_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "conf_arena/core.h"
#include "conf_arena/modelio.h"
#include "json.hpp"

namespace conf_arena {

struct Matchup {
  std::string i_id;
  std::string j_id;
  PresentationOrder order = PresentationOrder::kIJ;

  const std::string& first_shown() const {
    return order == PresentationOrder::kIJ ? i_id : j_id;
  }
  const std::string& second_shown() const {
    return order == PresentationOrder::kIJ ? j_id : i_id;
  }
  bool operator==(const Matchup&) const = default;
};

// Grouped by anchor: the n matchups of ids[0] first, then ids[1], ...
struct MatchupPlan {
  std::vector<Matchup> matchups;
  int n_per_question = 0;
};

struct PreferenceDataset {
  std::vector<PreferenceRecord> records;
  int n_per_question = 0;
  PreferenceMode mode = PreferenceMode::kPlain;
  std::size_t planned = 0;
  // Matchups still unparseable after one re-ask.
  std::size_t dropped = 0;
};

// Opponents for an anchor are distinct when n <= |ids| - 1, and drawn with
// replacement otherwise. Presentation order is a fair coin per matchup.
MatchupPlan plan_matchups(std::span<const std::string> ids, int n, std::uint64_t seed);
MatchupPlan plan_matchups(std::span<const QuestionRecord> questions, int n,
                          std::uint64_t seed);

// Greedy (T=0) answers with stated confidence via the direct prompt.
std::vector<AnswerRecord> generate_answers(std::span<const QuestionRecord> questions,
                                           const ChatClient& client);

// `answers` may be empty in difficulty mode. Output order follows the plan.
PreferenceDataset generate_preferences(const MatchupPlan& plan,
                                       std::span<const QuestionRecord> questions,
                                       std::span<const AnswerRecord> answers,
                                       PreferenceMode mode, const ChatClient& client);

nlohmann::json preference_manifest(const PreferenceDataset& data, std::uint64_t seed,
                                   const std::string& model_name);

}  // namespace conf_arena

#endif  // CONF_ARENA_PREFGEN_H_
