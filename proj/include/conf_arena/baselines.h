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

// Absolute-confidence baselines: the model's stated confidence for a single
// greedy answer, and a self-consistency score over sampled answers.

#ifndef CONF_ARENA_BASELINES_H_
#define CONF_ARENA_BASELINES_H_

#include <span>
#include <string>
#include <vector>

#include "conf_arena/core.h"
#include "conf_arena/modelio.h"
#include "json.hpp"

namespace conf_arena {

inline constexpr int kSelfConsistencySamples = 15;
inline constexpr double kSelfConsistencyTemperature = 0.7;

struct SampleSet {
  std::string question_id;
  std::vector<ParsedAnswer> samples;
  double temperature = 0.0;
};

// Stated confidence per question; a missing confidence scores 0.
ScoreTable direct_confidence(std::span<const QuestionRecord> questions,
                             std::span<const AnswerRecord> answers);

// k samples of the direct prompt at `temperature`, sample_index 0..k-1.
SampleSet collect_samples(const QuestionRecord& question, const ChatClient& client,
                          int k, double temperature);

std::vector<SampleSet> collect_all_samples(std::span<const QuestionRecord> questions,
                                           const ChatClient& client, int k,
                                           double temperature);

struct SelfConsistencyResult {
  Choice final_choice;
  double score = 0.0;
};

// Modal non-abstaining choice (ties: higher mean stated confidence, then lower
// index). Score = agreement fraction * mean confidence of the agreeing
// samples, with a missing confidence counted as 1. All-abstain gives
// (abstain, 0).
SelfConsistencyResult self_consistency_aggregate(const SampleSet& samples);

struct SelfConsistencyBaseline {
  ScoreTable scores;
  // Correctness follows the aggregated answer, not the greedy one.
  std::vector<AnswerRecord> answers;
};

SelfConsistencyBaseline self_consistency_baseline(std::span<const QuestionRecord> questions,
                                                  std::span<const SampleSet> samples);

nlohmann::json to_json(const SampleSet& samples);

}  // namespace conf_arena

#endif  // CONF_ARENA_BASELINES_H_
