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

#include "conf_arena/baselines.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "conf_arena/error.h"
#include "conf_arena/parallel.h"

namespace conf_arena {

ScoreTable direct_confidence(std::span<const QuestionRecord> questions,
                             std::span<const AnswerRecord> answers) {
  const auto aligned = align_answers(questions, answers);
  ScoreTable t;
  t.method = Method::kDirect;
  t.normalized = true;
  for (const auto& a : aligned) {
    t.scores.emplace(a.question_id, a.stated_confidence.value_or(0.0));
  }
  return t;
}

SampleSet collect_samples(const QuestionRecord& question, const ChatClient& client,
                          int k, double temperature) {
  if (k < 1) throw ConfigError("sample count must be >= 1");
  SampleSet out{question.id, std::vector<ParsedAnswer>(static_cast<std::size_t>(k)),
                temperature};
  const std::string prompt = render_direct_prompt(question);
  const int n_choices = static_cast<int>(question.choices.size());
  parallel_for(out.samples.size(), client.max_concurrency(), [&](std::size_t i) {
    const ChatResponse resp =
        client.complete({prompt, temperature, kAnswerMaxTokens, static_cast<int>(i)});
    out.samples[i] = parse_answer_confidence(resp.text, n_choices);
  });
  return out;
}

std::vector<SampleSet> collect_all_samples(std::span<const QuestionRecord> questions,
                                           const ChatClient& client, int k,
                                           double temperature) {
  if (k < 1) throw ConfigError("sample count must be >= 1");
  std::vector<SampleSet> out(questions.size());
  for (std::size_t i = 0; i < questions.size(); ++i) {
    out[i] = SampleSet{questions[i].id,
                       std::vector<ParsedAnswer>(static_cast<std::size_t>(k)), temperature};
  }
  // Flatten (question, sample) so the concurrency limit spans questions.
  const std::size_t per = static_cast<std::size_t>(k);
  parallel_for(questions.size() * per, client.max_concurrency(), [&](std::size_t idx) {
    const std::size_t qi = idx / per;
    const std::size_t si = idx % per;
    const auto& q = questions[qi];
    const ChatResponse resp = client.complete(
        {render_direct_prompt(q), temperature, kAnswerMaxTokens, static_cast<int>(si)});
    out[qi].samples[si] =
        parse_answer_confidence(resp.text, static_cast<int>(q.choices.size()));
  });
  return out;
}

SelfConsistencyResult self_consistency_aggregate(const SampleSet& samples) {
  if (samples.samples.empty()) throw DataError("self-consistency needs at least one sample");
  // Confidences are summed in sorted order so sample order cannot change the
  // result, not even in the last bit.
  std::map<int, std::vector<double>> by_choice;  // ordered by choice index
  for (const auto& s : samples.samples) {
    if (s.choice) by_choice[*s.choice].push_back(s.confidence.value_or(1.0));
  }
  if (by_choice.empty()) return {kAbstain, 0.0};

  struct Tally {
    int choice;
    std::size_t votes;
    double mean_confidence;
  };
  std::vector<Tally> tallies;
  for (auto& [choice, confs] : by_choice) {
    std::sort(confs.begin(), confs.end());
    const double sum = std::accumulate(confs.begin(), confs.end(), 0.0);
    tallies.push_back({choice, confs.size(), sum / static_cast<double>(confs.size())});
  }
  const Tally* best = &tallies.front();
  for (const auto& t : tallies) {
    // Strict comparisons keep the lower index on a full tie.
    if (t.votes > best->votes ||
        (t.votes == best->votes && t.mean_confidence > best->mean_confidence)) {
      best = &t;
    }
  }
  const double agreement =
      static_cast<double>(best->votes) / static_cast<double>(samples.samples.size());
  const double mean_confidence = best->mean_confidence;
  return {best->choice, std::clamp(agreement * mean_confidence, 0.0, 1.0)};
}

SelfConsistencyBaseline self_consistency_baseline(std::span<const QuestionRecord> questions,
                                                  std::span<const SampleSet> samples) {
  std::unordered_map<std::string, const SampleSet*> by_id;
  for (const auto& s : samples) by_id.emplace(s.question_id, &s);
  SelfConsistencyBaseline out;
  out.scores.method = Method::kSelfConsistency;
  out.scores.normalized = true;
  for (const auto& q : questions) {
    auto it = by_id.find(q.id);
    if (it == by_id.end()) throw DataError("no samples for question '" + q.id + "'");
    const auto result = self_consistency_aggregate(*it->second);
    out.scores.scores.emplace(q.id, result.score);
    out.answers.push_back(make_answer(q, result.final_choice, result.score));
  }
  return out;
}

nlohmann::json to_json(const SampleSet& samples) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& s : samples.samples) {
    list.push_back({{"choice", s.choice ? nlohmann::json(*s.choice) : nlohmann::json(nullptr)},
                    {"confidence",
                     s.confidence ? nlohmann::json(*s.confidence) : nlohmann::json(nullptr)}});
  }
  return {{"question_id", samples.question_id},
          {"temperature", samples.temperature},
          {"samples", std::move(list)}};
}

}  // namespace conf_arena
