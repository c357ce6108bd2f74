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

// Domain types shared by every stage of the pipeline, plus the on-disk
// formats: dataset JSONL, answer JSONL, preference JSONL and ScoreTable JSON.

#ifndef CONF_ARENA_CORE_H_
#define CONF_ARENA_CORE_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace conf_arena {

inline constexpr std::size_t kMinChoices = 2;
inline constexpr std::size_t kMaxChoices = 26;

struct QuestionRecord {
  std::string id;
  std::string text;
  std::vector<std::string> choices;
  int gold_index = 0;

  bool operator==(const QuestionRecord&) const = default;
};

// A chosen option index, or std::nullopt when the model's output could not be
// parsed (the abstain marker). Abstentions are always scored incorrect.
using Choice = std::optional<int>;
inline constexpr Choice kAbstain = std::nullopt;

struct AnswerRecord {
  std::string question_id;
  Choice chosen_index;
  std::optional<double> stated_confidence;
  bool correct = false;

  bool operator==(const AnswerRecord&) const = default;
};

enum class PreferenceMode { kPlain, kCot, kDifficulty };

std::string_view to_string(PreferenceMode mode);
PreferenceMode parse_preference_mode(std::string_view name);

// One decided matchup: the model was more confident in `winner_id`.
struct PreferenceRecord {
  std::string winner_id;
  std::string loser_id;
  PreferenceMode mode = PreferenceMode::kPlain;
  std::string first_shown_id;
  std::string raw_response_digest;

  bool operator==(const PreferenceRecord&) const = default;
};

enum class Method { kElo, kTrueSkill, kBradleyTerry, kDirect, kSelfConsistency };

std::string_view to_string(Method method);
Method parse_method(std::string_view name);

struct ScoreTable {
  Method method = Method::kElo;
  std::map<std::string, double> scores;
  bool normalized = false;

  bool operator==(const ScoreTable&) const = default;
};

struct RunConfig {
  std::filesystem::path dataset_path;
  std::string base_url;
  std::string model_name;
  int comparisons_per_question = 15;
  double answer_temperature = 0.0;
  double sample_temperature = 0.7;
  PreferenceMode mode = PreferenceMode::kPlain;
  Method method = Method::kElo;
  nlohmann::json hyperparameters = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::filesystem::path cache_dir;
};

void validate(const QuestionRecord& question);
void validate(const PreferenceRecord& record);

// Builds an AnswerRecord whose `correct` bit agrees with `question`.
AnswerRecord make_answer(const QuestionRecord& question, Choice chosen,
                         std::optional<double> stated_confidence);

// True iff the chosen index equals the gold index. Throws DataError when the
// answer refers to a different question.
bool correctness(const AnswerRecord& answer, const QuestionRecord& question);

// Affine map onto [0,1]: min -> 0, max -> 1. When every score is equal the
// range is degenerate and every id maps to 0.5.
std::map<std::string, double> minmax_normalize(
    const std::map<std::string, double>& raw);

// --- Datasets -------------------------------------------------------------

std::vector<QuestionRecord> parse_dataset(std::istream& in);
std::vector<QuestionRecord> load_dataset(const std::filesystem::path& path);
void write_dataset(std::ostream& out, std::span<const QuestionRecord> questions);
void save_dataset(const std::filesystem::path& path,
                  std::span<const QuestionRecord> questions);

// --- Answers --------------------------------------------------------------

nlohmann::json to_json(const AnswerRecord& answer);
AnswerRecord answer_from_json(const nlohmann::json& j);
std::vector<AnswerRecord> load_answers(const std::filesystem::path& path);
void save_answers(const std::filesystem::path& path,
                  std::span<const AnswerRecord> answers);

// Orders `answers` to match `questions` and re-derives correctness. Throws
// DataError when a question has no answer or an answer has no question.
std::vector<AnswerRecord> align_answers(std::span<const QuestionRecord> questions,
                                        std::span<const AnswerRecord> answers);

// --- Preferences ----------------------------------------------------------

nlohmann::json to_json(const PreferenceRecord& record);
PreferenceRecord preference_from_json(const nlohmann::json& j);
std::vector<PreferenceRecord> parse_preferences(std::istream& in);
std::vector<PreferenceRecord> load_preferences(const std::filesystem::path& path);
void write_preferences(std::ostream& out,
                       std::span<const PreferenceRecord> records);
void save_preferences(const std::filesystem::path& path,
                      std::span<const PreferenceRecord> records);

// --- Score tables ---------------------------------------------------------

nlohmann::json to_json(const ScoreTable& table);
ScoreTable score_table_from_json(const nlohmann::json& j);
ScoreTable load_score_table(const std::filesystem::path& path);
void save_score_table(const std::filesystem::path& path, const ScoreTable& table);

// --- Misc file helpers ----------------------------------------------------

nlohmann::json load_json(const std::filesystem::path& path);
void save_json(const std::filesystem::path& path, const nlohmann::json& j);

std::vector<std::string> question_ids(std::span<const QuestionRecord> questions);

}  // namespace conf_arena

#endif  // CONF_ARENA_CORE_H_
