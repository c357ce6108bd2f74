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

#include "conf_arena/core.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "conf_arena/error.h"

namespace conf_arena {
namespace {

using nlohmann::json;

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

// Runs `fn` on each non-blank line, prefixing any error with the line number.
template <typename Fn>
void for_each_jsonl(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    try {
      fn(json::parse(line), line_no);
    } catch (const json::exception& e) {
      throw DataError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

QuestionRecord question_from_json(const json& j) {
  QuestionRecord q;
  q.id = j.at("id").get<std::string>();
  q.text = j.at("question").get<std::string>();
  q.choices = j.at("choices").get<std::vector<std::string>>();
  q.gold_index = j.at("gold_index").get<int>();
  validate(q);
  return q;
}

json to_json(const QuestionRecord& q) {
  return json{{"id", q.id},
              {"question", q.text},
              {"choices", q.choices},
              {"gold_index", q.gold_index}};
}

}  // namespace

std::string_view to_string(PreferenceMode mode) {
  switch (mode) {
    case PreferenceMode::kPlain:
      return "plain";
    case PreferenceMode::kCot:
      return "cot";
    case PreferenceMode::kDifficulty:
      return "difficulty";
  }
  return "plain";
}

PreferenceMode parse_preference_mode(std::string_view name) {
  if (name == "plain") return PreferenceMode::kPlain;
  if (name == "cot") return PreferenceMode::kCot;
  if (name == "difficulty") return PreferenceMode::kDifficulty;
  throw DataError("unknown preference mode '" + std::string(name) + "'");
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kElo:
      return "elo";
    case Method::kTrueSkill:
      return "trueskill";
    case Method::kBradleyTerry:
      return "bradley_terry";
    case Method::kDirect:
      return "direct";
    case Method::kSelfConsistency:
      return "self_consistency";
  }
  return "elo";
}

Method parse_method(std::string_view name) {
  if (name == "elo") return Method::kElo;
  if (name == "trueskill") return Method::kTrueSkill;
  if (name == "bradley_terry" || name == "bt") return Method::kBradleyTerry;
  if (name == "direct") return Method::kDirect;
  if (name == "self_consistency" || name == "sc") {
    return Method::kSelfConsistency;
  }
  throw DataError("unknown method '" + std::string(name) + "'");
}

void validate(const QuestionRecord& q) {
  if (q.id.empty()) throw DataError("question id is empty");
  if (q.choices.size() < kMinChoices || q.choices.size() > kMaxChoices) {
    throw DataError("question '" + q.id + "' has " +
                    std::to_string(q.choices.size()) +
                    " choices; expected 2 to 26");
  }
  for (const auto& choice : q.choices) {
    if (choice.empty()) {
      throw DataError("question '" + q.id + "' has an empty choice");
    }
  }
  if (q.gold_index < 0 ||
      static_cast<std::size_t>(q.gold_index) >= q.choices.size()) {
    throw DataError("question '" + q.id + "' gold_index " +
                    std::to_string(q.gold_index) + " out of range");
  }
}

void validate(const PreferenceRecord& r) {
  if (r.winner_id.empty() || r.loser_id.empty()) {
    throw DataError("preference record has an empty id");
  }
  if (r.winner_id == r.loser_id) {
    throw DataError("preference record pits '" + r.winner_id +
                    "' against itself");
  }
  if (r.first_shown_id != r.winner_id && r.first_shown_id != r.loser_id) {
    throw DataError("first_shown '" + r.first_shown_id +
                    "' is neither winner nor loser");
  }
}

AnswerRecord make_answer(const QuestionRecord& question, Choice chosen,
                         std::optional<double> stated_confidence) {
  AnswerRecord a{question.id, chosen, stated_confidence, false};
  a.correct = correctness(a, question);
  return a;
}

bool correctness(const AnswerRecord& answer, const QuestionRecord& question) {
  if (answer.question_id != question.id) {
    throw DataError("answer for '" + answer.question_id +
                    "' checked against question '" + question.id + "'");
  }
  return answer.chosen_index.has_value() &&
         *answer.chosen_index == question.gold_index;
}

std::map<std::string, double> minmax_normalize(
    const std::map<std::string, double>& raw) {
  if (raw.empty()) throw DataError("cannot normalize an empty score map");
  auto [lo_it, hi_it] = std::minmax_element(
      raw.begin(), raw.end(),
      [](const auto& a, const auto& b) { return a.second < b.second; });
  const double lo = lo_it->second;
  const double range = hi_it->second - lo;
  std::map<std::string, double> out;
  for (const auto& [id, value] : raw) {
    out.emplace(id, range > 0.0 ? std::clamp((value - lo) / range, 0.0, 1.0)
                                : 0.5);
  }
  return out;
}

std::vector<QuestionRecord> parse_dataset(std::istream& in) {
  std::vector<QuestionRecord> out;
  std::unordered_set<std::string> seen;
  for_each_jsonl(in, [&](const json& j, std::size_t) {
    QuestionRecord q = question_from_json(j);
    if (!seen.insert(q.id).second) {
      throw DataError("duplicate question id '" + q.id + "'");
    }
    out.push_back(std::move(q));
  });
  return out;
}

std::vector<QuestionRecord> load_dataset(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  try {
    return parse_dataset(in);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_dataset(std::ostream& out, std::span<const QuestionRecord> questions) {
  for (const auto& q : questions) out << to_json(q).dump() << '\n';
}

void save_dataset(const std::filesystem::path& path,
                  std::span<const QuestionRecord> questions) {
  auto out = open_for_write(path);
  write_dataset(out, questions);
}

json to_json(const AnswerRecord& a) {
  json j{{"question_id", a.question_id}, {"correct", a.correct}};
  j["chosen_index"] = a.chosen_index ? json(*a.chosen_index) : json(nullptr);
  j["stated_confidence"] =
      a.stated_confidence ? json(*a.stated_confidence) : json(nullptr);
  return j;
}

AnswerRecord answer_from_json(const json& j) {
  AnswerRecord a;
  a.question_id = j.at("question_id").get<std::string>();
  if (auto it = j.find("chosen_index"); it != j.end() && !it->is_null()) {
    a.chosen_index = it->get<int>();
  }
  if (auto it = j.find("stated_confidence"); it != j.end() && !it->is_null()) {
    const double c = it->get<double>();
    if (!(c >= 0.0 && c <= 1.0)) {
      throw DataError("stated_confidence for '" + a.question_id +
                      "' outside [0,1]");
    }
    a.stated_confidence = c;
  }
  a.correct = j.value("correct", false);
  return a;
}

std::vector<AnswerRecord> load_answers(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  std::vector<AnswerRecord> out;
  try {
    for_each_jsonl(in, [&](const json& j, std::size_t) {
      out.push_back(answer_from_json(j));
    });
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return out;
}

void save_answers(const std::filesystem::path& path,
                  std::span<const AnswerRecord> answers) {
  auto out = open_for_write(path);
  for (const auto& a : answers) out << to_json(a).dump() << '\n';
}

std::vector<AnswerRecord> align_answers(std::span<const QuestionRecord> questions,
                                        std::span<const AnswerRecord> answers) {
  std::unordered_map<std::string, const AnswerRecord*> by_id;
  for (const auto& a : answers) {
    if (!by_id.emplace(a.question_id, &a).second) {
      throw DataError("duplicate answer for '" + a.question_id + "'");
    }
  }
  std::vector<AnswerRecord> out;
  out.reserve(questions.size());
  for (const auto& q : questions) {
    auto it = by_id.find(q.id);
    if (it == by_id.end()) throw DataError("no answer for question '" + q.id + "'");
    AnswerRecord a = *it->second;
    a.correct = correctness(a, q);
    out.push_back(std::move(a));
    by_id.erase(it);
  }
  if (!by_id.empty()) {
    throw DataError("answer for unknown question '" + by_id.begin()->first + "'");
  }
  return out;
}

json to_json(const PreferenceRecord& r) {
  json j{{"winner", r.winner_id},
         {"loser", r.loser_id},
         {"mode", std::string(to_string(r.mode))},
         {"first_shown", r.first_shown_id}};
  if (!r.raw_response_digest.empty()) j["response_digest"] = r.raw_response_digest;
  return j;
}

PreferenceRecord preference_from_json(const json& j) {
  PreferenceRecord r;
  r.winner_id = j.at("winner").get<std::string>();
  r.loser_id = j.at("loser").get<std::string>();
  r.mode = parse_preference_mode(j.at("mode").get<std::string>());
  r.first_shown_id = j.at("first_shown").get<std::string>();
  r.raw_response_digest = j.value("response_digest", std::string());
  validate(r);
  return r;
}

std::vector<PreferenceRecord> parse_preferences(std::istream& in) {
  std::vector<PreferenceRecord> out;
  for_each_jsonl(in, [&](const json& j, std::size_t) {
    out.push_back(preference_from_json(j));
  });
  return out;
}

std::vector<PreferenceRecord> load_preferences(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  try {
    return parse_preferences(in);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_preferences(std::ostream& out,
                       std::span<const PreferenceRecord> records) {
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

void save_preferences(const std::filesystem::path& path,
                      std::span<const PreferenceRecord> records) {
  auto out = open_for_write(path);
  write_preferences(out, records);
}

json to_json(const ScoreTable& t) {
  json scores = json::object();
  for (const auto& [id, v] : t.scores) scores[id] = v;
  return json{{"method", std::string(to_string(t.method))},
              {"normalized", t.normalized},
              {"scores", std::move(scores)}};
}

ScoreTable score_table_from_json(const json& j) {
  ScoreTable t;
  t.method = parse_method(j.at("method").get<std::string>());
  t.normalized = j.at("normalized").get<bool>();
  for (const auto& [id, v] : j.at("scores").items()) {
    const double value = v.get<double>();
    if (t.normalized && !(value >= 0.0 && value <= 1.0)) {
      throw DataError("normalized score for '" + id + "' outside [0,1]");
    }
    t.scores.emplace(id, value);
  }
  return t;
}

ScoreTable load_score_table(const std::filesystem::path& path) {
  try {
    return score_table_from_json(load_json(path));
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void save_score_table(const std::filesystem::path& path, const ScoreTable& table) {
  save_json(path, to_json(table));
}

json load_json(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void save_json(const std::filesystem::path& path, const json& j) {
  auto out = open_for_write(path);
  out << j.dump(2) << '\n';
}

std::vector<std::string> question_ids(std::span<const QuestionRecord> questions) {
  std::vector<std::string> ids;
  ids.reserve(questions.size());
  for (const auto& q : questions) ids.push_back(q.id);
  return ids;
}

}  // namespace conf_arena
