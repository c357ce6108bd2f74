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

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <regex>
#include <string>

#include "conf_arena/modelio.h"

namespace conf_arena {
namespace {

// libstdc++'s regex executor recurses per character; responses are bounded by
// max_tokens anyway, so only a prefix is inspected.
constexpr std::size_t kMaxParsedChars = 16384;

const std::regex& paren_letter_re() {
  static const std::regex re(R"(\(([A-Z])\))");
  return re;
}

const std::regex& answer_letter_re() {
  static const std::regex re(R"(answer\s*:?\s*([A-Z])\b)", std::regex::icase);
  return re;
}

const std::regex& confidence_re() {
  static const std::regex re(
      R"(confidence(?:\s+(?:score|level))?\s*(?:is|:|=)?\s*([0-9]+(?:\.[0-9]+)?|\.[0-9]+)\s*(%)?)",
      std::regex::icase);
  return re;
}

const std::regex& answered_question_re() {
  static const std::regex re(R"(answered\s+question\s*([12])\b)", std::regex::icase);
  return re;
}

const std::regex& question_label_re() {
  static const std::regex re(R"(question\s*([12])\b)", std::regex::icase);
  return re;
}

const std::regex& bare_label_re() {
  static const std::regex re(R"(^\s*([12])\s*\.?\s*$)");
  return re;
}

const std::regex& more_difficult_re() {
  static const std::regex re(
      R"(question\s*([12])\s+is\s+(?:the\s+)?more\s+difficult)", std::regex::icase);
  return re;
}

std::optional<int> first_label(std::string_view text, const std::regex& re) {
  std::match_results<std::string_view::const_iterator> m;
  if (std::regex_search(text.begin(), text.end(), m, re)) {
    return m[1].str() == "1" ? 1 : 2;
  }
  return std::nullopt;
}

}  // namespace

ParsedAnswer parse_answer_confidence(std::string_view text, int n_choices) {
  text = text.substr(0, kMaxParsedChars);
  ParsedAnswer out;
  std::match_results<std::string_view::const_iterator> m;

  if (std::regex_search(text.begin(), text.end(), m, paren_letter_re()) ||
      std::regex_search(text.begin(), text.end(), m, answer_letter_re())) {
    const int idx = std::toupper(static_cast<unsigned char>(m[1].str()[0])) - 'A';
    if (idx >= 0 && idx < n_choices) out.choice = idx;
  }

  if (std::regex_search(text.begin(), text.end(), m, confidence_re())) {
    const std::string digits = m[1].str();
    double value = std::strtod(digits.c_str(), nullptr);
    if (m[2].matched) value /= 100.0;
    out.confidence = std::clamp(value, 0.0, 1.0);
  }
  return out;
}

PreferenceOutcome parse_preference(std::string_view text, PreferenceMode mode) {
  text = text.substr(0, kMaxParsedChars);
  std::optional<int> label;
  if (mode == PreferenceMode::kDifficulty) {
    label = first_label(text, more_difficult_re());
  } else {
    label = first_label(text, answered_question_re());
  }
  if (!label) label = first_label(text, question_label_re());
  if (!label) label = first_label(text, bare_label_re());
  if (!label) return PreferenceOutcome::kUnparseable;

  bool first = (*label == 1);
  if (mode == PreferenceMode::kDifficulty) first = !first;
  return first ? PreferenceOutcome::kFirst : PreferenceOutcome::kSecond;
}

}  // namespace conf_arena
