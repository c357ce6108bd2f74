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

#include <string>

#include "conf_arena/error.h"
#include "conf_arena/modelio.h"

namespace conf_arena {
namespace {

// Instruction and fake few-shot examples for direct confidence elicitation.
constexpr std::string_view kDirectPreamble =
    "Answer the following question to the best of your ability, and provide a "
    "score between 0 and 1 to indicate the confidence you have in your "
    "answer. Confidence scores closer to 0 indicate you have less confidence "
    "in your answer, while scores closer to 1 indicate you have more "
    "confidence in your answer. You must answer the question with one of the "
    "valid choices. You must provide only a single answer.\n"
    "\n"
    "Question: This is a question\n"
    "(A) first answer\n"
    "(B) second answer\n"
    "(C) third answer\n"
    "(D) fourth answer\n"
    "(E) fifth answer\n"
    "Answer: (D)\n"
    "Confidence: 0.4\n"
    "\n"
    "Question: This is another question\n"
    "(A) first answer\n"
    "(B) second answer\n"
    "(C) third answer\n"
    "(D) fourth answer\n"
    "(E) fifth answer\n"
    "Answer: (A)\n"
    "Confidence: 0.7\n"
    "\n";

constexpr std::string_view kRelativeInstruction =
    "Here are two questions and your answers to those questions. Which "
    "question are you more confident in answering correctly? Respond in the "
    "following format: 'I am more confident that I correctly answered "
    "question <your selected question>.' where <your selected question> is "
    "either 1 or 2.\n"
    "\n";

constexpr std::string_view kCotRelativeInstruction =
    "Here are two questions and your answers to those questions. Which "
    "question are you more confident in answering correctly and why? Respond "
    "in the following format: 'I am more confident that I correctly answered "
    "question <your selected question>, because <your reasoning>.'\n"
    "\n";

constexpr std::string_view kDifficultyInstruction =
    "Here are two questions. Which question is more difficult? Respond in the "
    "following format: '<your selected question> is more difficult.' where "
    "<your selected question> is either Question 1 or Question 2.\n"
    "\n";

char letter(std::size_t index) { return static_cast<char>('A' + index); }

void append_choices(std::string& out, const QuestionRecord& q) {
  if (q.choices.size() > kMaxChoices) {
    throw DataError("question '" + q.id + "' has more than 26 choices");
  }
  for (std::size_t i = 0; i < q.choices.size(); ++i) {
    out += '(';
    out += letter(i);
    out += ") ";
    out += q.choices[i];
    out += '\n';
  }
}

std::string answer_line(const QuestionRecord& q, const AnswerRecord& a) {
  if (a.question_id != q.id) {
    throw DataError("answer for '" + a.question_id + "' paired with question '" +
                    q.id + "'");
  }
  if (!a.chosen_index || *a.chosen_index < 0 ||
      static_cast<std::size_t>(*a.chosen_index) >= q.choices.size()) {
    return "Your answer: (no valid answer)\n";
  }
  const auto idx = static_cast<std::size_t>(*a.chosen_index);
  return std::string("Your answer: (") + letter(idx) + ") " + q.choices[idx] + "\n";
}

void append_block(std::string& out, int label, const QuestionRecord& q,
                  const AnswerRecord* a) {
  out += "Question ";
  out += std::to_string(label);
  out += ": ";
  out += q.text;
  out += '\n';
  append_choices(out, q);
  if (a != nullptr) out += answer_line(q, *a);
  out += '\n';
}

std::string render_pair(std::string_view instruction, const QuestionRecord& q_i,
                        const AnswerRecord* a_i, const QuestionRecord& q_j,
                        const AnswerRecord* a_j, PresentationOrder order) {
  std::string out(instruction);
  if (order == PresentationOrder::kIJ) {
    append_block(out, 1, q_i, a_i);
    append_block(out, 2, q_j, a_j);
  } else {
    append_block(out, 1, q_j, a_j);
    append_block(out, 2, q_i, a_i);
  }
  out += "Response:";
  return out;
}

}  // namespace

std::string render_direct_prompt(const QuestionRecord& question) {
  std::string out(kDirectPreamble);
  out += "Question: ";
  out += question.text;
  out += '\n';
  append_choices(out, question);
  out += "Answer:";
  return out;
}

std::string render_relative_prompt(const QuestionRecord& q_i, const AnswerRecord& a_i,
                                   const QuestionRecord& q_j, const AnswerRecord& a_j,
                                   PresentationOrder order) {
  return render_pair(kRelativeInstruction, q_i, &a_i, q_j, &a_j, order);
}

std::string render_cot_relative_prompt(const QuestionRecord& q_i,
                                       const AnswerRecord& a_i,
                                       const QuestionRecord& q_j,
                                       const AnswerRecord& a_j,
                                       PresentationOrder order) {
  return render_pair(kCotRelativeInstruction, q_i, &a_i, q_j, &a_j, order);
}

std::string render_difficulty_prompt(const QuestionRecord& q_i,
                                     const QuestionRecord& q_j,
                                     PresentationOrder order) {
  return render_pair(kDifficultyInstruction, q_i, nullptr, q_j, nullptr, order);
}

}  // namespace conf_arena
