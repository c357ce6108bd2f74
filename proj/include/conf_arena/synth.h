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

// Synthetic worlds with a known latent skill per question, simulated
// preference data, and exact brute-force oracles. Everything downstream can
// be exercised without a model endpoint.

#ifndef CONF_ARENA_SYNTH_H_
#define CONF_ARENA_SYNTH_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "conf_arena/core.h"
#include "conf_arena/metrics.h"
#include "conf_arena/prefgen.h"

namespace conf_arena {

struct SyntheticWorld {
  std::vector<std::string> ids;
  std::vector<double> latent_theta;
  std::vector<bool> correct_mask;
  double link_slope = 0.0;
  double offset = 0.0;  // calibrated intercept of the logistic link
  std::uint64_t seed = 0;

  std::size_t size() const { return ids.size(); }
  double accuracy() const;
};

inline constexpr double kAccuracyTolerance = 0.02;

// theta ~ N(0,1); question i is answered correctly with probability
// logistic(link_slope * theta_i + offset), offset calibrated by bisection so
// the realized accuracy lands within kAccuracyTolerance of the target.
SyntheticWorld make_world(std::size_t m, double accuracy_target, double link_slope,
                          std::uint64_t seed);

struct PreferenceNoise {
  enum class Kind { kNoiseless, kBradleyTerry, kFlip };
  Kind kind = Kind::kNoiseless;
  // kBradleyTerry: temperature beta_n. kFlip: flip probability.
  double param = 0.0;

  static PreferenceNoise noiseless() { return {}; }
  static PreferenceNoise bradley_terry(double beta) { return {Kind::kBradleyTerry, beta}; }
  static PreferenceNoise flip(double p) { return {Kind::kFlip, p}; }
};

// "noiseless", "bt:<beta>", "flip:<p>".
PreferenceNoise parse_noise(std::string_view spec);
std::string to_string(const PreferenceNoise& noise);

// Plans with plan_matchups (n = m - 1 gives a complete double round-robin)
// and decides each matchup from the latent skills.
PreferenceDataset simulate_preferences(const SyntheticWorld& world, int n,
                                       const PreferenceNoise& noise, std::uint64_t seed);

// Ordering (best first) minimizing pairwise disagreements with the records,
// by enumerating every permutation. Ties go to the lexicographically smallest
// ordering. At most kKemenyMaxItems ids.
inline constexpr std::size_t kKemenyMaxItems = 8;
std::vector<std::string> kemeny_exact(std::span<const PreferenceRecord> records,
                                      std::span<const std::string> ids);

// Records (w, l) where l is ranked above w.
std::size_t kemeny_disagreements(std::span<const std::string> ordering,
                                 std::span<const PreferenceRecord> records);

// AUC of the ranking with every correct instance first: mean over k of
// min(k, n_correct) / k.
double perfect_ranking_auc(const std::vector<bool>& correct_mask);

// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> a, std::span<const double> b);

// Dataset / answers / instances with the same shape as a live run: four
// choices, gold index 0, and the first choice picked iff the world marks the
// question correct.
std::vector<QuestionRecord> synthetic_questions(const SyntheticWorld& world);
std::vector<AnswerRecord> synthetic_answers(const SyntheticWorld& world);
std::vector<EvalInstance> world_instances(const SyntheticWorld& world,
                                          const ScoreTable& scores);

}  // namespace conf_arena

#endif  // CONF_ARENA_SYNTH_H_
