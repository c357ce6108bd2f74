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

// Rank aggregation: preference records in, per-question scores out. Questions
// are players and each preference record is a match the winner won.
//
// Elo and TrueSkill are online updates, so their result depends on the order
// of the records; records are always replayed in stored order. Bradley-Terry
// is a regularized maximum-likelihood fit over all records at once.

#ifndef CONF_ARENA_AGGREGATE_H_
#define CONF_ARENA_AGGREGATE_H_

#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "conf_arena/core.h"
#include "json.hpp"

namespace conf_arena {

struct EloParams {
  double initial_score = 1000.0;
  double k = 400.0;
  int num_iters = 1;

  bool operator==(const EloParams&) const = default;
};

struct TrueSkillParams {
  double mu0 = 25.0;
  double sigma0 = 25.0 / 3.0;
  double beta = 25.0 / 6.0;
  double tau = 25.0 / 300.0;
  // Zero: preference outcomes are never ties.
  double draw_probability = 0.0;

  bool operator==(const TrueSkillParams&) const = default;
};

struct Rating {
  double mu = 25.0;
  double sigma = 25.0 / 3.0;
};

struct BTParams {
  int max_iters = 5;
  double lambda = 0.01;
  double convergence_tol = 1e-8;

  bool operator==(const BTParams&) const = default;
};

using AggregatorParams = std::variant<EloParams, TrueSkillParams, BTParams>;

Method method_of(const AggregatorParams& params);
nlohmann::json to_json(const AggregatorParams& params);
// `method` selects the alternative; absent keys keep their defaults.
AggregatorParams params_from_json(Method method, const nlohmann::json& j);

// Records resolved to dense indices into `ids`.
struct IndexedPreferences {
  std::vector<std::string> ids;
  std::vector<std::pair<int, int>> matchups;  // (winner, loser)
};

// Throws DataError for a record naming an id outside `ids`.
IndexedPreferences index_preferences(std::span<const PreferenceRecord> records,
                                     std::span<const std::string> ids);

// --- Elo ------------------------------------------------------------------

// 1 / (1 + 10^((s_l - s_w) / k)). The pair (s_w, s_l), (s_l, s_w) always sums
// to exactly 1.
double elo_expected_win(double s_w, double s_l, double k);

ScoreTable elo_scores(std::span<const PreferenceRecord> records,
                      std::span<const std::string> ids, const EloParams& params);

// --- TrueSkill ------------------------------------------------------------

// Standard normal pdf and cdf, and the win-case truncation corrections
// v(x) = pdf(x) / cdf(x), w(x) = v(x) (v(x) + x), evaluated at x = t - eps.
double normal_pdf(double x);
double normal_cdf(double x);
double trueskill_v(double t, double eps);
double trueskill_w(double t, double eps);

// Draw margin for two single-player teams.
double trueskill_draw_margin(const TrueSkillParams& params);

// One decisive game. Dynamics (tau^2) are added to both variances first.
std::pair<Rating, Rating> trueskill_update(Rating winner, Rating loser,
                                           const TrueSkillParams& params);

// Scores are the posterior means.
ScoreTable trueskill_scores(std::span<const PreferenceRecord> records,
                            std::span<const std::string> ids,
                            const TrueSkillParams& params);

// --- Bradley-Terry --------------------------------------------------------

struct BtObjective {
  double value = 0.0;
  Eigen::VectorXd gradient;
};

// Negative log-likelihood of the matchups under P(w beats l) = s_w/(s_w+s_l),
// s = exp(theta), plus lambda/2 * ||theta||^2.
BtObjective bt_negloglik(const Eigen::VectorXd& theta, const IndexedPreferences& data,
                         double lambda);

struct BtFit {
  Eigen::VectorXd theta;
  int iterations = 0;
  bool converged = false;
};

BtFit bt_fit(const IndexedPreferences& data, const BTParams& params);

// exp(theta) of the fit, starting from theta = 0.
ScoreTable bt_scores(std::span<const PreferenceRecord> records,
                     std::span<const std::string> ids, const BTParams& params);

// --- Shared ---------------------------------------------------------------

ScoreTable aggregate(std::span<const PreferenceRecord> records,
                     std::span<const std::string> ids, const AggregatorParams& params);

// Min-max normalizes a raw table onto [0,1].
ScoreTable finalize(const ScoreTable& raw);

// Ids by descending score; equal scores fall back to ascending id.
std::vector<std::string> rank_order(const ScoreTable& table);

}  // namespace conf_arena

#endif  // CONF_ARENA_AGGREGATE_H_
