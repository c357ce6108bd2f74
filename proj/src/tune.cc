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

#include "conf_arena/tune.h"

#include <unordered_set>

#include "conf_arena/error.h"
#include "conf_arena/parallel.h"
#include "spdlog/spdlog.h"

namespace conf_arena {
namespace {

std::vector<double> iota_values(int first, int last) {
  std::vector<double> out;
  for (int v = first; v <= last; ++v) out.push_back(v);
  return out;
}

std::vector<double> fractions_of(double mu, std::initializer_list<double> divisors) {
  std::vector<double> out;
  for (double d : divisors) out.push_back(mu / d);
  return out;
}

}  // namespace

std::vector<AggregatorParams> Grid::points() const {
  const Method m = method();
  std::vector<nlohmann::json> configs{to_json(base)};
  for (const auto& axis : axes) {
    if (axis.values.empty()) throw ConfigError("grid axis '" + axis.name + "' is empty");
    std::vector<nlohmann::json> next;
    next.reserve(configs.size() * axis.values.size());
    for (const auto& c : configs) {
      for (double v : axis.values) {
        nlohmann::json j = c;
        if (!j.contains(axis.name)) {
          throw ConfigError("'" + axis.name + "' is not a " + std::string(to_string(m)) +
                            " parameter");
        }
        if (j[axis.name].is_number_integer()) {
          j[axis.name] = static_cast<int>(v);
        } else {
          j[axis.name] = v;
        }
        next.push_back(std::move(j));
      }
    }
    configs = std::move(next);
  }
  std::vector<AggregatorParams> out;
  out.reserve(configs.size());
  for (const auto& c : configs) out.push_back(params_from_json(m, c));
  return out;
}

AggregatorParams default_params(Method method) {
  switch (method) {
    case Method::kElo:
      return EloParams{};
    case Method::kTrueSkill:
      return TrueSkillParams{};
    case Method::kBradleyTerry:
      return BTParams{};
    default:
      break;
  }
  throw ConfigError("'" + std::string(to_string(method)) +
                    "' has no aggregation hyperparameters");
}

Grid standard_grid(Method method) {
  switch (method) {
    case Method::kElo:
      return {EloParams{}, {{"num_iters", iota_values(1, 20)}}};
    case Method::kTrueSkill: {
      const TrueSkillParams base;
      const double mu = base.mu0;
      return {base,
              {{"sigma", fractions_of(mu, {3.0, 2.5, 2.2, 2.0})},
               {"beta", fractions_of(mu, {6.0, 5.0, 4.0, 3.0})},
               {"tau", fractions_of(mu, {300.0, 250.0, 200.0, 150.0})}}};
    }
    case Method::kBradleyTerry:
      return {BTParams{}, {{"max_iters", iota_values(1, 20)}}};
    default:
      break;
  }
  throw ConfigError("'" + std::string(to_string(method)) + "' has no tuning grid");
}

GridSearchResult grid_search(const Grid& grid,
                             std::span<const PreferenceRecord> heldout_preferences,
                             std::span<const AnswerRecord> heldout_answers,
                             std::span<const std::string> test_ids,
                             const GridSearchOptions& options) {
  if (heldout_answers.empty()) {
    throw ConfigError("no held-out data to tune on; use the default hyperparameters");
  }
  const std::unordered_set<std::string_view> test(test_ids.begin(), test_ids.end());
  std::vector<std::string> ids;
  ids.reserve(heldout_answers.size());
  for (const auto& a : heldout_answers) {
    if (test.contains(a.question_id)) {
      throw DataError("held-out question '" + a.question_id + "' is also a test question");
    }
    ids.push_back(a.question_id);
  }
  if (ids.size() < kRecommendedHeldout) {
    spdlog::warn("tuning on {} held-out questions; at least {} recommended", ids.size(),
                 kRecommendedHeldout);
  }

  const auto points = grid.points();
  if (points.empty()) throw ConfigError("empty tuning grid");
  std::vector<double> aucs(points.size());
  parallel_for(points.size(), options.max_workers, [&](std::size_t i) {
    const ScoreTable scores = finalize(aggregate(heldout_preferences, ids, points[i]));
    const auto instances = make_instances(scores, heldout_answers);
    aucs[i] = auc(instances, options.noise_sigma, options.n_seeds, options.seed,
                  options.tie_break)
                  .mean;
  });

  const AggregatorParams defaults = default_params(grid.method());
  std::size_t best = 0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (aucs[i] > aucs[best] || (aucs[i] == aucs[best] && points[i] == defaults &&
                                 !(points[best] == defaults))) {
      best = i;
    }
  }

  GridSearchResult out;
  out.best = points[best];
  out.best_auc = aucs[best];
  out.evaluated.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out.evaluated.push_back({points[i], aucs[i]});
  return out;
}

nlohmann::json to_json(const GridSearchResult& result) {
  nlohmann::json evaluated = nlohmann::json::array();
  for (const auto& p : result.evaluated) {
    evaluated.push_back({{"params", to_json(p.params)}, {"auc", p.auc}});
  }
  return {{"best", to_json(result.best)},
          {"best_auc", result.best_auc},
          {"evaluated", std::move(evaluated)}};
}

}  // namespace conf_arena
