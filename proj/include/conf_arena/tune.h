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

#ifndef CONF_ARENA_TUNE_H_
#define CONF_ARENA_TUNE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "conf_arena/aggregate.h"
#include "conf_arena/core.h"
#include "conf_arena/metrics.h"
#include "json.hpp"

namespace conf_arena {

// Held-out sets smaller than this still tune, with a warning.
inline constexpr std::size_t kRecommendedHeldout = 100;

struct GridAxis {
  std::string name;  // a key of the method's params JSON
  std::vector<double> values;
};

struct Grid {
  AggregatorParams base;
  std::vector<GridAxis> axes;

  Method method() const { return method_of(base); }
  // Cartesian product, first axis outermost.
  std::vector<AggregatorParams> points() const;
};

// Fixed hyperparameters used when there is no held-out set to tune on.
AggregatorParams default_params(Method method);

// Elo: num_iters 1..20. TrueSkill: sigma in mu/{3, 2.5, 2.2, 2}, beta in
// mu/{6, 5, 4, 3}, tau in mu/{300, 250, 200, 150}. Bradley-Terry: max_iters
// 1..20. Other parameters stay at their defaults.
Grid standard_grid(Method method);

struct GridSearchOptions {
  double noise_sigma = kDefaultNoiseSigma;
  int n_seeds = kDefaultNoiseSeeds;
  std::uint64_t seed = 0;
  std::size_t max_workers = 1;
  TieBreak tie_break = TieBreak::kTiesOnly;
};

struct GridPointResult {
  AggregatorParams params;
  double auc = 0.0;
};

struct GridSearchResult {
  AggregatorParams best;
  double best_auc = 0.0;
  std::vector<GridPointResult> evaluated;  // grid order
};

// Maximizes held-out AUC. Ties prefer default_params, then grid order. Throws
// DataError when held-out ids overlap `test_ids`, ConfigError when there is no
// held-out data.
GridSearchResult grid_search(const Grid& grid,
                             std::span<const PreferenceRecord> heldout_preferences,
                             std::span<const AnswerRecord> heldout_answers,
                             std::span<const std::string> test_ids,
                             const GridSearchOptions& options = {});

nlohmann::json to_json(const GridSearchResult& result);

}  // namespace conf_arena

#endif  // CONF_ARENA_TUNE_H_
