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

// Selective classification metrics. A confidence score is useful when
// abstaining on the least-confident questions raises accuracy on the rest.

#ifndef CONF_ARENA_METRICS_H_
#define CONF_ARENA_METRICS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "conf_arena/core.h"
#include "json.hpp"

namespace conf_arena {

inline constexpr double kDefaultNoiseSigma = 1e-6;
inline constexpr int kDefaultNoiseSeeds = 100;
inline constexpr int kDefaultEceBins = 10;

struct EvalInstance {
  std::string question_id;
  double confidence = 0.0;
  bool correct = false;
};

struct CoveragePoint {
  double coverage = 0.0;
  double selective_accuracy = 0.0;
};

// One point per k = 1..n: accuracy of the k most confident instances.
using CoverageCurve = std::vector<CoveragePoint>;

// Joins a score table with answer correctness. Every answer needs a score.
std::vector<EvalInstance> make_instances(const ScoreTable& scores,
                                         std::span<const AnswerRecord> answers);

// How the Gaussian noise draw breaks ties before sorting.
//   kTiesOnly: instances sort by confidence and the draw only orders exactly
//     equal confidences (the sigma -> 0 limit of additive noise). Scores
//     packed closer than sigma, like exp-scale Bradley-Terry scores, keep
//     their order.
//   kAdditive: the draw is added to the confidence, so it can also reorder
//     distinct confidences that are within a few sigma of each other.
enum class TieBreak { kTiesOnly, kAdditive };

std::string_view to_string(TieBreak mode);
TieBreak parse_tie_break(std::string_view name);

// The noise draw for an instance (sigma = noise_sigma) is keyed by (seed, id),
// so instance order never changes the curve. With noise_sigma == 0 ties fall
// back to ascending id.
CoverageCurve selective_curve(std::span<const EvalInstance> instances,
                              double noise_sigma, std::uint64_t seed,
                              TieBreak tie_break = TieBreak::kTiesOnly);

// Mean of A(k/n) over k.
double curve_area(const CoverageCurve& curve);

struct AucResult {
  double mean = 0.0;
  double stddev = 0.0;  // across noise seeds
};

// Selective accuracy AUC averaged over n_seeds noise draws derived from `seed`.
AucResult auc(std::span<const EvalInstance> instances, double noise_sigma = kDefaultNoiseSigma,
              int n_seeds = kDefaultNoiseSeeds, std::uint64_t seed = 0,
              TieBreak tie_break = TieBreak::kTiesOnly);

// P(conf of a random correct > conf of a random incorrect) + P(tie) / 2, via
// mid-rank statistics. Throws DataError unless both classes are present.
double auroc(std::span<const EvalInstance> instances);

// Equal-width, right-closed bins on [0,1]; confidence 0 falls in the first.
double ece(std::span<const EvalInstance> instances, int n_bins = kDefaultEceBins);

// Index of the right-closed bin holding `confidence`.
int ece_bin(double confidence, int n_bins);

struct MetricSummary {
  std::string method;
  double auc = 0.0;
  double auc_std = 0.0;
  std::optional<double> auroc;  // absent when only one class is present
  double ece = 0.0;
};

struct EvalOptions {
  double noise_sigma = kDefaultNoiseSigma;
  int n_seeds = kDefaultNoiseSeeds;
  std::uint64_t seed = 0;
  int n_bins = kDefaultEceBins;
  TieBreak tie_break = TieBreak::kTiesOnly;
};

MetricSummary summarize(std::string method, std::span<const EvalInstance> instances,
                        const EvalOptions& options);
nlohmann::json to_json(const MetricSummary& summary);

// "coverage,selective_accuracy" header plus one row per point.
void save_curve_csv(const std::filesystem::path& path, const CoverageCurve& curve);

}  // namespace conf_arena

#endif  // CONF_ARENA_METRICS_H_
