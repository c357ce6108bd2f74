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

#include "conf_arena/metrics.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "conf_arena/error.h"
#include "conf_arena/rng.h"

namespace conf_arena {
namespace {

void require_non_empty(std::span<const EvalInstance> instances) {
  if (instances.empty()) throw DataError("no instances to evaluate");
}

}  // namespace

std::string_view to_string(TieBreak mode) {
  return mode == TieBreak::kAdditive ? "additive" : "ties";
}

TieBreak parse_tie_break(std::string_view name) {
  if (name == "ties") return TieBreak::kTiesOnly;
  if (name == "additive") return TieBreak::kAdditive;
  throw ConfigError("unknown tie-break mode '" + std::string(name) + "' (ties or additive)");
}

std::vector<EvalInstance> make_instances(const ScoreTable& scores,
                                         std::span<const AnswerRecord> answers) {
  std::map<std::string, double> selected;
  for (const auto& a : answers) {
    auto it = scores.scores.find(a.question_id);
    if (it == scores.scores.end()) {
      throw DataError("score table has no entry for '" + a.question_id + "'");
    }
    selected.emplace(a.question_id, it->second);
  }
  if (!scores.normalized && !selected.empty()) selected = minmax_normalize(selected);

  std::vector<EvalInstance> out;
  out.reserve(answers.size());
  for (const auto& a : answers) {
    const double c = selected.at(a.question_id);
    if (!(c >= 0.0 && c <= 1.0)) {
      throw DataError("confidence for '" + a.question_id + "' outside [0,1]");
    }
    out.push_back({a.question_id, c, a.correct});
  }
  return out;
}

CoverageCurve selective_curve(std::span<const EvalInstance> instances,
                              double noise_sigma, std::uint64_t seed, TieBreak tie_break) {
  require_non_empty(instances);
  struct Keyed {
    double key;
    double noise;
    const EvalInstance* inst;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(instances.size());
  for (const auto& inst : instances) {
    double noise = 0.0;
    if (noise_sigma > 0.0) {
      Rng rng = make_rng(seed, hash_id(inst.question_id));
      noise = std::normal_distribution<double>(0.0, noise_sigma)(rng);
    }
    if (tie_break == TieBreak::kAdditive) {
      keyed.push_back({inst.confidence + noise, 0.0, &inst});
    } else {
      keyed.push_back({inst.confidence, noise, &inst});
    }
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    if (a.key != b.key) return a.key > b.key;
    if (a.noise != b.noise) return a.noise > b.noise;
    return a.inst->question_id < b.inst->question_id;
  });

  CoverageCurve curve;
  curve.reserve(keyed.size());
  const double n = static_cast<double>(keyed.size());
  std::size_t correct = 0;
  for (std::size_t k = 1; k <= keyed.size(); ++k) {
    if (keyed[k - 1].inst->correct) ++correct;
    curve.push_back({static_cast<double>(k) / n,
                     static_cast<double>(correct) / static_cast<double>(k)});
  }
  return curve;
}

double curve_area(const CoverageCurve& curve) {
  if (curve.empty()) throw DataError("empty coverage curve");
  double total = 0.0;
  for (const auto& p : curve) total += p.selective_accuracy;
  return total / static_cast<double>(curve.size());
}

AucResult auc(std::span<const EvalInstance> instances, double noise_sigma, int n_seeds,
              std::uint64_t seed, TieBreak tie_break) {
  require_non_empty(instances);
  if (n_seeds < 1) throw ConfigError("n_seeds must be >= 1");
  std::vector<double> areas;
  areas.reserve(static_cast<std::size_t>(n_seeds));
  for (int s = 0; s < n_seeds; ++s) {
    areas.push_back(curve_area(
        selective_curve(instances, noise_sigma, derive_seed(seed, static_cast<std::uint64_t>(s)),
                        tie_break)));
  }
  const double mean = std::accumulate(areas.begin(), areas.end(), 0.0) / areas.size();
  double sq = 0.0;
  for (double a : areas) sq += (a - mean) * (a - mean);
  return {mean, std::sqrt(sq / areas.size())};
}

double auroc(std::span<const EvalInstance> instances) {
  std::vector<const EvalInstance*> sorted;
  sorted.reserve(instances.size());
  std::size_t positives = 0;
  for (const auto& inst : instances) {
    sorted.push_back(&inst);
    if (inst.correct) ++positives;
  }
  const std::size_t negatives = instances.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw DataError("AUROC is undefined without both correct and incorrect instances");
  }
  std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
    return a->confidence < b->confidence;
  });
  // Sum of 1-based mid-ranks of the positives. Ranks are half-integers, so
  // the sum is exact in double precision.
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    std::size_t pos_in_group = 0;
    while (j < sorted.size() && sorted[j]->confidence == sorted[i]->confidence) {
      if (sorted[j]->correct) ++pos_in_group;
      ++j;
    }
    const double mid_rank = 0.5 * static_cast<double>(i + 1 + j);
    rank_sum += mid_rank * static_cast<double>(pos_in_group);
    i = j;
  }
  const double p = static_cast<double>(positives);
  const double u = rank_sum - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(negatives));
}

int ece_bin(double confidence, int n_bins) {
  if (confidence <= 0.0) return 0;
  int b = static_cast<int>(std::ceil(confidence * n_bins)) - 1;
  b = std::clamp(b, 0, n_bins - 1);
  // Correct rounding at the edges: bin b covers (b/n, (b+1)/n].
  while (b > 0 && confidence <= static_cast<double>(b) / n_bins) --b;
  while (b < n_bins - 1 && confidence > static_cast<double>(b + 1) / n_bins) ++b;
  return b;
}

double ece(std::span<const EvalInstance> instances, int n_bins) {
  require_non_empty(instances);
  if (n_bins < 1) throw ConfigError("n_bins must be >= 1");
  std::vector<double> conf_sum(n_bins, 0.0);
  std::vector<double> correct_sum(n_bins, 0.0);
  std::vector<std::size_t> count(n_bins, 0);
  for (const auto& inst : instances) {
    const int b = ece_bin(inst.confidence, n_bins);
    conf_sum[b] += inst.confidence;
    correct_sum[b] += inst.correct ? 1.0 : 0.0;
    ++count[b];
  }
  const double n = static_cast<double>(instances.size());
  double total = 0.0;
  for (int b = 0; b < n_bins; ++b) {
    if (count[b] == 0) continue;
    const double size = static_cast<double>(count[b]);
    total += (size / n) * std::abs(correct_sum[b] / size - conf_sum[b] / size);
  }
  return total;
}

MetricSummary summarize(std::string method, std::span<const EvalInstance> instances,
                        const EvalOptions& options) {
  MetricSummary s;
  s.method = std::move(method);
  const AucResult a =
      auc(instances, options.noise_sigma, options.n_seeds, options.seed, options.tie_break);
  s.auc = a.mean;
  s.auc_std = a.stddev;
  const bool has_pos = std::any_of(instances.begin(), instances.end(),
                                   [](const EvalInstance& i) { return i.correct; });
  const bool has_neg = std::any_of(instances.begin(), instances.end(),
                                   [](const EvalInstance& i) { return !i.correct; });
  if (has_pos && has_neg) s.auroc = auroc(instances);
  s.ece = ece(instances, options.n_bins);
  return s;
}

nlohmann::json to_json(const MetricSummary& s) {
  return {{"method", s.method},
          {"auc", s.auc},
          {"auc_std", s.auc_std},
          {"auroc", s.auroc ? nlohmann::json(*s.auroc) : nlohmann::json(nullptr)},
          {"ece", s.ece}};
}

void save_curve_csv(const std::filesystem::path& path, const CoverageCurve& curve) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out.precision(17);
  out << "coverage,selective_accuracy\n";
  for (const auto& p : curve) out << p.coverage << ',' << p.selective_accuracy << '\n';
}

}  // namespace conf_arena
