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

#include "conf_arena/synth.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "conf_arena/error.h"
#include "conf_arena/rng.h"

namespace conf_arena {
namespace {

constexpr std::uint64_t kThetaStream = 1;
constexpr std::uint64_t kCorrectStream = 2;
constexpr std::uint64_t kOutcomeStream = 3;

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

std::string make_id(std::size_t i, std::size_t m) {
  const std::size_t width = std::max<std::size_t>(3, std::to_string(m - 1).size());
  std::string digits = std::to_string(i);
  return "q" + std::string(width - std::min(width, digits.size()), '0') + digits;
}

double realized_accuracy(std::span<const double> theta, std::span<const double> uniforms,
                         double slope, double offset) {
  std::size_t correct = 0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (uniforms[i] < logistic(slope * theta[i] + offset)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(theta.size());
}

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j < idx.size() && v[idx[j]] == v[idx[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[idx[k]] = r;
    i = j;
  }
  return ranks;
}

}  // namespace

double SyntheticWorld::accuracy() const {
  if (correct_mask.empty()) return 0.0;
  return static_cast<double>(std::count(correct_mask.begin(), correct_mask.end(), true)) /
         static_cast<double>(correct_mask.size());
}

SyntheticWorld make_world(std::size_t m, double accuracy_target, double link_slope,
                          std::uint64_t seed) {
  if (!(accuracy_target > 0.0 && accuracy_target < 1.0)) {
    throw ConfigError("accuracy target must lie strictly between 0 and 1");
  }
  if (m < 1) throw ConfigError("a synthetic world needs at least one question");
  SyntheticWorld w;
  w.seed = seed;
  w.link_slope = link_slope;
  w.ids.reserve(m);
  w.latent_theta.resize(m);
  std::vector<double> uniforms(m);

  Rng theta_rng = make_rng(seed, kThetaStream);
  Rng correct_rng = make_rng(seed, kCorrectStream);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    w.ids.push_back(make_id(i, m));
    w.latent_theta[i] = normal(theta_rng);
    uniforms[i] = unit(correct_rng);
  }

  // Realized accuracy is non-decreasing in the offset; bisect for the
  // smallest offset reaching the target and keep whichever side is closer.
  const double span_bound = 40.0 + 10.0 * std::abs(link_slope);
  double lo = -span_bound;
  double hi = span_bound;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (realized_accuracy(w.latent_theta, uniforms, link_slope, mid) >= accuracy_target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double acc_lo = realized_accuracy(w.latent_theta, uniforms, link_slope, lo);
  const double acc_hi = realized_accuracy(w.latent_theta, uniforms, link_slope, hi);
  w.offset = std::abs(acc_lo - accuracy_target) < std::abs(acc_hi - accuracy_target) ? lo : hi;
  const double achieved = std::min(std::abs(acc_lo - accuracy_target),
                                   std::abs(acc_hi - accuracy_target));
  if (achieved > kAccuracyTolerance) {
    throw ConfigError("accuracy target " + std::to_string(accuracy_target) +
                      " is unattainable with " + std::to_string(m) + " questions");
  }
  w.correct_mask.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    w.correct_mask[i] = uniforms[i] < logistic(link_slope * w.latent_theta[i] + w.offset);
  }
  return w;
}

PreferenceNoise parse_noise(std::string_view spec) {
  if (spec == "noiseless") return PreferenceNoise::noiseless();
  const auto colon = spec.find(':');
  if (colon != std::string_view::npos) {
    const std::string_view kind = spec.substr(0, colon);
    const std::string value(spec.substr(colon + 1));
    double param = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), param);
    if (ec == std::errc() && ptr == value.data() + value.size()) {
      if (kind == "bt" && param > 0.0) return PreferenceNoise::bradley_terry(param);
      if (kind == "flip" && param >= 0.0 && param <= 1.0) return PreferenceNoise::flip(param);
    }
  }
  throw ConfigError("bad noise spec '" + std::string(spec) +
                    "'; expected noiseless, bt:<beta > 0> or flip:<p in [0,1]>");
}

std::string to_string(const PreferenceNoise& noise) {
  switch (noise.kind) {
    case PreferenceNoise::Kind::kNoiseless:
      return "noiseless";
    case PreferenceNoise::Kind::kBradleyTerry:
      return "bt:" + std::to_string(noise.param);
    case PreferenceNoise::Kind::kFlip:
      return "flip:" + std::to_string(noise.param);
  }
  return "noiseless";
}

PreferenceDataset simulate_preferences(const SyntheticWorld& world, int n,
                                       const PreferenceNoise& noise, std::uint64_t seed) {
  const MatchupPlan plan = plan_matchups(std::span<const std::string>(world.ids), n, seed);
  std::unordered_map<std::string_view, double> theta;
  for (std::size_t i = 0; i < world.size(); ++i) theta.emplace(world.ids[i], world.latent_theta[i]);

  Rng rng = make_rng(seed, kOutcomeStream);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  PreferenceDataset out;
  out.n_per_question = n;
  out.mode = PreferenceMode::kPlain;
  out.planned = plan.matchups.size();
  out.records.reserve(plan.matchups.size());
  for (const auto& m : plan.matchups) {
    const double ti = theta.at(m.i_id);
    const double tj = theta.at(m.j_id);
    bool i_wins = ti > tj || (ti == tj && m.i_id < m.j_id);
    switch (noise.kind) {
      case PreferenceNoise::Kind::kNoiseless:
        break;
      case PreferenceNoise::Kind::kBradleyTerry:
        i_wins = unit(rng) < logistic((ti - tj) / noise.param);
        break;
      case PreferenceNoise::Kind::kFlip:
        if (unit(rng) < noise.param) i_wins = !i_wins;
        break;
    }
    out.records.push_back({i_wins ? m.i_id : m.j_id, i_wins ? m.j_id : m.i_id,
                           PreferenceMode::kPlain, m.first_shown(), ""});
  }
  return out;
}

std::size_t kemeny_disagreements(std::span<const std::string> ordering,
                                 std::span<const PreferenceRecord> records) {
  std::unordered_map<std::string_view, std::size_t> position;
  for (std::size_t i = 0; i < ordering.size(); ++i) position.emplace(ordering[i], i);
  std::size_t count = 0;
  for (const auto& r : records) {
    auto w = position.find(r.winner_id);
    auto l = position.find(r.loser_id);
    if (w == position.end() || l == position.end()) {
      throw DataError("record names an id outside the ordering");
    }
    if (l->second < w->second) ++count;
  }
  return count;
}

std::vector<std::string> kemeny_exact(std::span<const PreferenceRecord> records,
                                      std::span<const std::string> ids) {
  if (ids.size() > kKemenyMaxItems) {
    throw ConfigError("kemeny_exact enumerates permutations; at most 8 ids");
  }
  std::vector<std::string> perm(ids.begin(), ids.end());
  std::sort(perm.begin(), perm.end());
  const std::size_t m = perm.size();
  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < m; ++i) index.emplace(perm[i], i);
  // beats[a][b]: records where a beat b.
  std::vector<std::vector<std::size_t>> beats(m, std::vector<std::size_t>(m, 0));
  for (const auto& r : records) {
    auto w = index.find(r.winner_id);
    auto l = index.find(r.loser_id);
    if (w == index.end() || l == index.end()) throw DataError("record names an unknown id");
    ++beats[w->second][l->second];
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> best = order;
  std::size_t best_cost = static_cast<std::size_t>(-1);
  // Index order equals lexicographic id order, so the first minimum found is
  // the lexicographically smallest one.
  do {
    std::size_t cost = 0;
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) cost += beats[order[b]][order[a]];
    }
    if (cost < best_cost) {
      best_cost = cost;
      best = order;
    }
  } while (std::next_permutation(order.begin(), order.end()));

  std::vector<std::string> out;
  out.reserve(m);
  for (std::size_t i : best) out.push_back(perm[i]);
  return out;
}

double perfect_ranking_auc(const std::vector<bool>& correct_mask) {
  if (correct_mask.empty()) throw DataError("perfect_ranking_auc needs at least one instance");
  const auto n_correct = static_cast<std::size_t>(
      std::count(correct_mask.begin(), correct_mask.end(), true));
  double total = 0.0;
  for (std::size_t k = 1; k <= correct_mask.size(); ++k) {
    total += static_cast<double>(std::min(k, n_correct)) / static_cast<double>(k);
  }
  return total / static_cast<double>(correct_mask.size());
}

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw DataError("spearman needs two equal-length samples of size >= 2");
  }
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  const double n = static_cast<double>(a.size());
  const double mean = (n + 1.0) / 2.0;
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    cov += (ra[i] - mean) * (rb[i] - mean);
    va += (ra[i] - mean) * (ra[i] - mean);
    vb += (rb[i] - mean) * (rb[i] - mean);
  }
  if (va == 0.0 || vb == 0.0) return 0.0;
  return cov / std::sqrt(va * vb);
}

std::vector<QuestionRecord> synthetic_questions(const SyntheticWorld& world) {
  std::vector<QuestionRecord> out;
  out.reserve(world.size());
  for (const auto& id : world.ids) {
    out.push_back({id, "Synthetic question " + id,
                   {"option one", "option two", "option three", "option four"}, 0});
  }
  return out;
}

std::vector<AnswerRecord> synthetic_answers(const SyntheticWorld& world) {
  std::vector<AnswerRecord> out;
  out.reserve(world.size());
  for (std::size_t i = 0; i < world.size(); ++i) {
    const bool ok = world.correct_mask[i];
    out.push_back({world.ids[i], ok ? 0 : 1, std::nullopt, ok});
  }
  return out;
}

std::vector<EvalInstance> world_instances(const SyntheticWorld& world,
                                          const ScoreTable& scores) {
  const auto answers = synthetic_answers(world);
  return make_instances(scores, answers);
}

}  // namespace conf_arena
