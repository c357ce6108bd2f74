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

#include "conf_arena/aggregate.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include <boost/math/special_functions/erf.hpp>

#include "conf_arena/bfgs.h"
#include "conf_arena/error.h"

namespace conf_arena {
namespace {

using nlohmann::json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

ScoreTable make_table(Method method, std::span<const std::string> ids,
                      std::span<const double> values) {
  ScoreTable t;
  t.method = method;
  for (std::size_t i = 0; i < ids.size(); ++i) t.scores.emplace(ids[i], values[i]);
  return t;
}

// log(1 + e^x) without overflow.
double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

Method method_of(const AggregatorParams& params) {
  return std::visit(Overloaded{[](const EloParams&) { return Method::kElo; },
                               [](const TrueSkillParams&) { return Method::kTrueSkill; },
                               [](const BTParams&) { return Method::kBradleyTerry; }},
                    params);
}

json to_json(const AggregatorParams& params) {
  return std::visit(
      Overloaded{
          [](const EloParams& p) {
            return json{{"method", "elo"},
                        {"initial_score", p.initial_score},
                        {"k", p.k},
                        {"num_iters", p.num_iters}};
          },
          [](const TrueSkillParams& p) {
            return json{{"method", "trueskill"},  {"mu", p.mu0},
                        {"sigma", p.sigma0},      {"beta", p.beta},
                        {"tau", p.tau},           {"draw_probability", p.draw_probability}};
          },
          [](const BTParams& p) {
            return json{{"method", "bradley_terry"},
                        {"max_iters", p.max_iters},
                        {"lambda", p.lambda},
                        {"convergence_tol", p.convergence_tol}};
          }},
      params);
}

AggregatorParams params_from_json(Method method, const json& j) {
  try {
    switch (method) {
      case Method::kElo: {
        EloParams p;
        p.initial_score = j.value("initial_score", p.initial_score);
        p.k = j.value("k", p.k);
        p.num_iters = j.value("num_iters", p.num_iters);
        if (!(p.k > 0.0) || p.num_iters < 1) {
          throw ConfigError("elo needs k > 0 and num_iters >= 1");
        }
        return p;
      }
      case Method::kTrueSkill: {
        TrueSkillParams p;
        p.mu0 = j.value("mu", p.mu0);
        // sigma, beta and tau scale with mu unless given explicitly.
        p.sigma0 = j.value("sigma", p.mu0 / 3.0);
        p.beta = j.value("beta", p.mu0 / 6.0);
        p.tau = j.value("tau", p.mu0 / 300.0);
        p.draw_probability = j.value("draw_probability", p.draw_probability);
        if (!(p.sigma0 > 0.0 && p.beta > 0.0 && p.tau > 0.0) ||
            !(p.draw_probability >= 0.0 && p.draw_probability < 1.0)) {
          throw ConfigError(
              "trueskill needs sigma, beta, tau > 0 and draw_probability in [0,1)");
        }
        return p;
      }
      case Method::kBradleyTerry: {
        BTParams p;
        p.max_iters = j.value("max_iters", p.max_iters);
        p.lambda = j.value("lambda", p.lambda);
        p.convergence_tol = j.value("convergence_tol", p.convergence_tol);
        if (p.max_iters < 1 || !(p.lambda >= 0.0)) {
          throw ConfigError("bradley_terry needs max_iters >= 1 and lambda >= 0");
        }
        return p;
      }
      default:
        break;
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad aggregation parameters: ") + e.what());
  }
  throw ConfigError("'" + std::string(to_string(method)) +
                    "' is not a rank aggregation method");
}

IndexedPreferences index_preferences(std::span<const PreferenceRecord> records,
                                     std::span<const std::string> ids) {
  IndexedPreferences out;
  out.ids.assign(ids.begin(), ids.end());
  std::unordered_map<std::string_view, int> index;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!index.emplace(ids[i], static_cast<int>(i)).second) {
      throw DataError("duplicate id '" + ids[i] + "'");
    }
  }
  auto lookup = [&](const std::string& id) {
    auto it = index.find(id);
    if (it == index.end()) throw DataError("preference names unknown id '" + id + "'");
    return it->second;
  };
  out.matchups.reserve(records.size());
  for (const auto& r : records) {
    out.matchups.emplace_back(lookup(r.winner_id), lookup(r.loser_id));
  }
  return out;
}

double elo_expected_win(double s_w, double s_l, double k) {
  const double diff = s_w - s_l;
  // The favourite's probability is computed and the underdog's is its exact
  // complement: for q in [0.5, 1], 1 - q is exact.
  const double favourite =
      1.0 / (1.0 + std::exp(-std::abs(diff) * std::numbers::ln10 / k));
  return diff >= 0.0 ? favourite : 1.0 - favourite;
}

ScoreTable elo_scores(std::span<const PreferenceRecord> records,
                      std::span<const std::string> ids, const EloParams& params) {
  if (!(params.k > 0.0)) throw ConfigError("elo k must be positive");
  const IndexedPreferences data = index_preferences(records, ids);
  std::vector<double> s(ids.size(), params.initial_score);
  for (int pass = 0; pass < params.num_iters; ++pass) {
    for (const auto& [w, l] : data.matchups) {
      const double p_w = elo_expected_win(s[w], s[l], params.k);
      const double p_l = elo_expected_win(s[l], s[w], params.k);
      s[w] += params.k * (1.0 - p_w);
      s[l] -= params.k * p_l;
    }
  }
  return make_table(Method::kElo, ids, s);
}

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double trueskill_v(double t, double eps) {
  const double x = t - eps;
  const double denom = normal_cdf(x);
  // Mills-ratio limit once the cdf underflows.
  if (denom < 1e-300) return -x;
  return normal_pdf(x) / denom;
}

double trueskill_w(double t, double eps) {
  const double x = t - eps;
  const double v = trueskill_v(t, eps);
  return std::clamp(v * (v + x), 0.0, 1.0);
}

double trueskill_draw_margin(const TrueSkillParams& params) {
  if (params.draw_probability <= 0.0) return 0.0;
  // Phi^{-1}((p + 1) / 2) * sqrt(2 players) * beta.
  const double quantile =
      std::numbers::sqrt2 * boost::math::erf_inv(params.draw_probability);
  return quantile * std::numbers::sqrt2 * params.beta;
}

std::pair<Rating, Rating> trueskill_update(Rating winner, Rating loser,
                                           const TrueSkillParams& params) {
  const double tau2 = params.tau * params.tau;
  const double var_w = winner.sigma * winner.sigma + tau2;
  const double var_l = loser.sigma * loser.sigma + tau2;
  const double c2 = 2.0 * params.beta * params.beta + var_w + var_l;
  const double c = std::sqrt(c2);
  const double t = (winner.mu - loser.mu) / c;
  const double eps = trueskill_draw_margin(params) / c;
  const double v = trueskill_v(t, eps);
  const double w = trueskill_w(t, eps);

  Rating w_out{winner.mu + var_w / c * v, std::sqrt(var_w * (1.0 - var_w / c2 * w))};
  Rating l_out{loser.mu - var_l / c * v, std::sqrt(var_l * (1.0 - var_l / c2 * w))};
  return {w_out, l_out};
}

ScoreTable trueskill_scores(std::span<const PreferenceRecord> records,
                            std::span<const std::string> ids,
                            const TrueSkillParams& params) {
  const IndexedPreferences data = index_preferences(records, ids);
  std::vector<Rating> ratings(ids.size(), Rating{params.mu0, params.sigma0});
  for (const auto& [w, l] : data.matchups) {
    std::tie(ratings[w], ratings[l]) = trueskill_update(ratings[w], ratings[l], params);
  }
  std::vector<double> mu(ids.size());
  std::transform(ratings.begin(), ratings.end(), mu.begin(),
                 [](const Rating& r) { return r.mu; });
  return make_table(Method::kTrueSkill, ids, mu);
}

BtObjective bt_negloglik(const Eigen::VectorXd& theta, const IndexedPreferences& data,
                         double lambda) {
  BtObjective out;
  out.value = 0.5 * lambda * theta.squaredNorm();
  out.gradient = lambda * theta;
  for (const auto& [w, l] : data.matchups) {
    // -log(s_w / (s_w + s_l)) = log(1 + exp(theta_l - theta_w)).
    const double margin = theta[l] - theta[w];
    out.value += softplus(margin);
    const double p_upset = logistic(margin);
    out.gradient[w] -= p_upset;
    out.gradient[l] += p_upset;
  }
  return out;
}

BtFit bt_fit(const IndexedPreferences& data, const BTParams& params) {
  if (params.max_iters < 1) throw ConfigError("bradley_terry max_iters must be >= 1");
  if (!(params.lambda >= 0.0)) throw ConfigError("bradley_terry lambda must be >= 0");
  const auto n = static_cast<Eigen::Index>(data.ids.size());
  Objective objective = [&](const Eigen::VectorXd& theta, Eigen::VectorXd& grad) {
    BtObjective o = bt_negloglik(theta, data, params.lambda);
    grad = std::move(o.gradient);
    return o.value;
  };
  BfgsResult r = minimize_bfgs(objective, Eigen::VectorXd::Zero(n),
                               {params.max_iters, params.convergence_tol});
  if (!std::isfinite(r.value) || !r.x.allFinite()) {
    throw DataError("bradley-terry objective became non-finite");
  }
  return {std::move(r.x), r.iterations, r.converged};
}

ScoreTable bt_scores(std::span<const PreferenceRecord> records,
                     std::span<const std::string> ids, const BTParams& params) {
  if (records.empty()) throw DataError("bradley-terry needs at least one preference");
  const BtFit fit = bt_fit(index_preferences(records, ids), params);
  std::vector<double> s(ids.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::exp(fit.theta[i]);
  return make_table(Method::kBradleyTerry, ids, s);
}

ScoreTable aggregate(std::span<const PreferenceRecord> records,
                     std::span<const std::string> ids, const AggregatorParams& params) {
  return std::visit(
      Overloaded{
          [&](const EloParams& p) { return elo_scores(records, ids, p); },
          [&](const TrueSkillParams& p) { return trueskill_scores(records, ids, p); },
          [&](const BTParams& p) { return bt_scores(records, ids, p); }},
      params);
}

ScoreTable finalize(const ScoreTable& raw) {
  ScoreTable out;
  out.method = raw.method;
  out.scores = minmax_normalize(raw.scores);
  out.normalized = true;
  return out;
}

std::vector<std::string> rank_order(const ScoreTable& table) {
  std::vector<std::pair<std::string, double>> items(table.scores.begin(),
                                                    table.scores.end());
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> out;
  out.reserve(items.size());
  for (auto& [id, _] : items) out.push_back(std::move(id));
  return out;
}

}  // namespace conf_arena
