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

// Acceptance suite. One PASS/FAIL line per criterion. Exit status is zero
// when the failing set equals the --expect-red set exactly, so a criterion
// that is known to be red stays visible and one that turns green is noticed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "conf_arena/aggregate.h"
#include "conf_arena/cli.h"
#include "conf_arena/core.h"
#include "conf_arena/metrics.h"
#include "conf_arena/modelio.h"
#include "conf_arena/synth.h"
#include "conf_arena/tune.h"
#include "spdlog/spdlog.h"
#include "support/mock_chat_server.h"
#include "test_util.h"

namespace ca = conf_arena;
namespace fs = std::filesystem;

namespace {

// Mean Spearman rho for criterion 5 measured by --calibrate on this build
// (GCC 11, libstdc++). The suite asserts non-regression against it.
constexpr double kBtRecoveryBaseline = 0.95518796992481203;
constexpr double kBtRecoveryFloor = 0.9;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;  // 0: no runtime bound
  std::function<Outcome()> body;
};

std::string strf(const char* f, auto... xs) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, xs...);
  return buf;
}

std::vector<std::string> ids_of(int m) {
  std::vector<std::string> ids;
  for (int i = 0; i < m; ++i) ids.push_back(strf("i%02d", i));
  return ids;
}

ca::PreferenceRecord beat(const std::string& w, const std::string& l) {
  return {w, l, ca::PreferenceMode::kPlain, w, ""};
}

std::vector<std::string> latent_order(const ca::SyntheticWorld& w) {
  std::vector<std::size_t> idx(w.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return w.latent_theta[a] > w.latent_theta[b]; });
  std::vector<std::string> out;
  for (std::size_t i : idx) out.push_back(w.ids[i]);
  return out;
}

std::vector<ca::AggregatorParams> default_methods() {
  return {ca::default_params(ca::Method::kElo), ca::default_params(ca::Method::kTrueSkill),
          ca::default_params(ca::Method::kBradleyTerry)};
}

// --- 1 -------------------------------------------------------------------

Outcome metric_oracles() {
  std::mt19937_64 rng(101);
  int mismatches = 0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + static_cast<int>(rng() % 199);
    const int levels = static_cast<int>(rng() % 3) == 0 ? 0 : 1 + static_cast<int>(rng() % 20);
    std::vector<ca::EvalInstance> xs;
    for (int i = 0; i < n; ++i) {
      const double c = levels == 0 ? std::uniform_real_distribution<double>(0, 1)(rng)
                                   : static_cast<double>(rng() % (levels + 1)) / levels;
      xs.push_back({strf("x%d", i), c, rng() % 2 == 0});
    }
    xs[0].correct = true;
    xs[1].correct = false;
    double num = 0, den = 0;
    for (const auto& p : xs) {
      if (!p.correct) continue;
      for (const auto& q : xs) {
        if (q.correct) continue;
        den += 1;
        num += p.confidence > q.confidence ? 1.0 : (p.confidence == q.confidence ? 0.5 : 0.0);
      }
    }
    if (ca::auroc(xs) != num / den) ++mismatches;
  }
  const std::vector<ca::EvalInstance> hand{{"a", 0.9, true}, {"b", 0.1, false}};
  const double a = ca::auc(hand).mean;
  return {mismatches == 0 && std::abs(a - 0.75) <= 1e-9,
          strf("auroc mismatches 0/1000 required, got %d; hand auc %.12f", mismatches, a)};
}

// --- 2 -------------------------------------------------------------------

Outcome elo_conservation() {
  std::mt19937_64 rng(202);
  double worst = 0;
  for (int t = 0; t < 10000; ++t) {
    const int m = 2 + static_cast<int>(rng() % 19);
    const auto ids = ids_of(m);
    std::vector<ca::PreferenceRecord> recs;
    const int len = 1 + static_cast<int>(rng() % 60);
    for (int k = 0; k < len; ++k) {
      const int i = static_cast<int>(rng() % m);
      int j = static_cast<int>(rng() % (m - 1));
      if (j >= i) ++j;
      recs.push_back(beat(ids[i], ids[j]));
    }
    ca::EloParams p;
    p.num_iters = 1 + static_cast<int>(rng() % 3);
    const auto table = ca::elo_scores(recs, ids, p);
    double sum = 0;
    for (const auto& [id, s] : table.scores) sum += s;
    worst = std::max(worst, std::abs(sum - m * p.initial_score));
  }
  return {worst < 1e-6, strf("max |sum - m*1000| = %.3g over 10000 sequences", worst)};
}

// --- 3 -------------------------------------------------------------------

Outcome bt_gradient() {
  std::mt19937_64 rng(303);
  std::normal_distribution<double> z(0, 1.5);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const int m = 2 + static_cast<int>(rng() % 29);
    const auto ids = ids_of(m);
    std::vector<ca::PreferenceRecord> recs;
    const int len = 1 + static_cast<int>(rng() % 150);
    for (int k = 0; k < len; ++k) {
      const int i = static_cast<int>(rng() % m);
      int j = static_cast<int>(rng() % (m - 1));
      if (j >= i) ++j;
      recs.push_back(beat(ids[i], ids[j]));
    }
    const auto data = ca::index_preferences(recs, ids);
    Eigen::VectorXd theta(m);
    for (int i = 0; i < m; ++i) theta[i] = z(rng);
    const double lambda = 0.01;
    const Eigen::VectorXd g = ca::bt_negloglik(theta, data, lambda).gradient;
    Eigen::VectorXd fd(m);
    const double h = 1e-5;
    for (int i = 0; i < m; ++i) {
      Eigen::VectorXd up = theta, dn = theta;
      up[i] += h;
      dn[i] -= h;
      fd[i] = (ca::bt_negloglik(up, data, lambda).value -
               ca::bt_negloglik(dn, data, lambda).value) /
              (2 * h);
    }
    worst = std::max(worst, (g - fd).norm() / std::max(1.0, g.norm()));
  }
  return {worst < 1e-6, strf("max relative gradient error %.3g over 100 instances", worst)};
}

// --- 4 -------------------------------------------------------------------

Outcome noiseless_recovery() {
  std::map<std::string, int> exact;
  int elo_converged = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto w = ca::make_world(50, 0.5, 2.0, seed);
    const auto d = ca::simulate_preferences(w, 49, ca::PreferenceNoise::noiseless(), seed);
    const auto truth = latent_order(w);
    for (const auto& p : default_methods()) {
      const std::string name(ca::to_string(ca::method_of(p)));
      exact[name] += ca::rank_order(ca::aggregate(d.records, w.ids, p)) == truth;
    }
    elo_converged +=
        ca::rank_order(ca::elo_scores(d.records, w.ids, {1000, 400, 50})) == truth;
  }
  bool pass = true;
  std::string detail = "exact seeds at defaults:";
  for (const auto& [name, n] : exact) {
    pass = pass && n == 10;
    detail += strf(" %s %d/10", name.c_str(), n);
  }
  detail += strf("; elo with 50 passes %d/10", elo_converged);
  return {pass, detail};
}

// --- 5 -------------------------------------------------------------------

double bt_recovery_rho() {
  double total = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto w = ca::make_world(20, 0.5, 2.0, seed);
    const auto d = ca::simulate_preferences(w, 50, ca::PreferenceNoise::bradley_terry(1.0), seed);
    const auto table = ca::bt_scores(d.records, w.ids, {});
    std::vector<double> s;
    for (const auto& id : w.ids) s.push_back(table.scores.at(id));
    total += ca::spearman(s, w.latent_theta);
  }
  return total / 10;
}

Outcome bt_recovery() {
  const double rho = bt_recovery_rho();
  const bool frozen_ok = kBtRecoveryBaseline >= kBtRecoveryFloor;
  return {frozen_ok && rho >= kBtRecoveryBaseline - 1e-12,
          strf("mean rho %.6f vs frozen baseline %.6f (floor %.2f)", rho, kBtRecoveryBaseline,
              kBtRecoveryFloor)};
}

// --- 6 -------------------------------------------------------------------

// Number of orderings attaining the minimum disagreement count.
std::size_t kemeny_optima(std::span<const ca::PreferenceRecord> recs,
                          std::vector<std::string> ids, std::size_t best) {
  std::sort(ids.begin(), ids.end());
  std::size_t count = 0;
  do {
    count += ca::kemeny_disagreements(ids, recs) == best;
  } while (std::next_permutation(ids.begin(), ids.end()));
  return count;
}

Outcome kemeny_agreement() {
  // Acyclic data drawn from a hidden order: some pairs unobserved, the rest
  // compared 1-3 times, never against the order.
  std::mt19937_64 rng(606);
  int optimal = 0, unique = 0, unique_equal = 0;
  for (int t = 0; t < 100; ++t) {
    const int m = 2 + static_cast<int>(rng() % 6);
    auto hidden = ids_of(m);
    std::shuffle(hidden.begin(), hidden.end(), rng);
    std::vector<ca::PreferenceRecord> recs;
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        if (rng() % 4 == 0) continue;
        const int reps = 1 + static_cast<int>(rng() % 3);
        for (int r = 0; r < reps; ++r) recs.push_back(beat(hidden[i], hidden[j]));
      }
    }
    if (recs.empty()) recs.push_back(beat(hidden[0], hidden[1]));
    std::shuffle(recs.begin(), recs.end(), rng);
    const auto ids = ids_of(m);
    const auto kemeny = ca::kemeny_exact(recs, ids);
    const std::size_t best = ca::kemeny_disagreements(kemeny, recs);
    const auto bt = ca::rank_order(ca::bt_scores(recs, ids, {}));
    optimal += ca::kemeny_disagreements(bt, recs) == best;
    if (kemeny_optima(recs, ids, best) == 1) {
      ++unique;
      unique_equal += bt == kemeny;
    }
  }

  // Reported only: complete data whose majorities follow a hidden order but
  // with minority votes against it. BT weighs margins, Kemeny counts them.
  int majority_equal = 0;
  for (int t = 0; t < 100; ++t) {
    const int m = 2 + static_cast<int>(rng() % 6);
    auto hidden = ids_of(m);
    std::shuffle(hidden.begin(), hidden.end(), rng);
    std::vector<ca::PreferenceRecord> recs;
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        const int reps = 1 + 2 * static_cast<int>(rng() % 3);
        const int against = static_cast<int>(rng() % (reps / 2 + 1));
        for (int r = 0; r < reps; ++r) {
          recs.push_back(r < against ? beat(hidden[j], hidden[i]) : beat(hidden[i], hidden[j]));
        }
      }
    }
    const auto ids = ids_of(m);
    majority_equal += ca::rank_order(ca::bt_scores(recs, ids, {})) == ca::kemeny_exact(recs, ids);
  }
  int noiseless = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t m = 2 + seed % 6;
    const auto w = ca::make_world(m, static_cast<double>(m / 2) / m, 0.0, seed);
    const auto d = ca::simulate_preferences(w, static_cast<int>(m) - 1,
                                            ca::PreferenceNoise::noiseless(), seed);
    const auto kemeny = ca::kemeny_exact(d.records, w.ids);
    noiseless += ca::rank_order(ca::bt_scores(d.records, w.ids, {})) == kemeny &&
                 kemeny == latent_order(w);
  }
  const bool pass = optimal >= 95 && unique_equal * 100 >= 95 * unique && noiseless == 100;
  return {pass, strf("acyclic: BT Kemeny-optimal %d/100, equal where the optimum is unique "
                     "%d/%d; noiseless complete %d/100; (info) majority-only data %d/100",
                     optimal, unique_equal, unique, noiseless, majority_equal)};
}

// --- 7 -------------------------------------------------------------------

Outcome perfect_ceiling() {
  std::map<std::string, double> worst;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto w = ca::make_world(250, 0.6, 1e4, seed);
    const auto d = ca::simulate_preferences(w, 15, ca::PreferenceNoise::noiseless(), seed);
    const double ceiling = ca::perfect_ranking_auc(w.correct_mask);
    for (const auto& p : default_methods()) {
      const auto table = ca::finalize(ca::aggregate(d.records, w.ids, p));
      const double a = ca::auc(ca::world_instances(w, table)).mean;
      auto& g = worst[std::string(ca::to_string(ca::method_of(p)))];
      g = std::max(g, ceiling - a);
    }
  }
  bool pass = true;
  std::string detail = "worst gap to ceiling over 10 seeds:";
  for (const auto& [name, g] : worst) {
    pass = pass && g <= 0.01;
    detail += strf(" %s %.4f", name.c_str(), g);
  }
  return {pass, detail};
}

// --- 8 -------------------------------------------------------------------

Outcome method_separation() {
  std::map<std::string, int> wins;
  double margin = 1.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto w = ca::make_world(250, 0.6, 2.0, seed);
    const auto d = ca::simulate_preferences(w, 15, ca::PreferenceNoise::bradley_terry(1.0), seed);
    ca::ScoreTable coarse{ca::Method::kDirect, {}, true};
    for (const auto& id : w.ids) coarse.scores.emplace(id, 0.9);
    const double base = ca::auc(ca::world_instances(w, coarse)).mean;
    for (const auto& p : default_methods()) {
      const double a =
          ca::auc(ca::world_instances(w, ca::finalize(ca::aggregate(d.records, w.ids, p)))).mean;
      wins[std::string(ca::to_string(ca::method_of(p)))] += a > base;
      margin = std::min(margin, a - base);
    }
  }
  bool pass = true;
  std::string detail = "seeds beating the coarse baseline:";
  for (const auto& [name, n] : wins) {
    pass = pass && n == 10;
    detail += strf(" %s %d/10", name.c_str(), n);
  }
  return {pass, detail + strf("; smallest margin %.4f", margin)};
}

// --- 9 -------------------------------------------------------------------

Outcome auroc_invariance() {
  std::mt19937_64 rng(909);
  std::normal_distribution<double> z(1000, 300);
  int mismatches = 0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + static_cast<int>(rng() % 200);
    std::map<std::string, double> raw;
    std::map<std::string, bool> correct;
    for (int i = 0; i < n; ++i) {
      const std::string id = strf("r%03d", i);
      raw[id] = rng() % 3 == 0 ? std::round(z(rng) / 50) : z(rng);
      correct[id] = i == 0 || (i != 1 && rng() % 2 == 0);
    }
    const auto norm = ca::minmax_normalize(raw);
    std::vector<ca::EvalInstance> a, b;
    for (const auto& [id, s] : raw) {
      a.push_back({id, s, correct[id]});
      b.push_back({id, norm.at(id), correct[id]});
    }
    if (ca::auroc(a) != ca::auroc(b)) ++mismatches;
  }
  return {mismatches == 0, strf("%d/1000 tables differ", mismatches)};
}

// --- 10 ------------------------------------------------------------------

Outcome hyperparameters() {
  using nlohmann::json;
  const double mu = 25.0;
  const json elo = {{"method", "elo"}, {"initial_score", 1000.0}, {"k", 400.0}, {"num_iters", 1}};
  const json ts = {{"method", "trueskill"}, {"mu", mu},       {"sigma", mu / 3},
                   {"beta", mu / 6},        {"tau", mu / 300}, {"draw_probability", 0.0}};
  const json bt = {{"method", "bradley_terry"},
                   {"max_iters", 5},
                   {"lambda", 0.01},
                   {"convergence_tol", 1e-8}};
  std::vector<std::string> bad;
  auto expect = [&](const std::string& what, const json& want, const json& got) {
    if (want.dump() != got.dump()) bad.push_back(what);
  };
  expect("elo defaults", elo, ca::to_json(ca::default_params(ca::Method::kElo)));
  expect("trueskill defaults", ts, ca::to_json(ca::default_params(ca::Method::kTrueSkill)));
  expect("bt defaults", bt, ca::to_json(ca::default_params(ca::Method::kBradleyTerry)));

  json elo_grid = json::array(), bt_grid = json::array(), ts_grid = json::array();
  for (int i = 1; i <= 20; ++i) {
    json e = elo;
    e["num_iters"] = i;
    elo_grid.push_back(e);
    json b = bt;
    b["max_iters"] = i;
    bt_grid.push_back(b);
  }
  for (double s : {3.0, 2.5, 2.2, 2.0}) {
    for (double be : {6.0, 5.0, 4.0, 3.0}) {
      for (double ta : {300.0, 250.0, 200.0, 150.0}) {
        json t = ts;
        t["sigma"] = mu / s;
        t["beta"] = mu / be;
        t["tau"] = mu / ta;
        ts_grid.push_back(t);
      }
    }
  }
  auto grid_json = [](ca::Method m) {
    json out = json::array();
    for (const auto& p : ca::standard_grid(m).points()) out.push_back(ca::to_json(p));
    return out;
  };
  expect("elo grid", elo_grid, grid_json(ca::Method::kElo));
  expect("trueskill grid", ts_grid, grid_json(ca::Method::kTrueSkill));
  expect("bt grid", bt_grid, grid_json(ca::Method::kBradleyTerry));
  std::string detail = "defaults and grids (20/64/20 points) serialize identically";
  if (!bad.empty()) {
    detail = "mismatch:";
    for (const auto& b : bad) detail += " " + b;
  }
  return {bad.empty(), detail};
}

// --- 11 ------------------------------------------------------------------

Outcome live_dry_run() {
  ca::test::TempDir dir;
  std::vector<ca::QuestionRecord> qs;
  for (int i = 0; i < 50; ++i) {
    qs.push_back({strf("live%03d", i), strf("Dry run question %d about topic %d", i, i % 7),
                  {"alpha", "beta", "gamma", "delta"}, i % 4});
  }
  const fs::path data = dir.path() / "dataset.jsonl";
  ca::save_dataset(data, qs);
  ca::testing::MockChatServer server{ca::testing::MockModel(qs)};
  server.start();
  setenv(ca::kApiKeyEnv, "dry-run", 1);
  const std::string out = (dir.path() / "run").string();
  const std::string url = server.base_url();
  const std::string cache = (dir.path() / "cache").string();

  std::vector<std::string> failed;
  auto step = [&](const std::string& name, std::vector<std::string> args) {
    args.insert(args.begin(), {"--out-dir", out});
    const int code = ca::cli::run(args);
    if (code != 0) failed.push_back(strf("%s exit %d", name.c_str(), code));
    return code == 0;
  };
  const fs::path run_dir(out);
  bool ok = step("answer", {"answer", "--dataset", data.string(), "--base-url", url, "--model",
                            "mock", "--cache-dir", cache}) &&
            step("prefgen", {"prefgen", "--dataset", data.string(), "--answers",
                             (run_dir / "answers.jsonl").string(), "--n", "5", "--base-url", url,
                             "--model", "mock", "--cache-dir", cache}) &&
            step("aggregate", {"aggregate", "--prefs", (run_dir / "preferences.jsonl").string(),
                               "--dataset", data.string(), "--method", "all"});
  std::string aucs;
  if (ok) {
    for (const char* m : {"elo", "trueskill", "bradley_terry"}) {
      const fs::path summary = run_dir / strf("eval_%s.json", m);
      ok = step(std::string("eval ") + m,
                {"eval", "--scores", (run_dir / strf("scores_%s.json", m)).string(), "--dataset",
                 data.string(), "--answers", (run_dir / "answers.jsonl").string(), "--out",
                 summary.string()}) &&
           ok;
      if (fs::exists(summary)) aucs += strf(" %s=%.3f", m, ca::load_json(summary)["auc"].get<double>());
    }
  }
  unsetenv(ca::kApiKeyEnv);

  std::size_t records = 0;
  bool manifest_ok = false;
  if (ok) {
    records = ca::load_preferences(run_dir / "preferences.jsonl").size();
    const auto manifest = ca::load_json(run_dir / "manifest.json");
    manifest_ok = manifest.contains("command") && manifest.contains("config_toml") &&
                  manifest.contains("version") && manifest.contains("argv");
    // prefgen's own manifest is overwritten by later steps in the same
    // directory; the record count is checked from the data instead.
  }
  const bool pass = ok && failed.empty() && records == 250 && manifest_ok;
  std::string detail = strf("%zu preference records, %zu HTTP requests, manifest %s;", records,
                           server.requests(), manifest_ok ? "valid" : "INVALID");
  detail += aucs;
  for (const auto& f : failed) detail += "; " + f;
  return {pass, detail};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> expect_red;
  std::vector<int> only;
  bool calibrate = false;
  app.add_option("--expect-red", expect_red, "Criteria known to fail");
  app.add_option("--only", only, "Run just these criteria");
  app.add_flag("--calibrate", calibrate, "Measure the criterion 5 baseline and exit");
  CLI11_PARSE(app, argc, argv);
  spdlog::set_level(spdlog::level::err);

  if (calibrate) {
    std::printf("criterion 5 baseline: mean spearman rho = %.17g\n", bt_recovery_rho());
    return 0;
  }

  const std::vector<Criterion> criteria{
      {1, "metric oracle equivalence", 10, metric_oracles},
      {2, "elo conservation", 5, elo_conservation},
      {3, "bt gradient check", 10, bt_gradient},
      {4, "noiseless ordering recovery", 30, noiseless_recovery},
      {5, "bt score recovery", 0, bt_recovery},
      {6, "kemeny agreement", 60, kemeny_agreement},
      {7, "perfect-preference auc ceiling", 30, perfect_ceiling},
      {8, "method separation vs coarse baseline", 0, method_separation},
      {9, "auroc monotone-transform invariance", 0, auroc_invariance},
      {10, "hyperparameter fidelity", 0, hyperparameters},
      {11, "live-protocol dry run", 0, live_dry_run},
  };

  std::set<int> failed;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs >= c.budget_s) {
      o.pass = false;
      o.detail += strf("; over the %.0f s budget", c.budget_s);
    }
    if (!o.pass) failed.insert(c.id);
    const bool known = std::find(expect_red.begin(), expect_red.end(), c.id) != expect_red.end();
    std::printf("%s %2d %s (%.2fs): %s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                o.detail.c_str(), !o.pass && known ? " [expected red]" : "");
    std::fflush(stdout);
  }

  std::set<int> expected;
  for (int id : expect_red) {
    if (only.empty() || std::find(only.begin(), only.end(), id) != only.end()) expected.insert(id);
  }
  std::printf("%zu failed, %zu expected red\n", failed.size(), expected.size());
  for (int id : expected) {
    if (!failed.contains(id)) std::printf("criterion %d passed but is listed as expected red\n", id);
  }
  return failed == expected ? 0 : 1;
}
