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

#include "conf_arena/cli.h"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "conf_arena/aggregate.h"
#include "conf_arena/baselines.h"
#include "conf_arena/core.h"
#include "conf_arena/error.h"
#include "conf_arena/metrics.h"
#include "conf_arena/modelio.h"
#include "conf_arena/prefgen.h"
#include "conf_arena/rng.h"
#include "conf_arena/synth.h"
#include "conf_arena/tune.h"
#include "spdlog/sinks/stdout_sinks.h"
#include "spdlog/spdlog.h"

#ifndef CONF_ARENA_VERSION
#define CONF_ARENA_VERSION "unknown"
#endif

namespace conf_arena::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void init_logging() {
  static const bool done = [] {
    auto logger = spdlog::stderr_logger_mt("conf_arena");
    logger->set_pattern("ts=%Y-%m-%dT%H:%M:%S.%e level=%l msg=\"%v\"");
    spdlog::set_default_logger(std::move(logger));
    return true;
  }();
  (void)done;
}

struct EndpointOptions {
  std::string base_url = "https://api.openai.com/v1";
  std::string model;
  std::string cache_dir = ".conf_arena_cache";
  std::size_t max_concurrency = 4;
  int timeout_s = 120;
  int max_retries = 3;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--base-url", base_url, "Chat-completion API base URL")
        ->capture_default_str();
    cmd->add_option("--model", model, "Model name sent to the endpoint")->required();
    cmd->add_option("--cache-dir", cache_dir, "Response cache directory")
        ->capture_default_str();
    cmd->add_option("--max-concurrency", max_concurrency, "Requests in flight")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--timeout", timeout_s, "Per-request timeout in seconds")
        ->capture_default_str();
    cmd->add_option("--max-retries", max_retries, "Retries on network errors, 429 and 5xx")
        ->capture_default_str();
  }

  ChatClient make_client() const {
    const char* key = std::getenv(kApiKeyEnv);
    if (key == nullptr || *key == '\0') {
      throw ConfigError(std::string("set ") + kApiKeyEnv +
                        " to the API key for the chat endpoint");
    }
    ModelEndpointConfig ep;
    ep.base_url = base_url;
    ep.model_name = model;
    ep.api_key = key;
    ep.cache_dir = cache_dir;
    ep.timeout = std::chrono::seconds(timeout_s);
    ep.max_retries = max_retries;
    ep.max_concurrency = max_concurrency;
    return ChatClient(std::move(ep), std::make_shared<HttpTransport>());
  }
};

struct AggregationFlags {
  std::optional<double> elo_initial, elo_k;
  std::optional<int> elo_iters;
  std::optional<double> ts_mu, ts_sigma, ts_beta, ts_tau, ts_draw;
  std::optional<int> bt_max_iters;
  std::optional<double> bt_lambda;
  std::string params_file;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--params", params_file,
                    "Hyperparameter JSON (a tune output or a params object)");
    cmd->add_option("--elo-initial", elo_initial, "Elo initial score");
    cmd->add_option("--elo-k", elo_k, "Elo K");
    cmd->add_option("--elo-iters", elo_iters, "Elo passes over the data");
    cmd->add_option("--ts-mu", ts_mu, "TrueSkill prior mean");
    cmd->add_option("--ts-sigma", ts_sigma, "TrueSkill prior sigma");
    cmd->add_option("--ts-beta", ts_beta, "TrueSkill performance sigma");
    cmd->add_option("--ts-tau", ts_tau, "TrueSkill dynamics");
    cmd->add_option("--ts-draw-probability", ts_draw, "TrueSkill draw probability");
    cmd->add_option("--bt-max-iters", bt_max_iters, "Bradley-Terry BFGS iterations");
    cmd->add_option("--bt-lambda", bt_lambda, "Bradley-Terry L2 strength");
  }

  AggregatorParams resolve(Method method) const {
    json j = json::object();
    if (!params_file.empty()) {
      json file = load_json(params_file);
      if (file.contains("best")) file = file["best"];
      if (file.contains("method") && parse_method(file["method"].get<std::string>()) == method) {
        j = file;
      } else if (file.contains(std::string(to_string(method)))) {
        j = file[std::string(to_string(method))];
      }
    }
    auto set = [&](const char* key, const auto& value) {
      if (value) j[key] = *value;
    };
    set("initial_score", elo_initial);
    set("k", elo_k);
    set("num_iters", elo_iters);
    set("mu", ts_mu);
    set("sigma", ts_sigma);
    set("beta", ts_beta);
    set("tau", ts_tau);
    set("draw_probability", ts_draw);
    set("max_iters", bt_max_iters);
    set("lambda", bt_lambda);
    return params_from_json(method, j);
  }
};

std::vector<Method> aggregation_methods(const std::string& name) {
  if (name == "all") return {Method::kElo, Method::kTrueSkill, Method::kBradleyTerry};
  Method m;
  try {
    m = parse_method(name);
  } catch (const DataError& e) {
    throw ConfigError(e.what());
  }
  if (m != Method::kElo && m != Method::kTrueSkill && m != Method::kBradleyTerry) {
    throw ConfigError("'" + name + "' is not a rank aggregation method");
  }
  return {m};
}

struct EvalFlags {
  double noise_sigma = kDefaultNoiseSigma;
  int n_seeds = kDefaultNoiseSeeds;
  std::uint64_t seed = 0;
  int bins = kDefaultEceBins;
  std::string tie_break = "ties";

  void add_to(CLI::App* cmd) {
    cmd->add_option("--noise-sigma", noise_sigma, "Tie-breaking noise sigma")
        ->capture_default_str();
    cmd->add_option("--noise-seeds", n_seeds, "Noise draws averaged into the AUC")
        ->capture_default_str();
    cmd->add_option("--eval-seed", seed, "Master seed for the noise draws")
        ->capture_default_str();
    cmd->add_option("--bins", bins, "ECE bins")->capture_default_str();
    cmd->add_option("--tie-break", tie_break,
                    "ties: noise only orders equal confidences; additive: noise is added")
        ->capture_default_str()
        ->check(CLI::IsMember({"ties", "additive"}));
  }

  EvalOptions options() const {
    return {noise_sigma, n_seeds, seed, bins, parse_tie_break(tie_break)};
  }
};

// Everything a command needs besides its own flags.
struct Context {
  CLI::App* app = nullptr;
  std::vector<std::string> args;
  fs::path out_dir;

  // Top-level options plus the selected subcommand's section; feeding this
  // back through --config replays the run.
  std::string config_toml() const {
    std::string out = "out-dir=\"" + out_dir.generic_string() + "\"\n";
    for (const CLI::App* sub : app->get_subcommands()) {
      out += "\n[" + sub->get_name() + "]\n" + sub->config_to_str(true, false);
    }
    return out;
  }

  void write_manifest(const std::string& command, json extra = json::object()) const {
    json m{{"command", command},
           {"version", CONF_ARENA_VERSION},
           {"argv", args},
           {"config_toml", config_toml()},
           {"created_utc", std::chrono::duration_cast<std::chrono::seconds>(
                               std::chrono::system_clock::now().time_since_epoch())
                               .count()}};
    for (auto& [k, v] : extra.items()) m[k] = v;
    save_json(out_dir / "manifest.json", m);
  }
};

std::vector<AnswerRecord> load_aligned_answers(const std::string& path,
                                               std::span<const QuestionRecord> questions) {
  return align_answers(questions, load_answers(path));
}

MetricSummary evaluate_table(const ScoreTable& table, std::span<const AnswerRecord> answers,
                             const EvalFlags& flags, const fs::path& curve_path) {
  const auto instances = make_instances(table, answers);
  const EvalOptions opts = flags.options();
  MetricSummary s = summarize(std::string(to_string(table.method)), instances, opts);
  // The curve of the first noise draw.
  save_curve_csv(curve_path, selective_curve(instances, opts.noise_sigma,
                                             derive_seed(opts.seed, 0), opts.tie_break));
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  init_logging();
  CLI::App app{"Relative confidence estimation from pairwise preferences"};
  app.set_config("--config", "", "TOML/INI file setting any flag; flags override it");
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", CONF_ARENA_VERSION);

  Context ctx;
  ctx.app = &app;
  ctx.args = args;
  std::string out_dir = "run";
  app.add_option("--out-dir", out_dir, "Directory for all artifacts of this run")
      ->capture_default_str();

  std::function<void()> action;

  // answer ----------------------------------------------------------------
  auto* answer_cmd = app.add_subcommand("answer", "Greedy answers + stated confidence");
  std::string ans_dataset;
  EndpointOptions ans_ep;
  answer_cmd->add_option("--dataset", ans_dataset, "Dataset JSONL")->required();
  ans_ep.add_to(answer_cmd);
  answer_cmd->callback([&] {
    action = [&] {
      const auto questions = load_dataset(ans_dataset);
      const ChatClient client = ans_ep.make_client();
      const auto answers = generate_answers(questions, client);
      save_answers(ctx.out_dir / "answers.jsonl", answers);
      const auto correct = std::count_if(answers.begin(), answers.end(),
                                         [](const AnswerRecord& a) { return a.correct; });
      spdlog::info("answered {} questions, {} correct, {} network calls", answers.size(),
                   correct, client.network_calls());
      ctx.write_manifest("answer", {{"model", ans_ep.model},
                                    {"questions", answers.size()},
                                    {"network_calls", client.network_calls()}});
    };
  });

  // prefgen ---------------------------------------------------------------
  auto* pref_cmd = app.add_subcommand("prefgen", "Elicit pairwise confidence preferences");
  std::string pref_dataset, pref_answers, pref_mode = "plain";
  int pref_n = 15;
  std::uint64_t pref_seed = 0;
  EndpointOptions pref_ep;
  pref_cmd->add_option("--dataset", pref_dataset, "Dataset JSONL")->required();
  pref_cmd->add_option("--answers", pref_answers, "Answers JSONL (plain and cot modes)");
  pref_cmd->add_option("--n", pref_n, "Matchups initiated per question")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  pref_cmd->add_option("--mode", pref_mode, "plain, cot or difficulty")
      ->capture_default_str()
      ->check(CLI::IsMember({"plain", "cot", "difficulty"}));
  pref_cmd->add_option("--seed", pref_seed, "Pairing seed")->capture_default_str();
  pref_ep.add_to(pref_cmd);
  pref_cmd->callback([&] {
    action = [&] {
      const auto questions = load_dataset(pref_dataset);
      const PreferenceMode mode = parse_preference_mode(pref_mode);
      std::vector<AnswerRecord> answers;
      if (mode != PreferenceMode::kDifficulty) {
        if (pref_answers.empty()) throw ConfigError("--answers is required in " + pref_mode + " mode");
        answers = load_aligned_answers(pref_answers, questions);
      }
      const ChatClient client = pref_ep.make_client();
      const MatchupPlan plan = plan_matchups(questions, pref_n, pref_seed);
      const PreferenceDataset data =
          generate_preferences(plan, questions, answers, mode, client);
      save_preferences(ctx.out_dir / "preferences.jsonl", data.records);
      spdlog::info("{} preferences from {} matchups, {} dropped", data.records.size(),
                   data.planned, data.dropped);
      ctx.write_manifest("prefgen",
                         {{"preferences", preference_manifest(data, pref_seed, pref_ep.model)},
                          {"network_calls", client.network_calls()}});
    };
  });

  // aggregate -------------------------------------------------------------
  auto* agg_cmd = app.add_subcommand("aggregate", "Preferences to confidence scores");
  std::string agg_prefs, agg_dataset, agg_method = "all";
  AggregationFlags agg_flags;
  agg_cmd->add_option("--prefs", agg_prefs, "Preference JSONL")->required();
  agg_cmd->add_option("--dataset", agg_dataset, "Dataset JSONL naming the scored ids")
      ->required();
  agg_cmd->add_option("--method", agg_method, "elo, trueskill, bradley_terry or all")
      ->capture_default_str();
  agg_flags.add_to(agg_cmd);
  agg_cmd->callback([&] {
    action = [&] {
      const auto questions = load_dataset(agg_dataset);
      const auto ids = question_ids(questions);
      const auto prefs = load_preferences(agg_prefs);
      json used = json::object();
      for (Method m : aggregation_methods(agg_method)) {
        const AggregatorParams params = agg_flags.resolve(m);
        const ScoreTable raw = aggregate(prefs, ids, params);
        const std::string name(to_string(m));
        save_score_table(ctx.out_dir / ("raw_" + name + ".json"), raw);
        save_score_table(ctx.out_dir / ("scores_" + name + ".json"), finalize(raw));
        used[name] = to_json(params);
        spdlog::info("{} scores written for {} questions", name, ids.size());
      }
      ctx.write_manifest("aggregate", {{"params", used}, {"preferences", prefs.size()}});
    };
  });

  // baseline --------------------------------------------------------------
  auto* base_cmd = app.add_subcommand("baseline", "Absolute-confidence baselines");
  std::string base_method = "direct", base_dataset, base_answers;
  int base_samples = kSelfConsistencySamples;
  double base_temperature = kSelfConsistencyTemperature;
  EndpointOptions base_ep;
  base_cmd->add_option("--method", base_method, "direct or self_consistency")
      ->capture_default_str()
      ->check(CLI::IsMember({"direct", "self_consistency", "sc"}));
  base_cmd->add_option("--dataset", base_dataset, "Dataset JSONL")->required();
  base_cmd->add_option("--answers", base_answers, "Answers JSONL (direct)");
  base_cmd->add_option("--samples", base_samples, "Samples per question (self_consistency)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  base_cmd->add_option("--temperature", base_temperature, "Sampling temperature")
      ->capture_default_str();
  base_ep.add_to(base_cmd);
  // The direct baseline needs no endpoint.
  base_cmd->get_option("--model")->required(false);
  base_cmd->callback([&] {
    action = [&] {
      const auto questions = load_dataset(base_dataset);
      if (parse_method(base_method) == Method::kDirect) {
        if (base_answers.empty()) throw ConfigError("--answers is required for direct");
        const auto table = direct_confidence(questions, load_answers(base_answers));
        save_score_table(ctx.out_dir / "scores_direct.json", table);
        ctx.write_manifest("baseline", {{"method", "direct"}});
        return;
      }
      if (base_ep.model.empty()) throw ConfigError("--model is required for self_consistency");
      const ChatClient client = base_ep.make_client();
      const auto samples =
          collect_all_samples(questions, client, base_samples, base_temperature);
      const auto sc = self_consistency_baseline(questions, samples);
      {
        std::ofstream dump(ctx.out_dir / "samples.jsonl", std::ios::trunc);
        for (const auto& s : samples) dump << to_json(s).dump() << '\n';
      }
      save_answers(ctx.out_dir / "sc_answers.jsonl", sc.answers);
      save_score_table(ctx.out_dir / "scores_self_consistency.json", sc.scores);
      ctx.write_manifest("baseline", {{"method", "self_consistency"},
                                      {"samples", base_samples},
                                      {"temperature", base_temperature},
                                      {"network_calls", client.network_calls()}});
    };
  });

  // eval ------------------------------------------------------------------
  auto* eval_cmd = app.add_subcommand("eval", "Metrics for one score table");
  std::string eval_scores, eval_dataset, eval_answers, eval_out;
  EvalFlags eval_flags;
  eval_cmd->add_option("--scores", eval_scores, "ScoreTable JSON")->required();
  eval_cmd->add_option("--dataset", eval_dataset, "Dataset JSONL")->required();
  eval_cmd->add_option("--answers", eval_answers, "Answers JSONL defining correctness")
      ->required();
  eval_cmd->add_option("--out", eval_out, "Summary JSON path (default <out-dir>/summary.json)");
  eval_flags.add_to(eval_cmd);
  eval_cmd->callback([&] {
    action = [&] {
      const auto questions = load_dataset(eval_dataset);
      const auto answers = load_aligned_answers(eval_answers, questions);
      const ScoreTable table = load_score_table(eval_scores);
      const std::string method(to_string(table.method));
      const MetricSummary s = evaluate_table(table, answers, eval_flags,
                                             ctx.out_dir / ("curve_" + method + ".csv"));
      save_json(eval_out.empty() ? ctx.out_dir / "summary.json" : fs::path(eval_out),
                to_json(s));
      spdlog::info("{}: auc={:.4f} auc_std={:.4f} ece={:.4f}", method, s.auc, s.auc_std, s.ece);
      ctx.write_manifest("eval");
    };
  });

  // tune ------------------------------------------------------------------
  auto* tune_cmd = app.add_subcommand("tune", "Grid search on a held-out split");
  std::string tune_method, tune_prefs, tune_dataset, tune_answers, tune_test_dataset;
  EvalFlags tune_eval;
  std::size_t tune_workers = 1;
  tune_cmd->add_option("--method", tune_method, "elo, trueskill or bradley_terry")->required();
  tune_cmd->add_option("--prefs", tune_prefs, "Held-out preference JSONL")->required();
  tune_cmd->add_option("--dataset", tune_dataset, "Held-out dataset JSONL")->required();
  tune_cmd->add_option("--answers", tune_answers, "Held-out answers JSONL")->required();
  tune_cmd->add_option("--test-dataset", tune_test_dataset,
                       "Test dataset; must not share ids with the held-out set")
      ->required();
  tune_cmd->add_option("--workers", tune_workers, "Grid points evaluated in parallel")
      ->capture_default_str();
  tune_eval.add_to(tune_cmd);
  tune_cmd->callback([&] {
    action = [&] {
      const Method m = aggregation_methods(tune_method).front();
      const auto questions = load_dataset(tune_dataset);
      const auto answers = load_aligned_answers(tune_answers, questions);
      const auto test_ids = question_ids(load_dataset(tune_test_dataset));
      GridSearchOptions opts{tune_eval.noise_sigma, tune_eval.n_seeds, tune_eval.seed,
                             tune_workers, parse_tie_break(tune_eval.tie_break)};
      const GridSearchResult result =
          grid_search(standard_grid(m), load_preferences(tune_prefs), answers, test_ids, opts);
      save_json(ctx.out_dir / "params.json", to_json(result));
      spdlog::info("best {} params {} (held-out auc {:.4f})", to_string(m),
                   to_json(result.best).dump(), result.best_auc);
      ctx.write_manifest("tune", {{"best", to_json(result.best)}});
    };
  });

  // simulate --------------------------------------------------------------
  auto* sim_cmd = app.add_subcommand("simulate", "Full synthetic pipeline, no network");
  std::size_t sim_m = 250;
  int sim_n = 15;
  std::string sim_noise = "bt:1.0", sim_method = "all";
  double sim_accuracy = 0.6, sim_slope = 2.0;
  std::optional<double> sim_coarse;
  std::uint64_t sim_seed = 0;
  AggregationFlags sim_flags;
  EvalFlags sim_eval;
  sim_cmd->add_option("--m", sim_m, "Questions")->capture_default_str();
  sim_cmd->add_option("--n", sim_n, "Matchups initiated per question")->capture_default_str();
  sim_cmd->add_option("--noise", sim_noise, "noiseless, bt:<beta> or flip:<p>")
      ->capture_default_str();
  sim_cmd->add_option("--method", sim_method, "elo, trueskill, bradley_terry or all")
      ->capture_default_str();
  sim_cmd->add_option("--accuracy", sim_accuracy, "Target accuracy")->capture_default_str();
  sim_cmd->add_option("--link-slope", sim_slope, "Skill-to-correctness logistic slope")
      ->capture_default_str();
  sim_cmd->add_option("--coarse-confidence", sim_coarse,
                      "Also score a direct baseline stating this confidence everywhere");
  sim_cmd->add_option("--seed", sim_seed, "World and preference seed")->capture_default_str();
  sim_flags.add_to(sim_cmd);
  sim_eval.add_to(sim_cmd);
  sim_cmd->callback([&] {
    action = [&] {
      const SyntheticWorld world = make_world(sim_m, sim_accuracy, sim_slope, sim_seed);
      const PreferenceDataset data =
          simulate_preferences(world, sim_n, parse_noise(sim_noise), sim_seed);
      const auto questions = synthetic_questions(world);
      const auto answers = synthetic_answers(world);
      save_dataset(ctx.out_dir / "dataset.jsonl", questions);
      save_answers(ctx.out_dir / "answers.jsonl", answers);
      save_preferences(ctx.out_dir / "preferences.jsonl", data.records);

      std::vector<ScoreTable> tables;
      json used = json::object();
      for (Method m : aggregation_methods(sim_method)) {
        const AggregatorParams params = sim_flags.resolve(m);
        used[std::string(to_string(m))] = to_json(params);
        tables.push_back(finalize(aggregate(data.records, world.ids, params)));
      }
      if (sim_coarse) {
        ScoreTable coarse{Method::kDirect, {}, true};
        for (const auto& id : world.ids) coarse.scores.emplace(id, *sim_coarse);
        tables.push_back(std::move(coarse));
      }
      json summary = json::array();
      for (const auto& t : tables) {
        const std::string name(to_string(t.method));
        save_score_table(ctx.out_dir / ("scores_" + name + ".json"), t);
        const MetricSummary s =
            evaluate_table(t, answers, sim_eval, ctx.out_dir / ("curve_" + name + ".csv"));
        summary.push_back(to_json(s));
        spdlog::info("{}: auc={:.4f} auroc={} ece={:.4f}", name, s.auc,
                     s.auroc ? std::to_string(*s.auroc) : "n/a", s.ece);
      }
      const double ceiling = perfect_ranking_auc(world.correct_mask);
      save_json(ctx.out_dir / "summary.json",
                {{"methods", summary}, {"perfect_ranking_auc", ceiling},
                 {"accuracy", world.accuracy()}});
      ctx.write_manifest("simulate", {{"params", used},
                                      {"preferences", preference_manifest(data, sim_seed, "synthetic")},
                                      {"noise", sim_noise}});
    };
  });

  // report ----------------------------------------------------------------
  auto* rep_cmd = app.add_subcommand("report", "Summary JSON and curves for many tables");
  std::vector<std::string> rep_scores;
  std::string rep_dataset, rep_answers, rep_sc_answers;
  EvalFlags rep_eval;
  rep_cmd->add_option("--scores", rep_scores, "ScoreTable JSON files")->required();
  rep_cmd->add_option("--dataset", rep_dataset, "Dataset JSONL")->required();
  rep_cmd->add_option("--answers", rep_answers, "Greedy answers JSONL")->required();
  rep_cmd->add_option("--sc-answers", rep_sc_answers,
                      "Self-consistency answers JSONL; defines correctness for that table");
  rep_eval.add_to(rep_cmd);
  rep_cmd->callback([&] {
    action = [&] {
      const auto questions = load_dataset(rep_dataset);
      const auto answers = load_aligned_answers(rep_answers, questions);
      std::optional<std::vector<AnswerRecord>> sc_answers;
      if (!rep_sc_answers.empty()) sc_answers = load_aligned_answers(rep_sc_answers, questions);
      json summary = json::array();
      for (const auto& path : rep_scores) {
        const ScoreTable table = load_score_table(path);
        const std::string name(to_string(table.method));
        const bool use_sc = table.method == Method::kSelfConsistency && sc_answers;
        const MetricSummary s =
            evaluate_table(table, use_sc ? *sc_answers : answers, rep_eval,
                           ctx.out_dir / ("curve_" + name + ".csv"));
        summary.push_back(to_json(s));
      }
      save_json(ctx.out_dir / "summary.json", summary);
      ctx.write_manifest("report", {{"tables", rep_scores.size()}});
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    ctx.out_dir = out_dir;
    fs::create_directories(ctx.out_dir);
    if (action) action();
    return kExitOk;
  } catch (const ConfigError& e) {
    spdlog::error("config error: {}", e.what());
    return kExitConfig;
  } catch (const TransportError& e) {
    spdlog::error("transport error: {}", e.what());
    return kExitTransport;
  } catch (const DataError& e) {
    spdlog::error("data error: {}", e.what());
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    spdlog::error("data error: {}", e.what());
    return kExitData;
  } catch (const std::exception& e) {
    spdlog::error("error: {}", e.what());
    return kExitConfig;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace conf_arena::cli
