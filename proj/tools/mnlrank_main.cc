// Copyright 2026 The mnlrank Authors
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

// mnlrank: rank | bench | fit | verify | serve

#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mnlrank/error.h"
#include "mnlrank/experiment.h"
#include "mnlrank/http_service.h"
#include "mnlrank/mm_fit.h"
#include "mnlrank/preflib.h"
#include "mnlrank/session.h"
#include "mnlrank/verification.h"

namespace {

using mnlrank::ExperimentConfig;

struct ConfigFlags {
  std::string config_path;
  std::optional<uint64_t> seed;
  std::optional<int> trials;
  std::optional<int64_t> budget;
  std::vector<std::string> overrides;  // key=value

  void Register(CLI::App* app) {
    app->add_option("--config", config_path, "JSON experiment config");
    app->add_option("--seed", seed, "Base seed");
    app->add_option("--trials", trials, "Number of trials");
    app->add_option("--budget", budget, "Per-trial query budget");
    app->add_option("--set", overrides,
                    "Parameter override key=value (algorithm, oracle, n, k, l, "
                    "eps, delta, C, alpha)");
  }

  ExperimentConfig Build() const {
    ExperimentConfig config;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        throw mnlrank::Error(mnlrank::ErrorCode::kInvalidConfig,
                             "cannot open " + config_path);
      }
      std::stringstream text;
      text << in.rdbuf();
      config = mnlrank::ParseExperimentConfig(text.str());
    }
    for (const std::string& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        throw mnlrank::Error(mnlrank::ErrorCode::kInvalidConfig,
                             "override '" + kv + "' is not key=value");
      }
      const std::string key = kv.substr(0, eq);
      const std::string value = kv.substr(eq + 1);
      if (key == "oracle") {
        config = mnlrank::ParseExperimentConfig(
            nlohmann::json{{"oracle", value}}.dump(), config);
      } else {
        mnlrank::ApplyAxisValue(config, key, value);
      }
    }
    if (seed) config.base_seed = *seed;
    if (trials) config.trials = *trials;
    if (budget) config.budget = *budget;
    for (const std::string& w : config.Warnings()) {
      std::cerr << "warning: " << w << '\n';
    }
    return config;
  }
};

// Writes to --out when given, otherwise stdout.
void Emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) {
    throw mnlrank::Error(mnlrank::ErrorCode::kInvalidArgument,
                         "cannot write " + path);
  }
  out << text;
}

std::vector<std::string> SplitCommas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int RunRank(const ConfigFlags& flags, int trial) {
  const mnlrank::Experiment experiment(flags.Build());
  const mnlrank::TrialReport r = experiment.RunTrial(trial);
  nlohmann::json out = {{"algorithm", r.algorithm},
                        {"trial", r.trial},
                        {"seed", r.seed},
                        {"answer", r.answer},
                        {"correct", r.correct},
                        {"queries", r.queries},
                        {"wall_time_s", r.wall_time_s}};
  if (r.rounds > 0) out["rounds"] = r.rounds;
  if (!r.error.empty()) out["error"] = r.error;
  std::cout << out.dump(2) << '\n';
  return r.error.empty() ? 0 : 1;
}

int RunBench(const ConfigFlags& flags, const std::string& axis,
             const std::string& values_text, const std::string& out_path,
             const std::string& trials_out, int threads) {
  const ExperimentConfig config = flags.Build();
  std::string sweep_axis = axis.empty() ? "seed" : axis;
  std::vector<std::string> values = SplitCommas(values_text);
  if (values.empty()) {
    if (axis == "alpha") {
      values = {"default", "2xdefault", "4xdefault"};
    } else if (axis.empty()) {
      values = {std::to_string(config.base_seed)};
    } else {
      throw mnlrank::Error(mnlrank::ErrorCode::kInvalidConfig,
                           "--values is required for axis " + axis);
    }
  }
  const mnlrank::SweepResult sweep =
      mnlrank::RunSweep(config, sweep_axis, values, threads);

  std::string aggregate = std::string(mnlrank::AggregateCsvHeader()) + '\n';
  for (const auto& row : sweep.rows) aggregate += AggregateCsvRow(row) + '\n';
  Emit(out_path, aggregate);
  if (!trials_out.empty()) {
    std::string rows = std::string(mnlrank::TrialCsvHeader()) + '\n';
    for (const auto& block : sweep.trials) {
      for (const auto& r : block) rows += TrialCsvRow(r) + '\n';
    }
    Emit(trials_out, rows);
  }
  return 0;
}

int RunFit(const std::string& path, int n, const std::string& out_path) {
  mnlrank::PreferenceProfile profile = mnlrank::ReadPreflibFile(path);
  if (n > 0) profile = mnlrank::RestrictToFirstItems(profile, n);
  const mnlrank::MmFitResult fit =
      mnlrank::MmFit(mnlrank::ComputePairwiseCounts(profile));
  if (!fit.converged) {
    std::cerr << "warning: MM fit stopped after " << fit.iterations
              << " iterations without converging\n";
  }
  Emit(out_path, mnlrank::FittedScoresJson(profile, fit.scores) + "\n");
  return 0;
}

int RunVerify(int instances, uint64_t seed) {
  bool ok = true;
  for (const auto& check : mnlrank::RunModelChecks({instances, seed})) {
    std::cout << (check.passed ? "PASS " : "FAIL ") << check.name << ": "
              << check.detail << " (" << check.seconds << " s)\n";
    ok = ok && check.passed;
  }
  return ok ? 0 : 1;
}

mnlrank::HttpService* g_service = nullptr;

void HandleSignal(int) {
  if (g_service) g_service->Stop();
}

int RunServe(const std::string& host, int port, const std::string& snapshot_dir,
             const mnlrank::HttpOptions& options) {
  std::optional<std::filesystem::path> dir;
  if (!snapshot_dir.empty()) dir = snapshot_dir;
  mnlrank::SessionStore store(dir);
  mnlrank::HttpService service(store, options);
  g_service = &service;
  std::signal(SIGINT, HandleSignal);
  std::signal(SIGTERM, HandleSignal);
  std::cerr << "listening on " << host << ':' << port << '\n';
  if (!service.Listen(host, port)) {
    std::cerr << "error: cannot listen on " << host << ':' << port << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PAC ranking and top-k selection under the MNL choice model"};
  app.require_subcommand(1);

  ConfigFlags rank_flags;
  int rank_trial = 0;
  CLI::App* rank = app.add_subcommand("rank", "Run one trial, print the answer");
  rank_flags.Register(rank);
  rank->add_option("--trial", rank_trial, "Trial index");

  ConfigFlags bench_flags;
  std::string axis;
  std::string values;
  std::string bench_out;
  std::string trials_out;
  int threads = 0;
  CLI::App* bench = app.add_subcommand("bench", "Run a sweep, write CSV");
  bench_flags.Register(bench);
  bench->add_option("--sweep", axis, "Axis to sweep (n, k, l, eps, delta, C, alpha, ...)");
  bench->add_option("--values", values, "Comma-separated axis values");
  bench->add_option("--out", bench_out, "Aggregate CSV path (default stdout)");
  bench->add_option("--trials-out", trials_out, "Per-trial CSV path");
  bench->add_option("--threads", threads, "Worker threads (MNLRANK_THREADS caps)");

  std::string fit_path;
  std::string fit_out;
  int fit_n = 0;
  CLI::App* fit = app.add_subcommand("fit", "Fit BTL scores to a PrefLib file");
  fit->add_option("path", fit_path, "PrefLib file")->required();
  fit->add_option("--n", fit_n, "Keep only the first n items");
  fit->add_option("--out", fit_out, "Output path (default stdout)");

  int verify_instances = 200;
  uint64_t verify_seed = mnlrank::VerifyOptions{}.seed;
  CLI::App* verify = app.add_subcommand("verify", "Run model property checks");
  verify->add_option("--instances", verify_instances, "Random instances");
  verify->add_option("--seed", verify_seed, "Seed");

  std::string host = "127.0.0.1";
  int port = 8080;
  std::string snapshot_dir;
  mnlrank::HttpOptions http_options;
  CLI::App* serve = app.add_subcommand("serve", "Start the session service");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port");
  serve->add_option("--snapshot-dir", snapshot_dir, "Persist sessions here");
  serve->add_option("--static-dir", http_options.static_dir, "Serve a UI from here");
  serve->add_option("--cors-origin", http_options.cors_origin, "Allowed origin");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*rank) return RunRank(rank_flags, rank_trial);
    if (*bench) return RunBench(bench_flags, axis, values, bench_out, trials_out, threads);
    if (*fit) return RunFit(fit_path, fit_n, fit_out);
    if (*verify) return RunVerify(verify_instances, verify_seed);
    if (*serve) return RunServe(host, port, snapshot_dir, http_options);
  } catch (const mnlrank::Error& e) {
    std::cerr << "error: " << mnlrank::ErrorCodeName(e.code()) << ": " << e.what()
              << '\n';
    return 2;
  }
  return 0;
}
