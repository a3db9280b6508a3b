// Copyright 2026 The teleport Authors
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

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <omp.h>

#include "commands.hpp"
#include "config.hpp"
#include "teleport/errors.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

constexpr const char* kWorkersEnv = "TELEPORT_WORKERS";

int parse_workers(const std::string& text, const std::string& origin) {
  if (text == "auto") return 0;
  try {
    std::size_t used = 0;
    const int w = std::stoi(text, &used);
    if (used == text.size() && w >= 1) return w;
  } catch (const std::exception&) {
  }
  throw teleport::cli::ConfigError(origin + ": expected a positive integer or \"auto\", got \"" + text + "\"");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw teleport::cli::ConfigError("output_path: cannot open " + path);
  out << text;
  if (!out) throw teleport::cli::ConfigError("output_path: write failed for " + path);
}

}  // namespace

int main(int argc, char** argv) {
  using teleport::cli::Json;
  CLI::App app{"Many-body teleportation simulator and analytics"};
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> workers;
  std::optional<std::string> out_path;
  app.add_option("--config", config_path, "Experiment JSON file")->required();
  app.add_option("--seed", seed, "Override the 64-bit seed");
  app.add_option("--workers", workers, "Worker count or \"auto\"");
  app.add_option("--out", out_path, "Result CSV path; the manifest goes to <out>.manifest.json");
  app.set_version_flag("--version", TELEPORT_VERSION);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    std::ifstream in(config_path);
    if (!in) throw teleport::cli::ConfigError("--config: cannot open " + config_path);
    Json document;
    try {
      document = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw teleport::cli::ConfigError("--config: " + std::string(e.what()));
    }
    teleport::cli::ExperimentConfig cfg = teleport::cli::parse_config(document);
    if (seed) cfg.seed = *seed;
    if (const char* env = std::getenv(kWorkersEnv)) cfg.workers = parse_workers(env, kWorkersEnv);
    if (workers) cfg.workers = parse_workers(*workers, "--workers");
    if (out_path) cfg.output_path = *out_path;
    const int threads = cfg.workers == 0 ? omp_get_num_procs() : cfg.workers;
    omp_set_num_threads(threads);
    const auto exec = threads > 1 ? teleport::Execution::parallel : teleport::Execution::serial;

    const teleport::cli::RunOutput result = teleport::cli::run_command(cfg, exec);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    Json manifest;
    manifest["config"] = {{"subcommand", cfg.subcommand},
                          {"seed", cfg.seed},
                          {"workers", cfg.workers == 0 ? Json("auto") : Json(cfg.workers)},
                          {"output_path", cfg.output_path},
                          {"parameters", result.resolved}};
    manifest["seed"] = cfg.seed;
    manifest["resolved_workers"] = threads;
    manifest["version"] = TELEPORT_VERSION;
    manifest["wall_time_seconds"] = wall;
    manifest["summary"] = result.summary;

    if (cfg.output_path.empty()) {
      std::cout << result.csv;
      std::cerr << manifest.dump(2) << '\n';
    } else {
      write_file(cfg.output_path, result.csv);
      write_file(cfg.output_path + ".manifest.json", manifest.dump(2) + "\n");
    }
    return kExitOk;
  } catch (const teleport::cli::ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kExitValidation;
  } catch (const teleport::InvalidArgument& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kExitValidation;
  } catch (const teleport::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const teleport::InsufficientData& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}
