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

#pragma once

#include <string>

#include "config.hpp"
#include "teleport/circuits.hpp"

namespace teleport::cli {

struct RunOutput {
  std::string csv;
  /// Parameters with every default filled in.
  Json resolved = Json::object();
  /// Subcommand-specific diagnostics for the manifest.
  Json summary = Json::object();
};

/// Runs one subcommand. Throws ConfigError for invalid parameters.
RunOutput run_command(const ExperimentConfig& config, Execution exec);

}  // namespace teleport::cli
