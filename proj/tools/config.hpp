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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace teleport::cli {

using Json = nlohmann::json;

/// Invalid configuration; the message starts with the offending field path.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Strict view of a JSON object. Every read is echoed into the resolved
/// record, defaults included; finish() rejects keys that were never read.
class Fields {
 public:
  Fields(const Json& object, std::string path, Json& resolved);

  bool has(const std::string& key) const;

  double real(const std::string& key);
  double real(const std::string& key, double fallback);
  std::int64_t integer(const std::string& key);
  std::int64_t integer(const std::string& key, std::int64_t fallback);
  std::uint64_t unsigned_integer(const std::string& key);
  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback);
  std::string text(const std::string& key);
  std::string text(const std::string& key, const std::string& fallback);
  /// One of `choices`.
  std::string choice(const std::string& key, const std::vector<std::string>& choices, const std::string& fallback);
  std::vector<double> reals(const std::string& key);
  std::vector<std::int64_t> integers(const std::string& key);
  std::vector<std::int64_t> integers(const std::string& key, const std::vector<std::int64_t>& fallback);

  /// Nested object; empty when absent and `optional`.
  Fields object(const std::string& key, bool optional = false);
  /// Array of objects.
  std::vector<Fields> objects(const std::string& key);

  void finish() const;
  std::string path_of(const std::string& key) const;
  [[noreturn]] void fail(const std::string& key, const std::string& what) const;

 private:
  const Json& lookup(const std::string& key);

  const Json* object_;
  std::string path_;
  Json* resolved_;
  std::vector<std::string> seen_;
};

struct ExperimentConfig {
  std::string subcommand;
  std::uint64_t seed = 0;
  /// 0 means one worker per available processor.
  int workers = 1;
  std::string output_path;
  Json parameters = Json::object();
};

/// Top-level fields: subcommand, seed, workers, output_path, parameters.
ExperimentConfig parse_config(const Json& document);

const std::vector<std::string>& subcommands();

}  // namespace teleport::cli
