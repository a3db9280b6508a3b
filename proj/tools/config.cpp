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

#include "config.hpp"

#include <algorithm>
#include <limits>

namespace teleport::cli {

namespace {

const Json& empty_object() {
  static const Json e = Json::object();
  return e;
}

}  // namespace

Fields::Fields(const Json& object, std::string path, Json& resolved)
    : object_(&object), path_(std::move(path)), resolved_(&resolved) {
  if (!object.is_object()) throw ConfigError((path_.empty() ? std::string("<root>") : path_) + ": expected an object");
  if (!resolved_->is_object()) *resolved_ = Json::object();
}

std::string Fields::path_of(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

void Fields::fail(const std::string& key, const std::string& what) const { throw ConfigError(path_of(key) + ": " + what); }

bool Fields::has(const std::string& key) const { return object_->contains(key); }

const Json& Fields::lookup(const std::string& key) {
  seen_.push_back(key);
  if (!object_->contains(key)) fail(key, "missing required field");
  return object_->at(key);
}

double Fields::real(const std::string& key) {
  const Json& v = lookup(key);
  if (!v.is_number()) fail(key, "expected a number");
  const double d = v.get<double>();
  (*resolved_)[key] = d;
  return d;
}

double Fields::real(const std::string& key, double fallback) {
  if (!has(key)) {
    seen_.push_back(key);
    (*resolved_)[key] = fallback;
    return fallback;
  }
  return real(key);
}

std::int64_t Fields::integer(const std::string& key) {
  const Json& v = lookup(key);
  if (!v.is_number_integer()) fail(key, "expected an integer");
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
    fail(key, "integer out of range");
  const std::int64_t i = v.get<std::int64_t>();
  (*resolved_)[key] = i;
  return i;
}

std::int64_t Fields::integer(const std::string& key, std::int64_t fallback) {
  if (!has(key)) {
    seen_.push_back(key);
    (*resolved_)[key] = fallback;
    return fallback;
  }
  return integer(key);
}

std::uint64_t Fields::unsigned_integer(const std::string& key) {
  const Json& v = lookup(key);
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0))
    fail(key, "expected a non-negative integer");
  const std::uint64_t u = v.get<std::uint64_t>();
  (*resolved_)[key] = u;
  return u;
}

std::uint64_t Fields::unsigned_integer(const std::string& key, std::uint64_t fallback) {
  if (!has(key)) {
    seen_.push_back(key);
    (*resolved_)[key] = fallback;
    return fallback;
  }
  return unsigned_integer(key);
}

std::string Fields::text(const std::string& key) {
  const Json& v = lookup(key);
  if (!v.is_string()) fail(key, "expected a string");
  const std::string s = v.get<std::string>();
  (*resolved_)[key] = s;
  return s;
}

std::string Fields::text(const std::string& key, const std::string& fallback) {
  if (!has(key)) {
    seen_.push_back(key);
    (*resolved_)[key] = fallback;
    return fallback;
  }
  return text(key);
}

std::string Fields::choice(const std::string& key, const std::vector<std::string>& choices,
                           const std::string& fallback) {
  const std::string s = text(key, fallback);
  if (std::find(choices.begin(), choices.end(), s) == choices.end()) {
    std::string list;
    for (const auto& c : choices) list += (list.empty() ? "" : ", ") + c;
    fail(key, "expected one of {" + list + "}, got \"" + s + "\"");
  }
  return s;
}

std::vector<double> Fields::reals(const std::string& key) {
  const Json& v = lookup(key);
  if (!v.is_array()) fail(key, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) fail(key + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(v[i].get<double>());
  }
  (*resolved_)[key] = out;
  return out;
}

std::vector<std::int64_t> Fields::integers(const std::string& key) {
  const Json& v = lookup(key);
  if (!v.is_array()) fail(key, "expected an array of integers");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer()) fail(key + "[" + std::to_string(i) + "]", "expected an integer");
    out.push_back(v[i].get<std::int64_t>());
  }
  (*resolved_)[key] = out;
  return out;
}

std::vector<std::int64_t> Fields::integers(const std::string& key, const std::vector<std::int64_t>& fallback) {
  if (!has(key)) {
    seen_.push_back(key);
    (*resolved_)[key] = fallback;
    return fallback;
  }
  return integers(key);
}

Fields Fields::object(const std::string& key, bool optional) {
  if (!has(key)) {
    if (!optional) fail(key, "missing required field");
    seen_.push_back(key);
    Json& slot = (*resolved_)[key];
    slot = Json::object();
    return Fields(empty_object(), path_of(key), slot);
  }
  const Json& v = lookup(key);
  if (!v.is_object()) fail(key, "expected an object");
  return Fields(v, path_of(key), (*resolved_)[key]);
}

std::vector<Fields> Fields::objects(const std::string& key) {
  const Json& v = lookup(key);
  if (!v.is_array()) fail(key, "expected an array of objects");
  Json& slot = (*resolved_)[key];
  slot = Json::array();
  for (std::size_t i = 0; i < v.size(); ++i) slot.push_back(Json::object());
  std::vector<Fields> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.emplace_back(v[i], path_of(key) + "[" + std::to_string(i) + "]", slot[i]);
  return out;
}

void Fields::finish() const {
  for (const auto& [key, value] : object_->items())
    if (std::find(seen_.begin(), seen_.end(), key) == seen_.end()) fail(key, "unknown field");
}

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"ruc-size", "ruc-fidelity",  "capacity", "syk-correlator",
                                              "syk-winding", "stringy", "bound", "overlap-oracle"};
  return names;
}

ExperimentConfig parse_config(const Json& document) {
  Json resolved;
  Fields top(document, "", resolved);
  ExperimentConfig cfg;
  cfg.subcommand = top.choice("subcommand", subcommands(), "");
  cfg.seed = top.unsigned_integer("seed", 0);
  if (top.has("workers") && document.at("workers").is_string()) {
    if (top.text("workers") != "auto") top.fail("workers", "expected a positive integer or \"auto\"");
    cfg.workers = 0;
  } else {
    const std::int64_t w = top.integer("workers", 1);
    if (w < 1) top.fail("workers", "expected a positive integer or \"auto\"");
    cfg.workers = static_cast<int>(w);
  }
  cfg.output_path = top.text("output_path", "");
  if (!document.contains("parameters")) top.fail("parameters", "missing required field");
  if (!document.at("parameters").is_object()) top.fail("parameters", "expected an object");
  static_cast<void>(top.object("parameters"));
  cfg.parameters = document.at("parameters");
  top.finish();
  return cfg;
}

}  // namespace teleport::cli
