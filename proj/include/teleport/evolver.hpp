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

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "teleport/circuits.hpp"
#include "teleport/pauli.hpp"

namespace teleport {

struct EngineOptions {
  /// 0D systems larger than this draw partners only for supported sites.
  std::size_t sparse_threshold = std::size_t{1} << 24;
};

/// Evolves a set of Pauli strings through one realization of a random
/// circuit. Layers are generated on demand from `key`; the gate on a pair is
/// a hash of (key, layer, first site), so every tracked operator sees the
/// same circuit. Cost per layer is linear in the total support.
class Evolver {
 public:
  Evolver(const CircuitSpec& spec, std::uint64_t key, std::vector<PauliString> seeds,
          EngineOptions options = {});

  void step();
  void advance_to(int t);
  int time() const { return t_; }

  std::size_t num_operators() const { return ops_.size(); }
  std::size_t size(std::size_t op) const { return ops_[op].size(); }
  std::size_t k_size(std::size_t op, const std::vector<std::uint8_t>& mask) const;
  const std::vector<PauliEntry>& entries(std::size_t op) const { return ops_[op]; }
  PauliString snapshot(std::size_t op) const;

  std::size_t gate_index(std::size_t layer, Site first) const;

  /// Pairs of a dense layer, for cross-checks against evolve().
  std::vector<SitePair> layer_pairs(std::size_t layer);

  bool sparse_mode() const { return sparse_; }

 private:
  static constexpr Site kNone = ~Site{0};

  void prepare_layer(std::size_t layer);
  Site partner(Site s) const;
  void apply_layer(std::size_t layer);

  CircuitSpec spec_;
  std::uint64_t key_;
  std::size_t n_;
  bool sparse_ = false;
  int t_ = 0;
  std::vector<std::vector<PauliEntry>> ops_;
  std::vector<PauliEntry> next_;
  std::vector<std::uint8_t> scratch_;
  std::vector<Site> partner_;
  std::unordered_map<Site, Site> sparse_partner_;
  std::size_t prepared_layer_ = ~std::size_t{0};
};

}  // namespace teleport
