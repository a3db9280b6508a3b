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
#include <functional>
#include <iosfwd>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "teleport/pauli.hpp"
#include "teleport/rng.hpp"

namespace teleport {

enum class Boundary { open, periodic };

enum class Execution { serial, parallel };

/// Random-circuit geometry. For dimension 0 and 1 only lx is used. depth
/// counts time steps; one step is a full brick period (2 layers in 1D,
/// 4 sub-layers in 2D) or a single matching in 0D.
struct CircuitSpec {
  int dimension = 1;
  std::size_t lx = 0;
  std::size_t ly = 1;
  int depth = 0;
  Boundary boundary = Boundary::open;
  std::uint64_t seed = 0;

  std::size_t num_sites() const { return dimension == 2 ? lx * ly : lx; }
  int layers_per_step() const { return dimension == 2 ? 4 : (dimension == 1 ? 2 : 1); }
  void validate() const;
};

using SitePair = std::pair<Site, Site>;

struct LayerSchedule {
  std::vector<std::vector<SitePair>> layers;
  int layers_per_step = 1;
};

/// Pairs of one brick sub-layer, each ordered (min, max).
std::vector<SitePair> brick_layer(const CircuitSpec& spec, std::size_t layer);

/// Uniform perfect matching: random permutation, consecutive pairing.
std::vector<SitePair> random_matching(std::size_t n, Rng& rng);

/// depth * layers_per_step layers. Brick layouts ignore rng.
LayerSchedule build_layout(const CircuitSpec& spec, Rng& rng);

using GateChooser = std::function<std::size_t(std::size_t layer, SitePair pair)>;

/// Straightforward evolution through a materialized schedule: one gate per
/// pair per layer, drawn with sample_gate. Snapshot keys are time steps.
std::map<int, PauliString> evolve(const PauliString& p0, const LayerSchedule& schedule, Rng& rng,
                                  const std::set<int>& record_at);

/// Same, with the gate of every pair given explicitly.
std::map<int, PauliString> evolve(const PauliString& p0, const LayerSchedule& schedule,
                                  const GateChooser& gates, const std::set<int>& record_at);

/// Logical Pauli triple seeded on a block of sites.
struct EncodedTriple {
  PauliString x, z, y;
};

/// Every site of the block carries a uniformly random assignment of the
/// letters {X, Y, Z} to the logical X, Z, Y. For odd block length the three
/// strings pairwise anticommute and x * z = y up to phase.
EncodedTriple encoded_triple(const std::vector<Site>& block, Rng& rng);

bool is_anticommuting_triple(const PauliString& a, const PauliString& b, const PauliString& c);

struct SubsystemSpec {
  SelectionKind kind = SelectionKind::all;
  std::size_t k = 0;
  Site start = 0;
};

/// Draw order is kept in `order` so that nested prefixes give nested subsystems.
struct DrawnSubsystem {
  SiteSet set;
  std::vector<Site> order;
};

DrawnSubsystem draw_subsystem(const SubsystemSpec& spec, std::size_t n, Rng& rng);

struct SizeTraceRow {
  int t = 0;
  double mean_size = 0;
  double size_width = 0;
  double mean_k_size = 0;
  double k_size_width = 0;
};

struct SizeTrace {
  std::vector<SizeTraceRow> rows;
  std::size_t n_realizations = 0;
  std::size_t num_sites = 0;
};

struct SizeTraceSpec {
  CircuitSpec circuit;
  std::vector<std::vector<Site>> seed_blocks;
  SubsystemSpec subsystem;
  std::size_t realizations = 1;
  int stride = 1;
};

/// Sizes of the three logical letters of every seed block, pooled over
/// realizations. Widths are sample standard deviations.
SizeTrace size_trace(const SizeTraceSpec& spec, Execution exec = Execution::parallel);

void write_csv(std::ostream& out, const SizeTrace& trace);

/// Realization r draws its subsystem and encodings from this stream.
Rng realization_stream(std::uint64_t seed, std::size_t r);

/// Key of the circuit instance of realization r.
std::uint64_t circuit_key(std::uint64_t seed, std::size_t r);

}  // namespace teleport
