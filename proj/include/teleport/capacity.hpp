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
#include <iosfwd>
#include <optional>
#include <vector>

#include "teleport/circuits.hpp"
#include "teleport/fidelity.hpp"

namespace teleport {

/// One coupled-subsystem size with its own search grids.
struct CapacityPoint {
  std::size_t k = 0;
  std::vector<std::size_t> n_grid;
  std::vector<int> t_grid;
  std::vector<double> g_grid;
};

struct CapacitySweepSpec {
  std::vector<CapacityPoint> points;
  double epsilon_th = 0.07;
  std::size_t p = 101;
  std::size_t num_sites = 1000000;
  int dimension = 0;
  std::size_t realizations = 20;
  std::size_t qu_samples = 100;
  std::uint64_t seed = 0;

  void validate() const;
};

struct OptimalFidelity {
  int t = 0;
  double g = 0;
  double f = 0;
  double std_error = 0;
};

/// Grid argmax of the marginal fidelity for row ni of the table; ties go to
/// the earliest time, then the first g.
OptimalFidelity optimize_fidelity(const FidelityTable& table, std::size_t ni);

/// Least-squares line log(1 - F) = slope * n + intercept and its crossing
/// with log(epsilon). The crossing is reported only when the grid brackets it.
struct ThresholdFit {
  double slope = 0;
  double intercept = 0;
  bool bracketed = false;
  std::optional<double> n_max;
};

ThresholdFit fit_threshold(const std::vector<double>& n, const std::vector<double>& fidelity, double epsilon);

struct CapacityRow {
  std::size_t k = 0;
  ThresholdFit fit;
  /// Optimum at the grid n closest to the crossing.
  OptimalFidelity at_crossing;
  std::vector<std::size_t> n_grid;
  std::vector<OptimalFidelity> optima;
  /// True when every grid fidelity stays above the threshold.
  bool unbounded_in_grid = false;
};

struct CapacityResult {
  std::vector<CapacityRow> rows;
  /// n_max = c K through the origin over rows with a crossing.
  double c = 0;
  double r2 = 0;
  std::size_t fitted_rows = 0;
};

/// Optimal marginal fidelity over (t, g) for each n and K, then the threshold
/// crossing per K. K-subsystems are random; encoded qubits sit on
/// consecutive p-site blocks.
CapacityResult capacity_sweep(const CapacitySweepSpec& spec, Execution exec = Execution::parallel);

/// Seed of the circuits for the i-th K of a sweep.
std::uint64_t capacity_seed(std::uint64_t seed, std::size_t index);

/// Columns K, n_max, slope, intercept, t_star, g_star; n_max empty when unbounded.
void write_capacity_csv(std::ostream& out, const CapacityResult& result);

}  // namespace teleport
