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
#include <string>
#include <vector>

#include "teleport/circuits.hpp"
#include "teleport/pauli.hpp"

namespace teleport {

enum class CouplingKind { size, hpr_projector };

struct CouplingSpec {
  CouplingKind kind = CouplingKind::size;
  double g = 0;
  SiteSet c;
};

/// size: g * S_K[Qt] / K + pi * S[Q0].  hpr_projector: pi * [S_K[Qt] = 0] + pi * S[Q0].
/// The pi * S[Q0] term is the sign picked up from decoding with Y on every
/// site and from the transpose.
double phase(const PauliString& q0, const PauliString& qt, const CouplingSpec& coupling);

/// Same phase from the raw counts.
double phase_from_sizes(CouplingKind kind, double g, std::size_t k_size, std::size_t k, std::size_t q0_weight);

struct FidelityResult {
  double value = 0;      // clamped to [0, 1]
  double raw = 0;        // realization mean before clamping
  double std_error = 0;  // standard error over realizations
  std::size_t n_qubits = 0;
  double g = 0;
  int t = 0;
  std::size_t k = 0;
  std::size_t samples = 0;
};

enum class SamplingKind { exhaustive, random };

struct PauliSampling {
  SamplingKind kind = SamplingKind::exhaustive;
  std::size_t count = 0;
};

/// One logical qubit per block. A block of p sites carries the encoded
/// triple of encoded_triple(); p = 1 is the unencoded single-site qubit.
struct TeleportSpec {
  CircuitSpec circuit;
  std::vector<std::vector<Site>> blocks;
  SubsystemSpec subsystem;
  CouplingKind kind = CouplingKind::size;
  std::size_t realizations = 1;
};

/// Results indexed [t][g] or [n][t][g], with the grids echoed.
struct FidelityTable {
  std::vector<std::size_t> n_grid;
  std::vector<int> t_grid;
  std::vector<double> g_grid;
  std::vector<FidelityResult> cells;

  const FidelityResult& at(std::size_t ni, std::size_t ti, std::size_t gi) const {
    return cells[(ni * t_grid.size() + ti) * g_grid.size() + gi];
  }
};

/// |(1/d_A^2) sum_Q e^{i theta_Q}|^2 averaged over realizations, for every
/// (t, g) on the grids. Random sampling always includes the identity with
/// weight 4^-n and averages the drawn non-identity operators for the rest.
FidelityTable epr_fidelity_scan(const TeleportSpec& spec, const std::vector<int>& t_grid,
                                const std::vector<double>& g_grid, const PauliSampling& sampling,
                                Execution exec = Execution::parallel);

/// Marginal fidelity of logical qubit `measured` when n qubits are sent, for
/// every n in n_grid (the first n blocks are used). Random operators on the
/// unmeasured qubits are shared across n, t and g within a realization.
FidelityTable marginal_fidelity_scan(const TeleportSpec& spec, const std::vector<std::size_t>& n_grid,
                                     std::size_t measured, std::size_t qu_samples,
                                     const std::vector<int>& t_grid, const std::vector<double>& g_grid,
                                     Execution exec = Execution::parallel);

/// Single-site qubits on `seed_sites`.
FidelityResult epr_fidelity(const std::vector<Site>& seed_sites, const CircuitSpec& circuit, CouplingKind kind,
                            double g, const SubsystemSpec& subsystem, int t, std::size_t realizations,
                            const PauliSampling& sampling);

/// n qubits encoded on consecutive p-site blocks starting at site 0.
FidelityResult epr_fidelity_encoded(std::size_t p, std::size_t n, const CircuitSpec& circuit, CouplingKind kind,
                                    double g, const SubsystemSpec& subsystem, int t, std::size_t realizations,
                                    const PauliSampling& sampling);

FidelityResult marginal_fidelity(std::size_t n, std::size_t measured, std::size_t p, const CircuitSpec& circuit,
                                 CouplingKind kind, double g, const SubsystemSpec& subsystem, int t,
                                 std::size_t realizations, std::size_t qu_samples = 100);

std::vector<std::vector<Site>> consecutive_blocks(std::size_t p, std::size_t n);

double epr_to_state_fidelity(double f_epr, double d_a);
double state_to_epr_fidelity(double f_state, double d_a);

std::string kind_name(CouplingKind kind);

void write_fidelity_csv_header(std::ostream& out);
void write_fidelity_csv_row(std::ostream& out, const FidelityResult& r, const std::string& kind, std::uint64_t seed);

}  // namespace teleport
