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

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "teleport/pauli.hpp"
#include "teleport/rng.hpp"

namespace teleport {

/// Phase-free two-qubit Pauli as a 4-bit symplectic vector:
/// bit 0 = x1, bit 1 = z1, bit 2 = x2, bit 3 = z2.
using Pauli2 = std::uint8_t;

inline Pauli2 pack2(Letter a, Letter b) {
  return static_cast<Pauli2>(static_cast<std::uint8_t>(a) | (static_cast<std::uint8_t>(b) << 2));
}
inline Letter first_letter(Pauli2 v) { return static_cast<Letter>(v & 3u); }
inline Letter second_letter(Pauli2 v) { return static_cast<Letter>((v >> 2) & 3u); }

/// Symplectic inner product; 1 iff the two Paulis anticommute.
int symplectic_form(Pauli2 a, Pauli2 b);

/// Two-qubit Clifford modulo Pauli phases, given by the images of
/// X1, Z1, X2, Z2.
struct SymplecticGate2 {
  std::array<Pauli2, 4> images{};

  /// images[0] in the top nibble down to images[3] in the bottom nibble.
  std::uint16_t encoding() const;
  Pauli2 map(Pauli2 v) const;
  bool is_symplectic() const;
  bool operator==(const SymplecticGate2&) const = default;

  static SymplecticGate2 identity();
};

/// All 720 elements in ascending order of encoding(). Built once and cached.
const std::vector<SymplecticGate2>& enumerate_symplectic2();

/// Image lookup table for every enumerated gate: row g maps Pauli2 -> Pauli2.
const std::vector<std::array<Pauli2, 16>>& gate_tables();

constexpr std::size_t kNumSymplectic2 = 720;

std::size_t sample_gate_index(Rng& rng);
SymplecticGate2 sample_gate(Rng& rng);

/// Applies g with qubit 1 on site i and qubit 2 on site j.
PauliString apply_gate(const SymplecticGate2& g, const PauliString& p, Site i, Site j);

}  // namespace teleport
