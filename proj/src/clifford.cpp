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

#include "teleport/clifford.hpp"

#include <algorithm>

#include "teleport/errors.hpp"

namespace teleport {

int symplectic_form(Pauli2 a, Pauli2 b) {
  int x1a = a & 1, z1a = (a >> 1) & 1, x2a = (a >> 2) & 1, z2a = (a >> 3) & 1;
  int x1b = b & 1, z1b = (b >> 1) & 1, x2b = (b >> 2) & 1, z2b = (b >> 3) & 1;
  return ((x1a & z1b) ^ (z1a & x1b) ^ (x2a & z2b) ^ (z2a & x2b)) & 1;
}

std::uint16_t SymplecticGate2::encoding() const {
  return static_cast<std::uint16_t>((images[0] << 12) | (images[1] << 8) | (images[2] << 4) | images[3]);
}

Pauli2 SymplecticGate2::map(Pauli2 v) const {
  Pauli2 out = 0;
  for (int k = 0; k < 4; ++k)
    if (v & (1u << k)) out ^= images[k];
  return out;
}

bool SymplecticGate2::is_symplectic() const {
  static constexpr Pauli2 gens[4] = {1, 2, 4, 8};
  for (int a = 0; a < 4; ++a) {
    if (images[a] == 0) return false;
    for (int b = a + 1; b < 4; ++b)
      if (symplectic_form(images[a], images[b]) != symplectic_form(gens[a], gens[b])) return false;
  }
  return true;
}

SymplecticGate2 SymplecticGate2::identity() { return SymplecticGate2{{1, 2, 4, 8}}; }

const std::vector<SymplecticGate2>& enumerate_symplectic2() {
  static const std::vector<SymplecticGate2> table = [] {
    std::vector<SymplecticGate2> out;
    for (Pauli2 a = 1; a < 16; ++a)
      for (Pauli2 b = 1; b < 16; ++b) {
        if (symplectic_form(a, b) != 1) continue;
        for (Pauli2 c = 1; c < 16; ++c) {
          if (symplectic_form(a, c) || symplectic_form(b, c)) continue;
          for (Pauli2 d = 1; d < 16; ++d) {
            SymplecticGate2 g{{a, b, c, d}};
            if (g.is_symplectic()) out.push_back(g);
          }
        }
      }
    std::sort(out.begin(), out.end(),
              [](const SymplecticGate2& x, const SymplecticGate2& y) { return x.encoding() < y.encoding(); });
    return out;
  }();
  return table;
}

const std::vector<std::array<Pauli2, 16>>& gate_tables() {
  static const std::vector<std::array<Pauli2, 16>> tables = [] {
    const auto& gates = enumerate_symplectic2();
    std::vector<std::array<Pauli2, 16>> out(gates.size());
    for (std::size_t g = 0; g < gates.size(); ++g)
      for (Pauli2 v = 0; v < 16; ++v) out[g][v] = gates[g].map(v);
    return out;
  }();
  return tables;
}

std::size_t sample_gate_index(Rng& rng) { return uniform_below(rng, kNumSymplectic2); }

SymplecticGate2 sample_gate(Rng& rng) { return enumerate_symplectic2()[sample_gate_index(rng)]; }

PauliString apply_gate(const SymplecticGate2& g, const PauliString& p, Site i, Site j) {
  if (i == j) throw InvalidArgument("apply_gate: sites must differ");
  Pauli2 in = pack2(p.at(i), p.at(j));
  if (in == 0) return p;
  Pauli2 out = g.map(in);
  std::vector<PauliEntry> e;
  e.reserve(p.weight() + 2);
  for (const auto& entry : p.entries())
    if (entry.site != i && entry.site != j) e.push_back(entry);
  if (first_letter(out) != Letter::I) e.push_back({i, first_letter(out)});
  if (second_letter(out) != Letter::I) e.push_back({j, second_letter(out)});
  return PauliString::from_entries(std::move(e));
}

}  // namespace teleport
