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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "teleport/rng.hpp"

namespace teleport {

using Site = std::uint32_t;

/// Single-qubit Pauli modulo phase. Bit 0 is the X component, bit 1 the Z
/// component, so the phase-free product is XOR.
enum class Letter : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline Letter operator*(Letter a, Letter b) {
  return static_cast<Letter>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}

char letter_char(Letter l);
Letter letter_from_char(char c);

struct PauliEntry {
  Site site;
  Letter letter;
  bool operator==(const PauliEntry&) const = default;
};

/// Phase-free Pauli string stored as a site-sorted sparse map. Identity
/// sites are never stored.
class PauliString {
 public:
  PauliString() = default;

  /// Duplicated sites are multiplied together; identity letters are dropped.
  static PauliString from_entries(std::vector<PauliEntry> entries);

  /// Dense text such as "1X11ZX1"; '1', 'I' and '_' denote identity.
  static PauliString parse(std::string_view dense);

  static PauliString single(Site site, Letter letter);

  Letter at(Site site) const;
  std::size_t weight() const { return entries_.size(); }
  bool is_identity() const { return entries_.empty(); }
  const std::vector<PauliEntry>& entries() const { return entries_; }

  /// Dense text over sites [0, n_sites).
  std::string str(std::size_t n_sites) const;

  bool operator==(const PauliString&) const = default;

 private:
  std::vector<PauliEntry> entries_;
};

enum class SelectionKind { random, contiguous, all };

/// Coupled subsystem C: a sorted set of distinct sites below num_sites.
struct SiteSet {
  std::vector<Site> sites;
  SelectionKind kind = SelectionKind::all;
  std::size_t num_sites = 0;

  std::size_t size() const { return sites.size(); }
  bool contains(Site s) const;

  static SiteSet all(std::size_t n);
  static SiteSet contiguous(std::size_t n, Site start, std::size_t k);
  static SiteSet random(std::size_t n, std::size_t k, Rng& rng);
  static SiteSet from_sites(std::size_t n, std::vector<Site> sites);
};

std::size_t size(const PauliString& p);
std::size_t k_size(const PauliString& p, const SiteSet& c);
PauliString multiply(const PauliString& a, const PauliString& b);
std::size_t overlap(const PauliString& a, const PauliString& b);
bool commutes(const PauliString& a, const PauliString& b);

/// Each site i.i.d. uniform over {1, X, Y, Z}.
PauliString random_pauli(std::size_t n_sites, Rng& rng);

/// Exactly s uniformly chosen sites with i.i.d. letters from {X, Y, Z}.
PauliString random_pauli_of_size(std::size_t s, std::size_t n_sites, Rng& rng);

}  // namespace teleport
