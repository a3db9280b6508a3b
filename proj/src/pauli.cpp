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

#include "teleport/pauli.hpp"

#include <algorithm>

#include "teleport/errors.hpp"

namespace teleport {

char letter_char(Letter l) {
  switch (l) {
    case Letter::I: return '1';
    case Letter::X: return 'X';
    case Letter::Z: return 'Z';
    case Letter::Y: return 'Y';
  }
  return '?';
}

Letter letter_from_char(char c) {
  switch (c) {
    case '1': case 'I': case '_': return Letter::I;
    case 'X': return Letter::X;
    case 'Y': return Letter::Y;
    case 'Z': return Letter::Z;
    default: throw InvalidArgument(std::string("not a Pauli letter: ") + c);
  }
}

PauliString PauliString::from_entries(std::vector<PauliEntry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const PauliEntry& a, const PauliEntry& b) { return a.site < b.site; });
  PauliString out;
  out.entries_.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size();) {
    Letter acc = Letter::I;
    std::size_t j = i;
    for (; j < entries.size() && entries[j].site == entries[i].site; ++j) acc = acc * entries[j].letter;
    if (acc != Letter::I) out.entries_.push_back({entries[i].site, acc});
    i = j;
  }
  return out;
}

PauliString PauliString::parse(std::string_view dense) {
  std::vector<PauliEntry> e;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    Letter l = letter_from_char(dense[i]);
    if (l != Letter::I) e.push_back({static_cast<Site>(i), l});
  }
  PauliString out;
  out.entries_ = std::move(e);
  return out;
}

PauliString PauliString::single(Site site, Letter letter) {
  return from_entries({{site, letter}});
}

Letter PauliString::at(Site site) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), site,
                             [](const PauliEntry& e, Site s) { return e.site < s; });
  return (it != entries_.end() && it->site == site) ? it->letter : Letter::I;
}

std::string PauliString::str(std::size_t n_sites) const {
  std::string s(n_sites, '1');
  for (const auto& e : entries_)
    if (e.site < n_sites) s[e.site] = letter_char(e.letter);
  return s;
}

bool SiteSet::contains(Site s) const { return std::binary_search(sites.begin(), sites.end(), s); }

SiteSet SiteSet::all(std::size_t n) {
  SiteSet c;
  c.kind = SelectionKind::all;
  c.num_sites = n;
  c.sites.resize(n);
  for (std::size_t i = 0; i < n; ++i) c.sites[i] = static_cast<Site>(i);
  return c;
}

SiteSet SiteSet::contiguous(std::size_t n, Site start, std::size_t k) {
  require(k >= 1 && start + k <= n, "contiguous subsystem out of range");
  SiteSet c;
  c.kind = SelectionKind::contiguous;
  c.num_sites = n;
  for (std::size_t i = 0; i < k; ++i) c.sites.push_back(static_cast<Site>(start + i));
  return c;
}

SiteSet SiteSet::random(std::size_t n, std::size_t k, Rng& rng) {
  require(k >= 1 && k <= n, "subsystem size must satisfy 1 <= K <= N");
  SiteSet c;
  c.kind = SelectionKind::random;
  c.num_sites = n;
  c.sites = sample_without_replacement(n, k, rng);
  std::sort(c.sites.begin(), c.sites.end());
  return c;
}

SiteSet SiteSet::from_sites(std::size_t n, std::vector<Site> sites) {
  std::sort(sites.begin(), sites.end());
  require(std::adjacent_find(sites.begin(), sites.end()) == sites.end(), "duplicate site in subsystem");
  require(sites.empty() || sites.back() < n, "subsystem site out of range");
  SiteSet c;
  c.kind = SelectionKind::random;
  c.num_sites = n;
  c.sites = std::move(sites);
  return c;
}

std::size_t size(const PauliString& p) { return p.weight(); }

std::size_t k_size(const PauliString& p, const SiteSet& c) {
  std::size_t count = 0;
  auto a = p.entries().begin();
  auto b = c.sites.begin();
  while (a != p.entries().end() && b != c.sites.end()) {
    if (a->site < *b) {
      ++a;
    } else if (*b < a->site) {
      ++b;
    } else {
      ++count;
      ++a;
      ++b;
    }
  }
  return count;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  std::vector<PauliEntry> out;
  out.reserve(a.weight() + b.weight());
  auto x = a.entries().begin();
  auto y = b.entries().begin();
  while (x != a.entries().end() || y != b.entries().end()) {
    if (y == b.entries().end() || (x != a.entries().end() && x->site < y->site)) {
      out.push_back(*x++);
    } else if (x == a.entries().end() || y->site < x->site) {
      out.push_back(*y++);
    } else {
      Letter l = x->letter * y->letter;
      if (l != Letter::I) out.push_back({x->site, l});
      ++x;
      ++y;
    }
  }
  return PauliString::from_entries(std::move(out));
}

std::size_t overlap(const PauliString& a, const PauliString& b) {
  std::size_t count = 0;
  auto x = a.entries().begin();
  auto y = b.entries().begin();
  while (x != a.entries().end() && y != b.entries().end()) {
    if (x->site < y->site) {
      ++x;
    } else if (y->site < x->site) {
      ++y;
    } else {
      ++count;
      ++x;
      ++y;
    }
  }
  return count;
}

bool commutes(const PauliString& a, const PauliString& b) {
  int parity = 0;
  auto x = a.entries().begin();
  auto y = b.entries().begin();
  while (x != a.entries().end() && y != b.entries().end()) {
    if (x->site < y->site) {
      ++x;
    } else if (y->site < x->site) {
      ++y;
    } else {
      parity ^= (x->letter != y->letter) ? 1 : 0;
      ++x;
      ++y;
    }
  }
  return parity == 0;
}

PauliString random_pauli(std::size_t n_sites, Rng& rng) {
  std::vector<PauliEntry> e;
  for (std::size_t i = 0; i < n_sites; ++i) {
    auto l = static_cast<Letter>(uniform_below(rng, 4));
    if (l != Letter::I) e.push_back({static_cast<Site>(i), l});
  }
  return PauliString::from_entries(std::move(e));
}

PauliString random_pauli_of_size(std::size_t s, std::size_t n_sites, Rng& rng) {
  require(s <= n_sites, "random_pauli_of_size: s exceeds N");
  auto sites = sample_without_replacement(n_sites, s, rng);
  std::vector<PauliEntry> e;
  e.reserve(s);
  for (Site site : sites) e.push_back({site, static_cast<Letter>(1 + uniform_below(rng, 3))});
  return PauliString::from_entries(std::move(e));
}

}  // namespace teleport
