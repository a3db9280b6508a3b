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

#include "teleport/evolver.hpp"

#include <algorithm>
#include <numeric>

#include "teleport/clifford.hpp"
#include "teleport/errors.hpp"

namespace teleport {

namespace {
constexpr std::uint8_t kDone = 0x80;
}

Evolver::Evolver(const CircuitSpec& spec, std::uint64_t key, std::vector<PauliString> seeds,
                 EngineOptions options)
    : spec_(spec), key_(key), n_(spec.num_sites()) {
  spec_.validate();
  sparse_ = spec_.dimension == 0 && n_ > options.sparse_threshold;
  scratch_.assign(n_, 0);
  for (auto& p : seeds) {
    for (const auto& e : p.entries()) require(e.site < n_, "operator support outside the system");
    ops_.push_back(p.entries());
  }
}

std::size_t Evolver::gate_index(std::size_t layer, Site first) const {
  return mix_keys(key_, layer, first) % kNumSymplectic2;
}

void Evolver::prepare_layer(std::size_t layer) {
  if (prepared_layer_ == layer || spec_.dimension != 0) {
    prepared_layer_ = layer;
    return;
  }
  Rng rng = make_stream(key_, layer);
  if (!sparse_) {
    if (partner_.size() != n_) partner_.resize(n_);
    std::vector<Site> perm(n_);
    std::iota(perm.begin(), perm.end(), Site{0});
    for (std::size_t i = n_; i > 1; --i) std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
    for (std::size_t k = 0; k + 1 < n_; k += 2) {
      partner_[perm[k]] = perm[k + 1];
      partner_[perm[k + 1]] = perm[k];
    }
  } else {
    // Partners of supported sites are drawn one at a time from the sites not
    // yet matched, which reveals part of a uniform perfect matching.
    sparse_partner_.clear();
    for (const auto& op : ops_)
      for (const auto& e : op) {
        if (sparse_partner_.count(e.site)) continue;
        Site j;
        do {
          j = static_cast<Site>(uniform_below(rng, n_));
        } while (j == e.site || sparse_partner_.count(j));
        sparse_partner_[e.site] = j;
        sparse_partner_[j] = e.site;
      }
  }
  prepared_layer_ = layer;
}

Site Evolver::partner(Site s) const {
  const std::size_t layer = prepared_layer_;
  const bool wrap = spec_.boundary == Boundary::periodic;
  if (spec_.dimension == 0) {
    if (!sparse_) return partner_[s];
    auto it = sparse_partner_.find(s);
    return it == sparse_partner_.end() ? kNone : it->second;
  }
  auto step = [wrap](std::int64_t c, std::size_t phase, std::int64_t extent) -> std::int64_t {
    std::int64_t j = ((c - static_cast<std::int64_t>(phase)) % 2 == 0) ? c + 1 : c - 1;
    if (j < 0 || j >= extent) {
      if (!wrap) return -1;
      j = (j + extent) % extent;
    }
    return j;
  };
  if (spec_.dimension == 1) {
    std::int64_t j = step(s, layer % 2, static_cast<std::int64_t>(n_));
    return j < 0 ? kNone : static_cast<Site>(j);
  }
  const auto lx = static_cast<std::int64_t>(spec_.lx), ly = static_cast<std::int64_t>(spec_.ly);
  const std::int64_t x = s % lx, y = s / lx;
  const std::size_t sub = layer % 4;
  if (sub < 2) {
    std::int64_t j = step(x, sub, lx);
    return j < 0 ? kNone : static_cast<Site>(y * lx + j);
  }
  std::int64_t j = step(y, sub - 2, ly);
  return j < 0 ? kNone : static_cast<Site>(j * lx + x);
}

void Evolver::apply_layer(std::size_t layer) {
  prepare_layer(layer);
  const auto& tables = gate_tables();
  for (auto& op : ops_) {
    next_.clear();
    for (const auto& e : op) scratch_[e.site] = static_cast<std::uint8_t>(e.letter);
    for (const auto& e : op) {
      const Site s = e.site;
      if (scratch_[s] & kDone) continue;
      const Site j = partner(s);
      if (j == kNone) {
        scratch_[s] |= kDone;
        next_.push_back(e);
        continue;
      }
      const Site a = std::min(s, j), b = std::max(s, j);
      const Pauli2 in = static_cast<Pauli2>((scratch_[a] & 3u) | ((scratch_[b] & 3u) << 2));
      const Pauli2 out = tables[gate_index(layer, a)][in];
      scratch_[a] |= kDone;
      scratch_[b] |= kDone;
      if (first_letter(out) != Letter::I) next_.push_back({a, first_letter(out)});
      if (second_letter(out) != Letter::I) next_.push_back({b, second_letter(out)});
    }
    for (const auto& e : op) {
      scratch_[e.site] = 0;
      const Site j = partner(e.site);
      if (j != kNone) scratch_[j] = 0;
    }
    op.swap(next_);
  }
}

void Evolver::step() {
  const std::size_t lps = static_cast<std::size_t>(spec_.layers_per_step());
  for (std::size_t k = 0; k < lps; ++k) apply_layer(static_cast<std::size_t>(t_) * lps + k);
  ++t_;
}

void Evolver::advance_to(int t) {
  require(t >= t_, "cannot evolve backwards");
  while (t_ < t) step();
}

std::size_t Evolver::k_size(std::size_t op, const std::vector<std::uint8_t>& mask) const {
  std::size_t c = 0;
  for (const auto& e : ops_[op]) c += mask[e.site];
  return c;
}

PauliString Evolver::snapshot(std::size_t op) const { return PauliString::from_entries(ops_[op]); }

std::vector<SitePair> Evolver::layer_pairs(std::size_t layer) {
  require(!sparse_, "layer_pairs is only available for dense layers");
  if (spec_.dimension != 0) return brick_layer(spec_, layer);
  prepare_layer(layer);
  std::vector<SitePair> out;
  for (Site s = 0; s < n_; ++s)
    if (s < partner_[s]) out.emplace_back(s, partner_[s]);
  return out;
}

}  // namespace teleport
