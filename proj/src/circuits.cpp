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

#include "teleport/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "teleport/clifford.hpp"
#include "teleport/csv.hpp"
#include "teleport/errors.hpp"
#include "teleport/evolver.hpp"

namespace teleport {

void CircuitSpec::validate() const {
  require(dimension >= 0 && dimension <= 2, "dimension must be 0, 1 or 2");
  require(depth >= 0, "depth must be non-negative");
  if (dimension == 2) {
    require(lx >= 2 && ly >= 2, "2D extents must be at least 2");
    if (boundary == Boundary::periodic)
      require(lx % 2 == 0 && ly % 2 == 0, "periodic 2D lattice needs even extents");
  } else {
    require(lx >= 2, "need at least 2 sites");
    if (dimension == 0) require(lx % 2 == 0, "0D pairing needs an even number of sites");
    if (dimension == 1 && boundary == Boundary::periodic)
      require(lx % 2 == 0, "periodic chain needs an even number of sites");
  }
  require(num_sites() < (std::size_t{1} << 32) - 1, "system too large for 32-bit site indices");
}

std::vector<SitePair> brick_layer(const CircuitSpec& spec, std::size_t layer) {
  std::vector<SitePair> out;
  auto add = [&out](Site a, Site b) { out.emplace_back(std::min(a, b), std::max(a, b)); };
  const bool wrap = spec.boundary == Boundary::periodic;
  if (spec.dimension == 1) {
    const std::size_t n = spec.lx;
    const std::size_t parity = layer % 2;
    for (std::size_t i = parity; i + 1 < n; i += 2) add(static_cast<Site>(i), static_cast<Site>(i + 1));
    if (wrap && parity == 1) add(static_cast<Site>(n - 1), 0);
    return out;
  }
  require(spec.dimension == 2, "brick layers exist only in 1D and 2D");
  const std::size_t lx = spec.lx, ly = spec.ly;
  const std::size_t sub = layer % 4;
  const std::size_t phase = sub % 2;
  if (sub < 2) {
    for (std::size_t y = 0; y < ly; ++y) {
      for (std::size_t x = phase; x + 1 < lx; x += 2) add(static_cast<Site>(y * lx + x), static_cast<Site>(y * lx + x + 1));
      if (wrap && phase == 1) add(static_cast<Site>(y * lx + lx - 1), static_cast<Site>(y * lx));
    }
  } else {
    for (std::size_t x = 0; x < lx; ++x) {
      for (std::size_t y = phase; y + 1 < ly; y += 2) add(static_cast<Site>(y * lx + x), static_cast<Site>((y + 1) * lx + x));
      if (wrap && phase == 1) add(static_cast<Site>((ly - 1) * lx + x), static_cast<Site>(x));
    }
  }
  return out;
}

std::vector<SitePair> random_matching(std::size_t n, Rng& rng) {
  require(n % 2 == 0, "perfect matching needs an even number of sites");
  std::vector<Site> perm(n);
  std::iota(perm.begin(), perm.end(), Site{0});
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
  std::vector<SitePair> out;
  out.reserve(n / 2);
  for (std::size_t k = 0; k + 1 < n; k += 2) out.emplace_back(std::min(perm[k], perm[k + 1]), std::max(perm[k], perm[k + 1]));
  return out;
}

LayerSchedule build_layout(const CircuitSpec& spec, Rng& rng) {
  spec.validate();
  LayerSchedule s;
  s.layers_per_step = spec.layers_per_step();
  const std::size_t total = static_cast<std::size_t>(spec.depth) * s.layers_per_step;
  for (std::size_t l = 0; l < total; ++l)
    s.layers.push_back(spec.dimension == 0 ? random_matching(spec.num_sites(), rng) : brick_layer(spec, l));
  return s;
}

std::map<int, PauliString> evolve(const PauliString& p0, const LayerSchedule& schedule,
                                  const GateChooser& gates, const std::set<int>& record_at) {
  std::map<int, PauliString> out;
  PauliString p = p0;
  const auto& table = enumerate_symplectic2();
  if (record_at.count(0)) out[0] = p;
  for (std::size_t l = 0; l < schedule.layers.size(); ++l) {
    for (const auto& pair : schedule.layers[l]) p = apply_gate(table[gates(l, pair)], p, pair.first, pair.second);
    if ((l + 1) % schedule.layers_per_step == 0) {
      int t = static_cast<int>((l + 1) / schedule.layers_per_step);
      if (record_at.count(t)) out[t] = p;
    }
  }
  return out;
}

std::map<int, PauliString> evolve(const PauliString& p0, const LayerSchedule& schedule, Rng& rng,
                                  const std::set<int>& record_at) {
  return evolve(p0, schedule, [&rng](std::size_t, SitePair) { return sample_gate_index(rng); }, record_at);
}

EncodedTriple encoded_triple(const std::vector<Site>& block, Rng& rng) {
  static constexpr Letter perms[6][3] = {
      {Letter::X, Letter::Z, Letter::Y}, {Letter::X, Letter::Y, Letter::Z}, {Letter::Y, Letter::X, Letter::Z},
      {Letter::Y, Letter::Z, Letter::X}, {Letter::Z, Letter::X, Letter::Y}, {Letter::Z, Letter::Y, Letter::X}};
  std::vector<PauliEntry> x, z, y;
  for (Site s : block) {
    const auto& p = perms[uniform_below(rng, 6)];
    x.push_back({s, p[0]});
    z.push_back({s, p[1]});
    y.push_back({s, p[2]});
  }
  return {PauliString::from_entries(std::move(x)), PauliString::from_entries(std::move(z)),
          PauliString::from_entries(std::move(y))};
}

bool is_anticommuting_triple(const PauliString& a, const PauliString& b, const PauliString& c) {
  if (commutes(a, b) || commutes(b, c) || commutes(a, c)) return false;
  return multiply(a, b) == c;
}

DrawnSubsystem draw_subsystem(const SubsystemSpec& spec, std::size_t n, Rng& rng) {
  DrawnSubsystem d;
  switch (spec.kind) {
    case SelectionKind::all:
      d.set = SiteSet::all(n);
      d.order = d.set.sites;
      break;
    case SelectionKind::contiguous:
      d.set = SiteSet::contiguous(n, spec.start, spec.k);
      d.order = d.set.sites;
      break;
    case SelectionKind::random:
      require(spec.k >= 1 && spec.k <= n, "subsystem size must satisfy 1 <= K <= N");
      d.order = sample_without_replacement(n, spec.k, rng);
      d.set = SiteSet::from_sites(n, d.order);
      break;
  }
  return d;
}

Rng realization_stream(std::uint64_t seed, std::size_t r) { return make_stream(seed, 2 * r); }

std::uint64_t circuit_key(std::uint64_t seed, std::size_t r) { return mix_keys(seed, 2 * r + 1, 0x5ca1ab1eULL); }

namespace {

struct TraceSlots {
  std::vector<int> times;
  std::size_t ops = 0;
};

std::vector<double> trace_realization(const SizeTraceSpec& spec, const TraceSlots& slots, std::size_t r) {
  const std::size_t n = spec.circuit.num_sites();
  Rng rng = realization_stream(spec.circuit.seed, r);
  DrawnSubsystem sub = draw_subsystem(spec.subsystem, n, rng);
  std::vector<std::uint8_t> mask(n, 0);
  for (Site s : sub.set.sites) mask[s] = 1;
  std::vector<PauliString> seeds;
  for (const auto& block : spec.seed_blocks) {
    EncodedTriple e = encoded_triple(block, rng);
    seeds.push_back(e.x);
    seeds.push_back(e.y);
    seeds.push_back(e.z);
  }
  Evolver ev(spec.circuit, circuit_key(spec.circuit.seed, r), std::move(seeds));
  std::vector<double> out(slots.times.size() * slots.ops * 2);
  for (std::size_t ti = 0; ti < slots.times.size(); ++ti) {
    ev.advance_to(slots.times[ti]);
    for (std::size_t o = 0; o < slots.ops; ++o) {
      out[(ti * slots.ops + o) * 2] = static_cast<double>(ev.size(o));
      out[(ti * slots.ops + o) * 2 + 1] = static_cast<double>(ev.k_size(o, mask));
    }
  }
  return out;
}

}  // namespace

SizeTrace size_trace(const SizeTraceSpec& spec, Execution exec) {
  spec.circuit.validate();
  require(spec.realizations >= 1, "size_trace needs at least one realization");
  require(!spec.seed_blocks.empty(), "size_trace needs at least one seed block");
  require(spec.stride >= 1, "stride must be positive");
  const std::size_t n = spec.circuit.num_sites();
  for (const auto& b : spec.seed_blocks)
    for (Site s : b) require(s < n, "seed site out of range");

  TraceSlots slots;
  for (int t = 0; t <= spec.circuit.depth; t += spec.stride) slots.times.push_back(t);
  if (slots.times.back() != spec.circuit.depth) slots.times.push_back(spec.circuit.depth);
  slots.ops = 3 * spec.seed_blocks.size();

  const auto R = static_cast<std::int64_t>(spec.realizations);
  std::vector<std::vector<double>> per(spec.realizations);
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t r = 0; r < R; ++r) per[r] = trace_realization(spec, slots, static_cast<std::size_t>(r));
  } else {
    for (std::int64_t r = 0; r < R; ++r) per[r] = trace_realization(spec, slots, static_cast<std::size_t>(r));
  }

  SizeTrace trace;
  trace.n_realizations = spec.realizations;
  trace.num_sites = n;
  const double count = static_cast<double>(spec.realizations * slots.ops);
  for (std::size_t ti = 0; ti < slots.times.size(); ++ti) {
    double s1 = 0, k1 = 0;
    for (const auto& v : per)
      for (std::size_t o = 0; o < slots.ops; ++o) {
        s1 += v[(ti * slots.ops + o) * 2];
        k1 += v[(ti * slots.ops + o) * 2 + 1];
      }
    const double ms = s1 / count, mk = k1 / count;
    double s2 = 0, k2 = 0;
    for (const auto& v : per)
      for (std::size_t o = 0; o < slots.ops; ++o) {
        const double ds = v[(ti * slots.ops + o) * 2] - ms;
        const double dk = v[(ti * slots.ops + o) * 2 + 1] - mk;
        s2 += ds * ds;
        k2 += dk * dk;
      }
    const double denom = count > 1 ? count - 1 : 1;
    trace.rows.push_back({slots.times[ti], ms, std::sqrt(s2 / denom), mk, std::sqrt(k2 / denom)});
  }
  return trace;
}

void write_csv(std::ostream& out, const SizeTrace& trace) {
  out << "t,mean_size,size_width,mean_k_size,k_size_width,n_realizations\n";
  for (const auto& r : trace.rows)
    out << r.t << ',' << fmt_real(r.mean_size) << ',' << fmt_real(r.size_width) << ',' << fmt_real(r.mean_k_size)
        << ',' << fmt_real(r.k_size_width) << ',' << trace.n_realizations << '\n';
}

}  // namespace teleport
