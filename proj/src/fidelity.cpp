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

#include "teleport/fidelity.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <ostream>

#include "teleport/csv.hpp"
#include "teleport/errors.hpp"
#include "teleport/evolver.hpp"

namespace teleport {

double phase_from_sizes(CouplingKind kind, double g, std::size_t k_size, std::size_t k, std::size_t q0_weight) {
  const double pi = std::numbers::pi;
  const double decode = pi * static_cast<double>(q0_weight % 2);
  if (kind == CouplingKind::size) return g * static_cast<double>(k_size) / static_cast<double>(k) + decode;
  return (k_size == 0 ? pi : 0.0) + decode;
}

double phase(const PauliString& q0, const PauliString& qt, const CouplingSpec& coupling) {
  require(coupling.c.size() >= 1, "coupled subsystem must be non-empty");
  return phase_from_sizes(coupling.kind, coupling.g, k_size(qt, coupling.c), coupling.c.size(), size(q0));
}

namespace {

constexpr std::size_t kDenseLookupLimit = std::size_t{1} << 26;

void validate_blocks(const TeleportSpec& spec, std::size_t nblocks) {
  spec.circuit.validate();
  require(spec.realizations >= 1, "need at least one realization");
  require(nblocks >= 1 && nblocks <= spec.blocks.size(), "not enough logical blocks for the requested n");
  const std::size_t n = spec.circuit.num_sites();
  std::vector<Site> all;
  for (std::size_t b = 0; b < nblocks; ++b) {
    require(!spec.blocks[b].empty(), "empty logical block");
    for (Site s : spec.blocks[b]) {
      require(s < n, "logical block outside the system");
      all.push_back(s);
    }
  }
  std::sort(all.begin(), all.end());
  require(std::adjacent_find(all.begin(), all.end()) == all.end(), "logical blocks overlap");
}

/// One realization: circuit, coupled subsystem, encodings, and the current
/// images of the logical X and Z generators restricted to C as bitsets.
class Realization {
 public:
  Realization(const TeleportSpec& spec, std::size_t nblocks, std::size_t r)
      : rng_(realization_stream(spec.circuit.seed, r)) {
    const std::size_t n = spec.circuit.num_sites();
    sub_ = draw_subsystem(spec.subsystem, n, rng_);
    k_ = sub_.order.size();
    words_ = (k_ + 63) / 64;
    if (n <= kDenseLookupLimit) {
      pos_.assign(n, -1);
      for (std::size_t i = 0; i < k_; ++i) pos_[sub_.order[i]] = static_cast<std::int32_t>(i);
    } else {
      for (std::size_t i = 0; i < k_; ++i) lookup_.emplace_back(sub_.order[i], static_cast<std::uint32_t>(i));
      std::sort(lookup_.begin(), lookup_.end());
    }
    std::vector<PauliString> seeds;
    for (std::size_t b = 0; b < nblocks; ++b) {
      EncodedTriple e = encoded_triple(spec.blocks[b], rng_);
      seeds.push_back(e.x);
      seeds.push_back(e.z);
    }
    ev_ = std::make_unique<Evolver>(spec.circuit, circuit_key(spec.circuit.seed, r), std::move(seeds));
    img_.assign(ev_->num_operators() * 2 * words_, 0);
  }

  Rng& rng() { return rng_; }
  std::size_t k() const { return k_; }
  std::size_t words() const { return words_; }

  void advance_and_restrict(int t) {
    ev_->advance_to(t);
    std::fill(img_.begin(), img_.end(), 0);
    for (std::size_t o = 0; o < ev_->num_operators(); ++o) {
      std::uint64_t* x = &img_[o * 2 * words_];
      std::uint64_t* z = x + words_;
      for (const auto& e : ev_->entries(o)) {
        const std::int64_t i = index_of(e.site);
        if (i < 0) continue;
        const auto l = static_cast<std::uint8_t>(e.letter);
        if (l & 1u) x[i >> 6] |= std::uint64_t{1} << (i & 63);
        if (l & 2u) z[i >> 6] |= std::uint64_t{1} << (i & 63);
      }
    }
  }

  /// acc ^= image of letter l on logical qubit q.
  void accumulate(std::vector<std::uint64_t>& acc, std::size_t q, std::uint8_t l) const {
    if (l & 1u) xor_into(acc, &img_[(2 * q) * 2 * words_]);
    if (l & 2u) xor_into(acc, &img_[(2 * q + 1) * 2 * words_]);
  }

  std::size_t k_size_of(const std::vector<std::uint64_t>& acc) const {
    std::size_t c = 0;
    for (std::size_t w = 0; w < words_; ++w) c += static_cast<std::size_t>(std::popcount(acc[w] | acc[words_ + w]));
    return c;
  }

  /// K-size of acc * (letter l on qubit q) without modifying acc.
  std::size_t k_size_with(const std::vector<std::uint64_t>& acc, std::size_t q, std::uint8_t l) const {
    const std::uint64_t* gx = &img_[(2 * q) * 2 * words_];
    const std::uint64_t* gz = &img_[(2 * q + 1) * 2 * words_];
    const bool ux = l & 1u, uz = l & 2u;
    std::size_t c = 0;
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t x = acc[w], z = acc[words_ + w];
      if (ux) {
        x ^= gx[w];
        z ^= gx[words_ + w];
      }
      if (uz) {
        x ^= gz[w];
        z ^= gz[words_ + w];
      }
      c += static_cast<std::size_t>(std::popcount(x | z));
    }
    return c;
  }

 private:
  std::int64_t index_of(Site s) const {
    if (!pos_.empty()) return pos_[s];
    auto it = std::lower_bound(lookup_.begin(), lookup_.end(), std::make_pair(s, std::uint32_t{0}));
    return (it != lookup_.end() && it->first == s) ? static_cast<std::int64_t>(it->second) : -1;
  }

  void xor_into(std::vector<std::uint64_t>& acc, const std::uint64_t* g) const {
    for (std::size_t w = 0; w < 2 * words_; ++w) acc[w] ^= g[w];
  }

  Rng rng_;
  DrawnSubsystem sub_;
  std::size_t k_ = 0;
  std::size_t words_ = 0;
  std::vector<std::int32_t> pos_;
  std::vector<std::pair<Site, std::uint32_t>> lookup_;
  std::unique_ptr<Evolver> ev_;
  std::vector<std::uint64_t> img_;
};

template <typename Body>
void for_realizations(std::size_t count, Execution exec, Body&& body) {
  const auto R = static_cast<std::int64_t>(count);
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t r = 0; r < R; ++r) body(static_cast<std::size_t>(r));
  } else {
    for (std::int64_t r = 0; r < R; ++r) body(static_cast<std::size_t>(r));
  }
}

/// Mean and standard error over realizations, in realization order.
void reduce_cells(const std::vector<std::vector<double>>& per, FidelityTable& table,
                  std::size_t samples_per_realization) {
  const std::size_t cells = per.front().size();
  const double R = static_cast<double>(per.size());
  table.cells.resize(cells);
  const std::size_t tg = table.t_grid.size() * table.g_grid.size();
  for (std::size_t c = 0; c < cells; ++c) {
    double s = 0;
    for (const auto& v : per) s += v[c];
    const double mean = s / R;
    double ss = 0;
    for (const auto& v : per) ss += (v[c] - mean) * (v[c] - mean);
    FidelityResult& out = table.cells[c];
    out.raw = mean;
    out.value = std::clamp(mean, 0.0, 1.0);
    out.std_error = per.size() > 1 ? std::sqrt(ss / (R - 1) / R) : 0.0;
    const std::size_t ni = c / tg;
    const std::size_t ti = (c % tg) / table.g_grid.size();
    const std::size_t gi = c % table.g_grid.size();
    out.n_qubits = table.n_grid[ni];
    out.t = table.t_grid[ti];
    out.g = table.g_grid[gi];
    out.samples = per.size() * samples_per_realization;
  }
}

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

FidelityTable epr_fidelity_scan(const TeleportSpec& spec, const std::vector<int>& t_grid,
                                const std::vector<double>& g_grid, const PauliSampling& sampling,
                                Execution exec) {
  const std::size_t n = spec.blocks.size();
  validate_blocks(spec, n);
  require(!t_grid.empty() && !g_grid.empty(), "grids must be non-empty");
  for (int t : t_grid) require(t >= 0, "times must be non-negative");
  if (sampling.kind == SamplingKind::exhaustive) {
    require(n <= 6, "exhaustive Pauli sums are limited to 4^n <= 4096");
  } else {
    require(sampling.count >= 1, "random sampling needs a positive count");
  }
  FidelityTable table;
  table.n_grid = {n};
  table.t_grid = sorted_unique(t_grid);
  table.g_grid = g_grid;
  const std::size_t nt = table.t_grid.size(), ng = g_grid.size();
  const double identity_weight = std::pow(4.0, -static_cast<double>(n));
  std::vector<std::vector<double>> per(spec.realizations);
  std::size_t per_realization_samples = 0;

  auto body = [&](std::size_t r) {
    Realization real(spec, n, r);
    // Operator list: identity first, then all others or a random draw of non-identity ones.
    std::vector<std::vector<std::uint8_t>> qs;
    qs.emplace_back(n, 0);
    if (sampling.kind == SamplingKind::exhaustive) {
      const std::size_t total = std::size_t{1} << (2 * n);
      for (std::size_t idx = 1; idx < total; ++idx) {
        std::vector<std::uint8_t> l(n);
        for (std::size_t q = 0; q < n; ++q) l[q] = static_cast<std::uint8_t>((idx >> (2 * q)) & 3u);
        qs.push_back(std::move(l));
      }
    } else {
      for (std::size_t s = 0; s < sampling.count; ++s) {
        std::vector<std::uint8_t> l(n, 0);
        bool nontrivial = false;
        while (!nontrivial) {
          for (std::size_t q = 0; q < n; ++q) {
            l[q] = static_cast<std::uint8_t>(uniform_below(real.rng(), 4));
            nontrivial = nontrivial || l[q] != 0;
          }
        }
        qs.push_back(std::move(l));
      }
    }
    std::vector<std::size_t> weight(qs.size());
    for (std::size_t i = 0; i < qs.size(); ++i)
      weight[i] = static_cast<std::size_t>(std::count_if(qs[i].begin(), qs[i].end(), [](std::uint8_t l) { return l != 0; }));

    std::vector<double> out(nt * ng);
    std::vector<std::size_t> ks(qs.size());
    std::vector<std::uint64_t> acc(2 * real.words());
    for (std::size_t ti = 0; ti < nt; ++ti) {
      real.advance_and_restrict(table.t_grid[ti]);
      for (std::size_t i = 0; i < qs.size(); ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t q = 0; q < n; ++q) real.accumulate(acc, q, qs[i][q]);
        ks[i] = real.k_size_of(acc);
      }
      for (std::size_t gi = 0; gi < ng; ++gi) {
        std::complex<double> amp;
        if (sampling.kind == SamplingKind::exhaustive) {
          for (std::size_t i = 0; i < qs.size(); ++i)
            amp += std::polar(1.0, phase_from_sizes(spec.kind, g_grid[gi], ks[i], real.k(), weight[i]));
          amp *= identity_weight;
        } else {
          std::complex<double> rest;
          for (std::size_t i = 1; i < qs.size(); ++i)
            rest += std::polar(1.0, phase_from_sizes(spec.kind, g_grid[gi], ks[i], real.k(), weight[i]));
          amp = identity_weight * std::polar(1.0, phase_from_sizes(spec.kind, g_grid[gi], ks[0], real.k(), 0)) +
                (1.0 - identity_weight) * rest / static_cast<double>(qs.size() - 1);
        }
        out[ti * ng + gi] = std::norm(amp);
      }
    }
    per[r] = std::move(out);
  };
  for_realizations(spec.realizations, exec, body);
  per_realization_samples = sampling.kind == SamplingKind::exhaustive ? (std::size_t{1} << (2 * n)) : sampling.count + 1;
  reduce_cells(per, table, per_realization_samples);
  Rng probe = realization_stream(spec.circuit.seed, 0);
  const std::size_t k = draw_subsystem(spec.subsystem, spec.circuit.num_sites(), probe).order.size();
  for (auto& c : table.cells) c.k = k;
  return table;
}

FidelityTable marginal_fidelity_scan(const TeleportSpec& spec, const std::vector<std::size_t>& n_grid_in,
                                     std::size_t measured, std::size_t qu_samples,
                                     const std::vector<int>& t_grid, const std::vector<double>& g_grid,
                                     Execution exec) {
  require(!n_grid_in.empty() && !t_grid.empty() && !g_grid.empty(), "grids must be non-empty");
  require(qu_samples >= 1, "need at least one sample of the unmeasured qubits");
  std::vector<std::size_t> n_grid = n_grid_in;
  std::sort(n_grid.begin(), n_grid.end());
  n_grid.erase(std::unique(n_grid.begin(), n_grid.end()), n_grid.end());
  require(n_grid.front() >= 1, "n must be at least 1");
  const std::size_t n_max = n_grid.back();
  validate_blocks(spec, n_max);
  require(measured < n_grid.front(), "measured qubit must be among the sent qubits for every n");
  for (int t : t_grid) require(t >= 0, "times must be non-negative");

  FidelityTable table;
  table.n_grid = n_grid;
  table.t_grid = sorted_unique(t_grid);
  table.g_grid = g_grid;
  const std::size_t nn = n_grid.size(), nt = table.t_grid.size(), ng = g_grid.size();
  std::vector<std::vector<double>> per(spec.realizations);
  auto body = [&](std::size_t r) {
    Realization real(spec, n_max, r);
    // Unmeasured qubits in the order they join as n grows.
    std::vector<std::size_t> others;
    for (std::size_t q = 0; q < n_max; ++q)
      if (q != measured) others.push_back(q);
    std::vector<std::uint8_t> letters(qu_samples * others.size());
    for (auto& l : letters) l = static_cast<std::uint8_t>(uniform_below(real.rng(), 4));

    std::vector<double> out(nn * nt * ng, 0.0);
    std::vector<std::uint64_t> acc(2 * real.words());
    std::array<std::size_t, 4> ks{};
    for (std::size_t ti = 0; ti < nt; ++ti) {
      real.advance_and_restrict(table.t_grid[ti]);
      for (std::size_t s = 0; s < qu_samples; ++s) {
        std::fill(acc.begin(), acc.end(), 0);
        std::size_t joined = 0;
        for (std::size_t ni = 0; ni < nn; ++ni) {
          const std::size_t target = n_grid[ni] - 1;
          for (; joined < target; ++joined) real.accumulate(acc, others[joined], letters[s * others.size() + joined]);
          for (std::uint8_t l = 0; l < 4; ++l) ks[l] = real.k_size_with(acc, measured, l);
          for (std::size_t gi = 0; gi < ng; ++gi) {
            std::complex<double> amp;
            for (std::uint8_t l = 0; l < 4; ++l)
              amp += std::polar(1.0, phase_from_sizes(spec.kind, g_grid[gi], ks[l], real.k(), l != 0 ? 1 : 0));
            out[(ni * nt + ti) * ng + gi] += std::norm(amp) / 16.0;
          }
        }
      }
    }
    for (auto& v : out) v /= static_cast<double>(qu_samples);
    per[r] = std::move(out);
  };
  for_realizations(spec.realizations, exec, body);
  reduce_cells(per, table, qu_samples * 16);
  Rng probe = realization_stream(spec.circuit.seed, 0);
  const std::size_t k = draw_subsystem(spec.subsystem, spec.circuit.num_sites(), probe).order.size();
  for (auto& c : table.cells) c.k = k;
  return table;
}

std::vector<std::vector<Site>> consecutive_blocks(std::size_t p, std::size_t n) {
  std::vector<std::vector<Site>> blocks(n);
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t i = 0; i < p; ++i) blocks[q].push_back(static_cast<Site>(q * p + i));
  return blocks;
}

FidelityResult epr_fidelity(const std::vector<Site>& seed_sites, const CircuitSpec& circuit, CouplingKind kind,
                            double g, const SubsystemSpec& subsystem, int t, std::size_t realizations,
                            const PauliSampling& sampling) {
  TeleportSpec spec{circuit, {}, subsystem, kind, realizations};
  for (Site s : seed_sites) spec.blocks.push_back({s});
  return epr_fidelity_scan(spec, {t}, {g}, sampling).cells.front();
}

FidelityResult epr_fidelity_encoded(std::size_t p, std::size_t n, const CircuitSpec& circuit, CouplingKind kind,
                                    double g, const SubsystemSpec& subsystem, int t, std::size_t realizations,
                                    const PauliSampling& sampling) {
  require(p >= 1 && p % 2 == 1, "encoding weight must be odd");
  require(n * p <= circuit.num_sites(), "encoded blocks exceed the system");
  TeleportSpec spec{circuit, consecutive_blocks(p, n), subsystem, kind, realizations};
  return epr_fidelity_scan(spec, {t}, {g}, sampling).cells.front();
}

FidelityResult marginal_fidelity(std::size_t n, std::size_t measured, std::size_t p, const CircuitSpec& circuit,
                                 CouplingKind kind, double g, const SubsystemSpec& subsystem, int t,
                                 std::size_t realizations, std::size_t qu_samples) {
  require(p >= 1 && p % 2 == 1, "encoding weight must be odd");
  require(n * p <= circuit.num_sites(), "encoded blocks exceed the system");
  TeleportSpec spec{circuit, consecutive_blocks(p, n), subsystem, kind, realizations};
  return marginal_fidelity_scan(spec, {n}, measured, qu_samples, {t}, {g}).cells.front();
}

double epr_to_state_fidelity(double f_epr, double d_a) {
  require(d_a >= 2, "dimension must be at least 2");
  return (d_a * f_epr + 1.0) / (d_a + 1.0);
}

double state_to_epr_fidelity(double f_state, double d_a) {
  require(d_a >= 2, "dimension must be at least 2");
  return ((d_a + 1.0) * f_state - 1.0) / d_a;
}

std::string kind_name(CouplingKind kind) { return kind == CouplingKind::size ? "size" : "hpr_projector"; }

void write_fidelity_csv_header(std::ostream& out) { out << "n,K,g,t,kind,value,std_error,samples,seed\n"; }

void write_fidelity_csv_row(std::ostream& out, const FidelityResult& r, const std::string& kind, std::uint64_t seed) {
  out << r.n_qubits << ',' << r.k << ',' << fmt_real(r.g) << ',' << r.t << ',' << kind << ',' << fmt_real(r.value)
      << ',' << fmt_real(r.std_error) << ',' << r.samples << ',' << seed << '\n';
}

}  // namespace teleport
