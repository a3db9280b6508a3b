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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "teleport/circuits.hpp"
#include "teleport/errors.hpp"
#include "teleport/fidelity.hpp"

namespace teleport {
namespace {

constexpr double kPi = std::numbers::pi;

double wrap(double a) { return std::remainder(a, 2 * kPi); }

TEST(Phase, Examples) {
  const SiteSet c = SiteSet::all(4);
  EXPECT_DOUBLE_EQ(phase(PauliString(), PauliString(), {CouplingKind::size, 3.0, c}), 0.0);
  const PauliString x0 = PauliString::single(0, Letter::X);
  EXPECT_DOUBLE_EQ(phase(x0, PauliString::parse("XZ11"), {CouplingKind::size, 0.0, c}), kPi);
  EXPECT_NEAR(wrap(phase(x0, PauliString::parse("XZYX"), {CouplingKind::size, kPi, c})), 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(phase(x0, PauliString::parse("1111"), {CouplingKind::hpr_projector, 0.0, c}), 2 * kPi);
  EXPECT_DOUBLE_EQ(phase(x0, PauliString::parse("1X11"), {CouplingKind::hpr_projector, 0.0, c}), kPi);
}

TEST(Conversion, EprAndStateFidelity) {
  EXPECT_DOUBLE_EQ(epr_to_state_fidelity(1.0, 2), 1.0);
  EXPECT_DOUBLE_EQ(epr_to_state_fidelity(0.25, 2), 0.5);
  for (double f : {0.1, 0.37, 0.99}) EXPECT_NEAR(state_to_epr_fidelity(epr_to_state_fidelity(f, 2), 2), f, 1e-15);
  EXPECT_THROW(epr_to_state_fidelity(0.5, 1), InvalidArgument);
}

TeleportSpec chain(std::size_t n_sites, int depth, std::size_t realizations, std::uint64_t seed) {
  TeleportSpec spec;
  spec.circuit = {1, n_sites, 1, depth, Boundary::open, seed};
  spec.blocks = {{static_cast<Site>(n_sites / 2)}};
  spec.realizations = realizations;
  return spec;
}

TEST(EprFidelity, NoCouplingGivesQuarter) {
  const TeleportSpec spec = chain(64, 50, 5, 1);
  const FidelityTable t = epr_fidelity_scan(spec, {0, 10, 50}, {0.0}, {});
  for (const auto& c : t.cells) EXPECT_NEAR(c.value, 0.25, 1e-12);
}

TEST(EprFidelity, TunedCouplingAtLateTime) {
  // Late-time size 3N/4 with width sqrt(3N/16): g = pi K / S aligns every phase.
  const std::size_t n = 256;
  const TeleportSpec spec = chain(n, 1024, 10, 2);
  const double g = kPi * n / (0.75 * n);
  const FidelityTable t = epr_fidelity_scan(spec, {1024}, {g}, {});
  EXPECT_GE(t.cells[0].value, 0.95);
}

TEST(EprFidelity, EvenInCoupling) {
  const TeleportSpec spec = chain(128, 120, 20, 3);
  const FidelityTable t = epr_fidelity_scan(spec, {30, 60, 120}, {2.0, -2.0, 4.0, -4.0}, {});
  for (std::size_t ti = 0; ti < 3; ++ti)
    for (std::size_t gi = 0; gi < 4; gi += 2) {
      const auto& a = t.at(0, ti, gi);
      const auto& b = t.at(0, ti, gi + 1);
      EXPECT_NEAR(a.value, b.value, 3 * std::hypot(a.std_error, b.std_error) + 1e-12);
    }
}

TEST(EprFidelity, RandomSamplingApproachesExhaustive) {
  TeleportSpec spec = chain(64, 40, 4, 4);
  spec.blocks = {{10}, {40}};
  const FidelityTable exact = epr_fidelity_scan(spec, {20, 40}, {1.0, 3.0}, {SamplingKind::exhaustive, 0});
  const FidelityTable sampled = epr_fidelity_scan(spec, {20, 40}, {1.0, 3.0}, {SamplingKind::random, 4000});
  for (std::size_t i = 0; i < exact.cells.size(); ++i) {
    EXPECT_NEAR(sampled.cells[i].value, exact.cells[i].value, 0.05);
    EXPECT_LE(exact.cells[i].raw, 1.0 + 1e-12);
  }
}

TEST(EprFidelity, EncodedWithSingleSiteBlocksEqualsPlain) {
  const CircuitSpec circuit{1, 64, 1, 30, Boundary::open, 5};
  const SubsystemSpec all;
  const FidelityResult a = epr_fidelity({0}, circuit, CouplingKind::size, 2.5, all, 30, 6, {});
  const FidelityResult b = epr_fidelity_encoded(1, 1, circuit, CouplingKind::size, 2.5, all, 30, 6, {});
  EXPECT_DOUBLE_EQ(a.value, b.value);
}

TEST(EprFidelity, ZeroDimensionalEncodedFirstPeak) {
  // p = 101 block in 0D: tuning g so that g S_K / K = pi at one time gives a
  // sharp fidelity peak there, because the size width is small against the mean.
  const std::size_t n = 100000;
  TeleportSpec spec;
  spec.circuit = {0, n, 1, 14, Boundary::open, 6};
  spec.blocks = consecutive_blocks(101, 1);
  spec.realizations = 8;
  SizeTraceSpec trace_spec;
  trace_spec.circuit = spec.circuit;
  trace_spec.seed_blocks = spec.blocks;
  trace_spec.realizations = 8;
  const SizeTrace trace = size_trace(trace_spec);
  const int t_tuned = 11;
  const double g = kPi * static_cast<double>(n) / trace.rows[t_tuned].mean_size;
  std::vector<int> ts;
  for (int t = 0; t <= 14; ++t) ts.push_back(t);
  const FidelityTable table = epr_fidelity_scan(spec, ts, {g}, {});
  std::size_t best = 0;
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (table.cells[i].value > table.cells[best].value) best = i;
  EXPECT_EQ(ts[best], t_tuned);
  EXPECT_GE(table.cells[best].value, 0.9);
  EXPECT_LT(table.cells[0].value, 0.3);
}

TEST(EprFidelity, HprLateTime) {
  TeleportSpec spec = chain(64, 400, 10, 7);
  spec.kind = CouplingKind::hpr_projector;
  spec.subsystem = {SelectionKind::random, 16, 0};
  const FidelityTable single = epr_fidelity_scan(spec, {400}, {0.0}, {});
  EXPECT_NEAR(single.cells[0].value, 1.0, 1e-6);
  // Two qubits (a 4-level system): weight-two logical Paulis pick up no sign,
  // so the phase table cannot align.
  spec.blocks = {{10}, {50}};
  const FidelityTable pair = epr_fidelity_scan(spec, {400}, {0.0}, {});
  EXPECT_LT(pair.cells[0].value, 0.1);
}

TEST(EprFidelity, SerialParallelIdentical) {
  TeleportSpec spec = chain(96, 60, 9, 8);
  spec.subsystem = {SelectionKind::random, 30, 0};
  const FidelityTable a = epr_fidelity_scan(spec, {10, 60}, {1.0, 5.0}, {}, Execution::serial);
  const FidelityTable b = epr_fidelity_scan(spec, {10, 60}, {1.0, 5.0}, {}, Execution::parallel);
  ASSERT_EQ(a.cells.size(), b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    EXPECT_EQ(a.cells[i].value, b.cells[i].value);
    EXPECT_EQ(a.cells[i].std_error, b.cells[i].std_error);
  }
}

TEST(EprFidelity, InvalidInputs) {
  TeleportSpec spec = chain(64, 10, 1, 9);
  spec.blocks = {{1}, {1}};
  EXPECT_THROW(epr_fidelity_scan(spec, {1}, {1.0}, {}), InvalidArgument);
  EXPECT_THROW(epr_fidelity_encoded(2, 1, spec.circuit, CouplingKind::size, 1.0, {}, 1, 1, {}), InvalidArgument);
  EXPECT_THROW(epr_fidelity_encoded(3, 30, spec.circuit, CouplingKind::size, 1.0, {}, 1, 1, {}), InvalidArgument);
}

TEST(MarginalFidelity, SingleQubitEqualsEpr) {
  const CircuitSpec circuit{0, 2000, 1, 8, Boundary::open, 10};
  const SubsystemSpec c{SelectionKind::random, 500, 0};
  const FidelityResult m = marginal_fidelity(1, 0, 3, circuit, CouplingKind::size, 7.0, c, 8, 5, 10);
  const FidelityResult e = epr_fidelity_encoded(3, 1, circuit, CouplingKind::size, 7.0, c, 8, 5, {});
  EXPECT_NEAR(m.value, e.value, 1e-12);
}

TEST(MarginalFidelity, NoCouplingGivesQuarter) {
  TeleportSpec spec;
  spec.circuit = {0, 3000, 1, 6, Boundary::open, 11};
  spec.blocks = consecutive_blocks(5, 8);
  spec.subsystem = {SelectionKind::random, 300, 0};
  spec.realizations = 3;
  const FidelityTable t = marginal_fidelity_scan(spec, {1, 2, 5, 8}, 0, 20, {0, 3, 6}, {0.0});
  for (const auto& c : t.cells) EXPECT_NEAR(c.value, 0.25, 1e-12);
}

TEST(MarginalFidelity, StrictCapacityBound) {
  // 2n > K: no sweep point reaches 1 - eps_th.
  for (std::size_t k : {1, 2, 3}) {
    TeleportSpec spec;
    spec.circuit = {0, 400, 1, 12, Boundary::open, 12 + k};
    spec.blocks = consecutive_blocks(3, 2);
    spec.subsystem = {SelectionKind::random, k, 0};
    spec.realizations = 40;
    std::vector<int> ts;
    for (int t = 0; t <= 12; ++t) ts.push_back(t);
    std::vector<double> gs;
    for (int i = 1; i <= 24; ++i) gs.push_back(i * kPi / 8);
    const FidelityTable table = marginal_fidelity_scan(spec, {2}, 0, 50, ts, gs);
    for (const auto& c : table.cells) EXPECT_LE(c.value, 0.93) << "K=" << k << " t=" << c.t << " g=" << c.g;
  }
}

TEST(MarginalFidelity, SerialParallelIdentical) {
  TeleportSpec spec;
  spec.circuit = {0, 5000, 1, 9, Boundary::open, 13};
  spec.blocks = consecutive_blocks(7, 6);
  spec.subsystem = {SelectionKind::random, 800, 0};
  spec.realizations = 5;
  const auto a = marginal_fidelity_scan(spec, {1, 3, 6}, 0, 10, {5, 9}, {3.0, 30.0}, Execution::serial);
  const auto b = marginal_fidelity_scan(spec, {1, 3, 6}, 0, 10, {5, 9}, {3.0, 30.0}, Execution::parallel);
  for (std::size_t i = 0; i < a.cells.size(); ++i) EXPECT_EQ(a.cells[i].value, b.cells[i].value);
}

TEST(FidelityCsv, RowFormat) {
  FidelityResult r;
  r.n_qubits = 1;
  r.k = 64;
  r.g = 0.5;
  r.t = 3;
  r.value = 0.25;
  r.std_error = 0;
  r.samples = 4;
  std::ostringstream out;
  write_fidelity_csv_header(out);
  write_fidelity_csv_row(out, r, "size", 9);
  EXPECT_EQ(out.str(), "n,K,g,t,kind,value,std_error,samples,seed\n1,64,0.5,3,size,0.25,0,4,9\n");
}

}  // namespace
}  // namespace teleport
