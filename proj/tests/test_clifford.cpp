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

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "teleport/clifford.hpp"
#include "teleport/errors.hpp"
#include "teleport/rng.hpp"

namespace teleport {
namespace {

TEST(Clifford, EnumerationCount) {
  const auto& gates = enumerate_symplectic2();
  EXPECT_EQ(gates.size(), kNumSymplectic2);
  // 16 sign choices per symplectic map give the full two-qubit Clifford group mod phase.
  EXPECT_EQ(gates.size() * 16, 11520u);
  std::set<std::uint16_t> codes;
  for (const auto& g : gates) codes.insert(g.encoding());
  EXPECT_EQ(codes.size(), gates.size());
  EXPECT_TRUE(std::is_sorted(gates.begin(), gates.end(),
                             [](const auto& a, const auto& b) { return a.encoding() < b.encoding(); }));
}

TEST(Clifford, AllSymplecticWithNonIdentityImages) {
  for (const auto& g : enumerate_symplectic2()) {
    EXPECT_TRUE(g.is_symplectic());
    for (Pauli2 img : g.images) EXPECT_NE(img, 0);
  }
  EXPECT_NE(std::find(enumerate_symplectic2().begin(), enumerate_symplectic2().end(), SymplecticGate2::identity()),
            enumerate_symplectic2().end());
}

TEST(Clifford, TablesMatchMaps) {
  const auto& gates = enumerate_symplectic2();
  const auto& tables = gate_tables();
  ASSERT_EQ(tables.size(), gates.size());
  for (std::size_t i = 0; i < gates.size(); ++i)
    for (Pauli2 v = 0; v < 16; ++v) EXPECT_EQ(tables[i][v], gates[i].map(v));
}

TEST(Clifford, SamplerUniformChiSquare) {
  Rng rng = make_stream(11, 0);
  constexpr std::size_t draws = 1000000;
  std::vector<double> counts(kNumSymplectic2, 0.0);
  for (std::size_t i = 0; i < draws; ++i) counts[sample_gate_index(rng)] += 1;
  const double expected = static_cast<double>(draws) / kNumSymplectic2;
  double chi2 = 0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  const boost::math::chi_squared dist(kNumSymplectic2 - 1);
  EXPECT_GT(boost::math::cdf(boost::math::complement(dist, chi2)), 0.001);
}

TEST(Clifford, SamplerDeterministicPerSeed) {
  Rng a = make_stream(5, 1), b = make_stream(5, 1), c = make_stream(6, 1);
  std::vector<std::size_t> sa, sb, sc;
  for (int i = 0; i < 10; ++i) {
    sa.push_back(sample_gate_index(a));
    sb.push_back(sample_gate_index(b));
    sc.push_back(sample_gate_index(c));
  }
  EXPECT_EQ(sa, sb);
  EXPECT_NE(sa, sc);
}

TEST(Clifford, ApplyIdentityAndLocality) {
  const PauliString p = PauliString::parse("XZ1Y");
  EXPECT_EQ(apply_gate(SymplecticGate2::identity(), p, 0, 3), p);
  // Identity on {1, 2}: unchanged for every gate.
  const PauliString q = PauliString::parse("X11Y");
  for (const auto& g : enumerate_symplectic2()) EXPECT_EQ(apply_gate(g, q, 1, 2), q);
  EXPECT_THROW(apply_gate(SymplecticGate2::identity(), p, 1, 1), InvalidArgument);
}

TEST(Clifford, CnotLikeImage) {
  // X1 -> X1 X2, Z1 -> Z1, X2 -> X2, Z2 -> Z1 Z2.
  SymplecticGate2 cx;
  cx.images = {pack2(Letter::X, Letter::X), pack2(Letter::Z, Letter::I), pack2(Letter::I, Letter::X),
               pack2(Letter::Z, Letter::Z)};
  ASSERT_TRUE(cx.is_symplectic());
  EXPECT_EQ(apply_gate(cx, PauliString::parse("1X1X"), 1, 3), PauliString::parse("1X11"));
  EXPECT_EQ(apply_gate(cx, PauliString::single(2, Letter::X), 2, 5), PauliString::parse("11X11X"));
}

TEST(CliffordProperty, CommutationPreserved) {
  for (const auto& g : enumerate_symplectic2())
    for (Pauli2 a = 0; a < 16; ++a)
      for (Pauli2 b = 0; b < 16; ++b) ASSERT_EQ(symplectic_form(g.map(a), g.map(b)), symplectic_form(a, b));
}

TEST(CliffordProperty, HomomorphismOnStrings) {
  Rng rng = make_stream(12, 0);
  for (int i = 0; i < 500; ++i) {
    const SymplecticGate2 g = sample_gate(rng);
    const PauliString p = random_pauli(6, rng), q = random_pauli(6, rng);
    const Site a = static_cast<Site>(uniform_below(rng, 6));
    Site b = static_cast<Site>(uniform_below(rng, 5));
    if (b >= a) ++b;
    EXPECT_EQ(apply_gate(g, multiply(p, q), a, b), multiply(apply_gate(g, p, a, b), apply_gate(g, q, a, b)));
    EXPECT_EQ(commutes(apply_gate(g, p, a, b), apply_gate(g, q, a, b)), commutes(p, q));
  }
}

TEST(CliffordProperty, GrowthProbabilityNineFifteenths) {
  // A non-identity letter on one site, identity on the other: the image has
  // support on both sites with probability 9/15.
  Rng rng = make_stream(13, 0);
  constexpr int draws = 200000;
  int both = 0;
  for (int i = 0; i < draws; ++i) {
    const Letter l = static_cast<Letter>(1 + uniform_below(rng, 3));
    const Pauli2 out = sample_gate(rng).map(pack2(l, Letter::I));
    both += (first_letter(out) != Letter::I && second_letter(out) != Letter::I) ? 1 : 0;
  }
  const double eta = 9.0 / 15.0;
  EXPECT_NEAR(static_cast<double>(both) / draws, eta, 3 * std::sqrt(eta * (1 - eta) / draws));
}

}  // namespace
}  // namespace teleport
