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

#include "teleport/errors.hpp"
#include "teleport/syk.hpp"

namespace teleport {
namespace {

constexpr double kPi = std::numbers::pi;

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

TEST(Lyapunov, Limits) {
  EXPECT_DOUBLE_EQ(lyapunov_over_j(0), 2.0);
  EXPECT_NEAR(lyapunov_over_j(1e-6), 2.0, 1e-6);
  // Low temperature: lambda -> 2 pi / beta.
  EXPECT_NEAR(lyapunov_over_j(1000) * 1000, 2 * kPi, 0.01 * 2 * kPi);
  EXPECT_THROW(solve_lyapunov(-1), InvalidArgument);
}

TEST(Lyapunov, ResidualAndMonotone) {
  double prev = 2.0;
  for (double bj : {0.01, 0.1, 1.0, 5.0, 20.0, 50.0, 200.0, 1000.0}) {
    const double u = solve_lyapunov(bj);
    EXPECT_LT(std::abs(u - 2 * bj * std::cos(u / 4)), 1e-10 * (1 + u));
    const double l = lyapunov_over_j(bj);
    EXPECT_LT(l, prev);
    prev = l;
  }
}

TEST(InfiniteT, NoCouplingAndConjugation) {
  SykParams sp;
  sp.n = 1e4;
  sp.p = 7;
  for (double t : {0.0, 1.0, 3.0}) EXPECT_EQ(correlator_infinite_T(sp, t), Complex(1.0));
  sp.g = 5;
  SykParams neg = sp;
  neg.g = -5;
  for (double t : {0.5, 2.0, 4.0}) {
    const Complex a = correlator_infinite_T(sp, t), b = correlator_infinite_T(neg, t);
    EXPECT_NEAR(a.real(), b.real(), 1e-14);
    EXPECT_NEAR(a.imag(), -b.imag(), 1e-14);
    EXPECT_LE(std::abs(a), 1.0 + 1e-15);
  }
  sp.beta = 1;
  EXPECT_THROW(correlator_infinite_T(sp, 1.0), InvalidArgument);
}

TEST(InfiniteT, EarlyTimeExpansion) {
  SykParams sp;
  sp.n = 1e6;
  sp.p = 10;
  sp.g = 1;
  const double t = 1.0;
  const double eps = sp.g / sp.n * std::exp(2 * t) / 4;
  const Complex c = correlator_infinite_T(sp, t);
  EXPECT_NEAR(c.imag(), -sp.power() * eps, 1e-3 * sp.power() * eps);
}

TEST(InfiniteT, LargePPhaseWinding) {
  // At fixed small coupling the phase is -(2p/q) arctan(g e^{2Jt} / 4N), linear in p.
  SykParams sp;
  sp.n = 1e6;
  sp.g = 2;
  const double t = 3.0;
  const double a = std::atan(sp.g / sp.n * std::exp(2 * t) / 4);
  for (int p : {1, 3, 9}) {
    sp.p = p;
    EXPECT_NEAR(std::arg(correlator_infinite_T(sp, t)), -sp.power() * a, 1e-12);
  }
}

TEST(FiniteT, ZeroCouplingIsTwoPoint) {
  SykParams sp;
  sp.p = 5;
  sp.beta = 3;
  const Complex expect = Complex(0, -1) * two_point(sp);
  for (auto form : {CorrelatorForm::leading, CorrelatorForm::full})
    for (double t : {0.0, 2.0, 7.0}) EXPECT_LT(rel(correlator_finite_T(sp, t, form), expect), 1e-15);
}

TEST(FiniteT, HighTemperatureLimit) {
  // beta -> 0 reproduces the infinite-temperature form up to the (-i)^p prefactor.
  SykParams sp;
  sp.n = 1e4;
  sp.p = 6;
  sp.g = 3;
  SykParams warm = sp;
  warm.beta = 1e-8;
  for (double t : {0.0, 1.0, 2.0, 4.0}) {
    const Complex inf = correlator_infinite_T(sp, t);
    const Complex fin = correlator_finite_T(warm, t, CorrelatorForm::leading) * std::pow(Complex(0, 1), sp.p);
    EXPECT_LT(rel(fin, inf), 1e-6) << "t=" << t;
  }
}

TEST(FiniteT, LowTemperaturePeak) {
  SykParams sp;
  sp.n = 1e6;
  sp.beta = 50;
  sp.g = 1;
  const double lam = lyapunov_over_j(50);
  const double t_peak = std::log(2 * lam * sp.n / sp.g) / lam;
  EXPECT_NEAR(std::abs(correlator_finite_T(sp, t_peak, CorrelatorForm::leading)), 1.0, 0.02);
  // Before scrambling the magnitude is the thermal two-point value, far below the peak.
  EXPECT_NEAR(std::abs(correlator_finite_T(sp, 0, CorrelatorForm::leading)), two_point(sp), 1e-6);
  EXPECT_LT(two_point(sp), 0.3);
}

TEST(FiniteT, ScanMatchesPointwise) {
  SykParams sp;
  sp.n = 100;
  sp.beta = 2;
  sp.g = 4;
  sp.p = 3;
  const std::vector<double> ts = {0, 0.5, 1, 2, 4};
  const auto scan = correlator_scan(sp, ts, CorrelatorForm::full);
  for (std::size_t i = 0; i < ts.size(); ++i) EXPECT_EQ(scan[i], correlator_finite_T(sp, ts[i], CorrelatorForm::full));
  std::ostringstream out;
  write_correlator_csv(out, ts, scan);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "t,re,im,abs,arg");
}

TEST(Winding, SumsToTwoPoint) {
  // sum_n f_n = i (-i)^p G^p for every beta and t.
  for (double beta : {0.0, 2.0, 30.0}) {
    SykParams sp;
    sp.p = 3;
    sp.beta = beta;
    const WindingDistribution f = winding_distribution(sp, 2.0);
    Complex s = 0;
    for (const auto& v : f.values) s += v;
    EXPECT_LT(rel(s, Complex(0, 1) * Complex(0, 1) * two_point(sp)), 1e-10);
    EXPECT_FALSE(f.truncated);
  }
}

TEST(Winding, ResummationMatchesClosedForm) {
  for (double beta : {0.0, 1.0, 10.0, 50.0})
    for (double t : {0.5, 1.0, 2.0, 3.0, 4.0}) {
      SykParams sp;
      sp.n = 1e4;
      sp.p = 10;
      sp.beta = beta;
      sp.g = 20;
      const Complex full = correlator_finite_T(sp, t, CorrelatorForm::full);
      const Complex resum = resum_winding(winding_distribution(sp, t), sp.g, sp.n);
      EXPECT_LT(rel(resum, full), 1e-6) << "beta=" << beta << " t=" << t;
    }
}

TEST(Winding, PhaseAndDecay) {
  SykParams sp;
  sp.beta = 10;
  sp.p = 2;
  const WindingDistribution early = winding_distribution(sp, 0.5);
  const WindingDistribution late = winding_distribution(sp, 16.0);
  EXPECT_GT(early.gamma, late.gamma);
  EXPECT_NEAR(late.phase_step, 2 * late.alpha, 1e-3 * late.alpha);
  // Consecutive terms advance by the phase step at late times.
  const Complex ratio = late.values[21] / late.values[20];
  EXPECT_NEAR(std::arg(ratio), late.phase_step, 1e-12);
  EXPECT_GT(early.phase_step, 0);
}

TEST(Winding, ExplicitCutoffFlagsTruncation) {
  SykParams sp;
  sp.beta = 1;
  const WindingDistribution f = winding_distribution(sp, 3.0, 5);
  EXPECT_EQ(f.values.size(), 6u);
  EXPECT_TRUE(f.truncated);
  std::ostringstream out;
  write_winding_csv(out, f);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "n,re,im,abs,arg");
}

TEST(SizeMoments, InfiniteTemperatureForms) {
  SykParams sp;
  sp.p = 4;
  sp.q = 6;
  for (double t : {0.0, 1.0, 2.5}) {
    const SizeMoments m = syk_size_moments(sp, t);
    EXPECT_NEAR(m.mean_size, 0.5 * sp.p * std::exp(2 * t), 1e-12 * m.mean_size);
    EXPECT_NEAR(m.size_width / m.mean_size, std::sqrt(sp.q / (2.0 * sp.p)), 1e-12);
    EXPECT_NEAR(m.mean_size * m.gamma, 2.0 * sp.p, 1e-10);
  }
}

TEST(SykParams, Validation) {
  SykParams sp;
  sp.q = 3;
  EXPECT_THROW(sp.validate(), InvalidArgument);
  sp.q = 4;
  sp.p = 0;
  EXPECT_THROW(sp.validate(), InvalidArgument);
  sp.p = 1;
  sp.beta = -1;
  EXPECT_THROW(sp.validate(), InvalidArgument);
}

}  // namespace
}  // namespace teleport
