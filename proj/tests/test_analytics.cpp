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
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "teleport/analytics.hpp"
#include "teleport/errors.hpp"

namespace teleport {
namespace {

TEST(OverlapPmf, FullSetIsPointMass) {
  const OverlapDistribution d = overlap_pmf(50, 50, 20);
  ASSERT_EQ(d.dist.values.size(), 1u);
  EXPECT_DOUBLE_EQ(d.dist.values[0], 20);
  EXPECT_NEAR(d.dist.pmf[0], 1.0, 1e-15);
}

TEST(OverlapPmf, HypergeometricMoments) {
  const double n = 1e4, r1 = 100, r2 = 100;
  const OverlapDistribution d = overlap_pmf(10000, 100, 100);
  EXPECT_NEAR(d.dist.total(), 1.0, 1e-12);
  EXPECT_NEAR(d.dist.mean(), r1 * r2 / n, 1e-10);
  const double var = r1 * r2 * (n - r1) * (n - r2) / (n * n * (n - 1));
  EXPECT_NEAR(d.dist.width(), std::sqrt(var), 1e-9);
}

TEST(OverlapPmf, SymmetricInArguments) {
  const OverlapDistribution a = overlap_pmf(300, 40, 170);
  const OverlapDistribution b = overlap_pmf(300, 170, 40);
  ASSERT_EQ(a.dist.pmf.size(), b.dist.pmf.size());
  for (std::size_t i = 0; i < a.dist.pmf.size(); ++i) EXPECT_NEAR(a.dist.pmf[i], b.dist.pmf[i], 1e-12 * a.dist.pmf[i]);
}

TEST(KsizePmf, MatchesOverlapWithSubstitution) {
  const SizeDistribution k = ksize_pmf(400, 90, 130);
  const OverlapDistribution o = overlap_pmf(400, 90, 130);
  ASSERT_EQ(k.pmf.size(), o.dist.pmf.size());
  for (std::size_t i = 0; i < k.pmf.size(); ++i) EXPECT_NEAR(k.pmf[i], o.dist.pmf[i], 1e-13);
}

TEST(KsizePmf, WholeSystemAndMean) {
  const SizeDistribution full = ksize_pmf(100, 37, 100);
  ASSERT_EQ(full.pmf.size(), 1u);
  EXPECT_DOUBLE_EQ(full.values[0], 37);
  const SizeDistribution d = ksize_pmf(1000, 600, 250);
  EXPECT_NEAR(d.mean(), 600.0 * 250 / 1000, 1e-9);
  EXPECT_THROW(ksize_pmf(10, 11, 3), InvalidArgument);
}

TEST(Sampling, HistogramsMatchExact) {
  const OverlapDistribution o = overlap_pmf(200, 80, 120);
  EXPECT_LT(total_variation(o.dist, sample_overlap(o, 100000, 1)), 0.02);
  const SizeDistribution k = ksize_pmf(200, 70, 50);
  EXPECT_LT(total_variation(k, sample_ksize(k, 200, 70, 50, 100000, 2)), 0.02);
}

TEST(Sampling, SerialParallelIdentical) {
  const OverlapDistribution o = overlap_pmf(100, 30, 60);
  EXPECT_EQ(sample_overlap(o, 20000, 3, Execution::serial), sample_overlap(o, 20000, 3, Execution::parallel));
}

TEST(SykSizePmf, NegativeBinomialMoments) {
  for (double delta : {0.5, 3.0, 40.0})
    for (double x : {0.1, 0.6, 0.95}) {
      const SizeDistribution d = syk_size_pmf(delta, x, 0, 4, 1);
      EXPECT_NEAR(d.total(), 1.0, 1e-10);
      EXPECT_LT(d.tail_mass, 1e-12);
      EXPECT_NEAR((d.mean() - 1) / 4, delta * x / (1 - x), 1e-8 * (1 + delta * x / (1 - x)));
      EXPECT_NEAR(d.width() / 4, std::sqrt(delta * x) / (1 - x), 1e-7 * std::sqrt(delta * x) / (1 - x));
    }
}

TEST(SykSizePmf, ZeroTimeAndTruncation) {
  const SizeDistribution d0 = syk_size_pmf(2.0, 0.0, 0, 4, 1);
  ASSERT_EQ(d0.pmf.size(), 1u);
  EXPECT_DOUBLE_EQ(d0.values[0], 1);
  const SizeDistribution cut = syk_size_pmf(2.0, 0.9, 10);
  EXPECT_GT(cut.tail_mass, 0.1);
  EXPECT_NEAR(cut.total(), 1.0, 1e-12);
  EXPECT_THROW(syk_size_pmf(-1, 0.5), InvalidArgument);
  EXPECT_THROW(syk_size_pmf(1, 1.0), InvalidArgument);
}

TEST(AsymptoticWidth, PointMassAndBinomial) {
  SizeDistribution point;
  point.values = {12};
  point.pmf = {1.0};
  EXPECT_DOUBLE_EQ(asymptotic_width(point, 0.01), 0.0);

  // Late-time size distribution Binomial(N, 3/4): the central 1 - eps window
  // scales as the width sqrt(3N/16).
  const std::size_t n = 200;
  SizeDistribution b;
  for (std::size_t s = 0; s <= n; ++s) {
    b.values.push_back(static_cast<double>(s));
    b.pmf.push_back(std::exp(std::lgamma(n + 1.0) - std::lgamma(s + 1.0) - std::lgamma(n - s + 1.0) + s * std::log(0.75) +
                             (n - s) * std::log(0.25)));
  }
  const double sigma = std::sqrt(3.0 * n / 16);
  const double w = asymptotic_width(b, 0.0455);
  EXPECT_NEAR(w, 2 * sigma, 1.0);
  EXPECT_LE(mass_outside(b, w), 0.0455 + 1e-12);
}

TEST(AsymptoticWidth, NonIncreasingInEpsilon) {
  const SizeDistribution d = syk_size_pmf(200, 0.5, 0, 1, 0);
  double prev = std::numeric_limits<double>::infinity();
  for (double eps : {1e-6, 1e-4, 1e-2, 0.1, 0.3, 0.6}) {
    const double w = asymptotic_width(d, eps);
    EXPECT_LE(w, prev);
    EXPECT_LE(mass_outside(d, w), eps * (1 + 1e-12));
    prev = w;
  }
}

TEST(PeakBound, PointMassIsZero) {
  SizeDistribution point;
  point.values = {30};
  point.pmf = {1.0};
  const PeakBoundResult r = peak_bound(point, std::numbers::pi * 100 / 30, 100, {0.1, 0.2}, WidthConvention::minimal);
  EXPECT_NEAR(r.b, 0.0, 1e-15);
}

TEST(PeakBound, GammaLimitAgreesWithLargeTimeLattice) {
  const std::vector<double> etas = [] {
    std::vector<double> v;
    for (int i = 1; i <= 500; ++i) v.push_back(i / 1000.0);
    return v;
  }();
  for (double delta : {10.0, 100.0}) {
    const SizeDistribution d = syk_size_pmf(delta, 0.999, 0, 1, 0);
    const double g = std::numbers::pi * 1e6 / d.mean();
    const PeakBoundResult lattice = peak_bound(d, g, 1e6, etas);
    const PeakBoundResult limit = peak_bound_gamma_limit(delta, etas);
    EXPECT_NEAR(lattice.b, limit.b, 0.02 * limit.b);
  }
  EXPECT_THROW(eta_star_asymptotic(1.0), InvalidArgument);
  EXPECT_NEAR(eta_star_asymptotic(1000), std::sqrt(std::log(8000 / std::pow(std::numbers::pi, 3)) / 1000), 1e-15);
}

TEST(PeakBound, CsvHeader) {
  const PeakBoundResult r = peak_bound_gamma_limit(10, {0.1, 0.3});
  std::ostringstream out;
  write_csv(out, r);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "eta,epsilon,W,B");
}

SizeTrace synthetic_trace(double bulk, double boundary) {
  // S = 2t up to saturation 400 (t_scr = 200); width bulk sqrt(t) + boundary sqrt(t), then a plateau.
  SizeTrace trace;
  trace.num_sites = 533;
  for (int t = 0; t <= 1000; t += 2) {
    SizeTraceRow r;
    r.t = t;
    r.mean_size = std::min(2.0 * t, 400.0);
    r.size_width = t < 200 ? (bulk + boundary) * std::sqrt(t) : bulk * std::sqrt(200.0);
    trace.rows.push_back(r);
  }
  return trace;
}

TEST(Kpz, RecoversSyntheticCoefficients) {
  const KpzCoefficients c = kpz_extract(synthetic_trace(0.47, 0.18), 1);
  EXPECT_NEAR(c.t_scr, 200, 1e-9);
  EXPECT_NEAR(c.bulk, 0.47, 0.0047);
  EXPECT_NEAR(c.boundary, 0.18, 0.0018);
  EXPECT_GT(c.fit_r2, 0.999);
}

TEST(Kpz, ShortTraceIsInsufficient) {
  SizeTrace trace = synthetic_trace(0.47, 0.18);
  trace.rows.resize(5);
  EXPECT_THROW(kpz_extract(trace, 1), InsufficientData);
  SizeTrace early = synthetic_trace(0.47, 0.18);
  early.rows.resize(140);
  EXPECT_THROW(kpz_extract(early, 1), InsufficientData);
  EXPECT_THROW(kpz_extract(synthetic_trace(0.4, 0.1), 3), InvalidArgument);
}

TEST(FiniteTemperatureBound, LowTemperatureInconclusive) {
  std::vector<double> etas;
  for (int i = 1; i <= 500; ++i) etas.push_back(i / 1000.0);
  const FiniteTemperatureBound r = finite_temperature_bound(100, 4, 50, 3, 1e6, 0, etas);
  EXPECT_TRUE(r.inconclusive);
  EXPECT_GT(r.bound.b, r.g_beta);
}

}  // namespace
}  // namespace teleport
