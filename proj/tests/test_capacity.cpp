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
#include <sstream>
#include <vector>

#include "teleport/capacity.hpp"
#include "teleport/errors.hpp"

namespace teleport {
namespace {

TEST(FitThreshold, RecoversExponentialLaw) {
  // 1 - F = exp(a + b n) exactly.
  const double a = -5.0, b = 0.4, eps = 0.07;
  std::vector<double> ns, fs;
  for (double n : {1.0, 2.0, 4.0, 8.0, 12.0}) {
    ns.push_back(n);
    fs.push_back(1 - std::exp(a + b * n));
  }
  const ThresholdFit fit = fit_threshold(ns, fs, eps);
  EXPECT_NEAR(fit.slope, b, 1e-10);
  EXPECT_NEAR(fit.intercept, a, 1e-10);
  ASSERT_TRUE(fit.n_max.has_value());
  EXPECT_NEAR(*fit.n_max, (std::log(eps) - a) / b, 1e-9);
}

TEST(FitThreshold, UnbracketedHasNoCrossing) {
  const ThresholdFit fit = fit_threshold({1, 2, 3}, {0.999, 0.998, 0.997}, 0.07);
  EXPECT_FALSE(fit.bracketed);
  EXPECT_FALSE(fit.n_max.has_value());
  EXPECT_THROW(fit_threshold({2, 2}, {0.9, 0.8}, 0.07), InvalidArgument);
  EXPECT_THROW(fit_threshold({1}, {0.9}, 0.07), InvalidArgument);
}

TEST(OptimizeFidelity, PicksMaximumWithEarliestTie) {
  FidelityTable table;
  table.n_grid = {1};
  table.t_grid = {3, 5};
  table.g_grid = {1.0, 2.0};
  for (double v : {0.4, 0.9, 0.9, 0.2}) {
    FidelityResult r;
    r.value = v;
    table.cells.push_back(r);
  }
  const OptimalFidelity best = optimize_fidelity(table, 0);
  EXPECT_EQ(best.t, 3);
  EXPECT_DOUBLE_EQ(best.g, 2.0);
  EXPECT_DOUBLE_EQ(best.f, 0.9);
}

TEST(OptimizeFidelity, SinglePointGrid) {
  FidelityTable table;
  table.n_grid = {1};
  table.t_grid = {7};
  table.g_grid = {0.5};
  FidelityResult r;
  r.value = 0.3;
  table.cells.push_back(r);
  const OptimalFidelity best = optimize_fidelity(table, 0);
  EXPECT_EQ(best.t, 7);
  EXPECT_DOUBLE_EQ(best.f, 0.3);
}

TEST(CapacitySpec, Validation) {
  CapacitySweepSpec spec;
  EXPECT_THROW(spec.validate(), InvalidArgument);
  spec.points = {{100, {1, 2}, {5}, {1.0}}};
  EXPECT_THROW(spec.validate(), InvalidArgument);
  spec.points = {{100, {1, 2, 3}, {5}, {1.0}}};
  EXPECT_NO_THROW(spec.validate());
  spec.p = 100;
  EXPECT_THROW(spec.validate(), InvalidArgument);
}

CapacitySweepSpec small_sweep() {
  CapacitySweepSpec spec;
  spec.num_sites = 20000;
  spec.p = 21;
  spec.realizations = 3;
  spec.qu_samples = 20;
  spec.seed = 4;
  std::vector<double> gs;
  for (double g = 4; g < 400; g *= 1.1) gs.push_back(g);
  spec.points = {{200, {1, 2, 4, 8}, {6, 7, 8, 9, 10, 11, 12}, gs}, {20000, {1, 2, 4}, {8, 9, 10, 11, 12}, gs}};
  return spec;
}

TEST(CapacitySweep, SmallSweepShape) {
  const CapacitySweepSpec spec = small_sweep();
  const CapacityResult result = capacity_sweep(spec);
  ASSERT_EQ(result.rows.size(), 2u);
  for (const auto& row : result.rows) {
    ASSERT_EQ(row.optima.size(), row.n_grid.size());
    for (const auto& o : row.optima) {
      EXPECT_GE(o.f, 0.0);
      EXPECT_LE(o.f, 1.0);
    }
  }
  // At small K one qubit clears the threshold and eight do not.
  const auto& small = result.rows[0];
  EXPECT_GE(small.optima.front().f, 1 - spec.epsilon_th);
  EXPECT_LT(small.optima.back().f, 1 - spec.epsilon_th);
  EXPECT_TRUE(small.fit.bracketed);
  EXPECT_GT(small.fit.slope, 0);
  EXPECT_FALSE(small.unbounded_in_grid);
  std::ostringstream out;
  write_capacity_csv(out, result);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "K,n_max,slope,intercept,t_star,g_star");
}

TEST(CapacitySweep, SerialParallelIdentical) {
  CapacitySweepSpec spec = small_sweep();
  spec.points.resize(1);
  const CapacityResult a = capacity_sweep(spec, Execution::serial);
  const CapacityResult b = capacity_sweep(spec, Execution::parallel);
  for (std::size_t i = 0; i < a.rows[0].optima.size(); ++i) EXPECT_EQ(a.rows[0].optima[i].f, b.rows[0].optima[i].f);
}

}  // namespace
}  // namespace teleport
