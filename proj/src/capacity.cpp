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

#include "teleport/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "teleport/csv.hpp"
#include "teleport/errors.hpp"
#include "teleport/rng.hpp"

namespace teleport {

void CapacitySweepSpec::validate() const {
  require(!points.empty(), "capacity sweep needs at least one K");
  require(epsilon_th > 0 && epsilon_th < 1, "epsilon_th must lie in (0, 1)");
  require(p >= 1 && p % 2 == 1, "p must be odd");
  require(realizations >= 1 && qu_samples >= 1, "need realizations and samples");
  for (const auto& pt : points) {
    require(pt.k >= 1 && pt.k <= num_sites, "K must lie in [1, N]");
    require(pt.n_grid.size() >= 3, "each K needs at least three n points");
    require(!pt.t_grid.empty() && !pt.g_grid.empty(), "t and g grids must be non-empty");
    for (std::size_t n : pt.n_grid) require(n >= 1 && n * p <= num_sites, "n p must not exceed N");
  }
}

OptimalFidelity optimize_fidelity(const FidelityTable& table, std::size_t ni) {
  require(!table.t_grid.empty() && !table.g_grid.empty(), "grids must be non-empty");
  OptimalFidelity best;
  bool first = true;
  for (std::size_t ti = 0; ti < table.t_grid.size(); ++ti)
    for (std::size_t gi = 0; gi < table.g_grid.size(); ++gi) {
      const auto& c = table.at(ni, ti, gi);
      if (first || c.value > best.f) {
        best = {table.t_grid[ti], table.g_grid[gi], c.value, c.std_error};
        first = false;
      }
    }
  return best;
}

ThresholdFit fit_threshold(const std::vector<double>& n, const std::vector<double>& fidelity, double epsilon) {
  require(n.size() == fidelity.size() && n.size() >= 2, "need at least two (n, F) points");
  require(epsilon > 0 && epsilon < 1, "epsilon must lie in (0, 1)");
  // 1 - F below this floor is indistinguishable from a perfect fidelity.
  constexpr double kFloor = 1e-15;
  const double m = static_cast<double>(n.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  bool below = false, above = false;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double infidelity = std::max(1.0 - fidelity[i], kFloor);
    const double y = std::log(infidelity);
    sx += n[i];
    sy += y;
    sxx += n[i] * n[i];
    sxy += n[i] * y;
    (infidelity <= epsilon ? below : above) = true;
  }
  ThresholdFit fit;
  const double den = m * sxx - sx * sx;
  require(den > 0, "n values must not all coincide");
  fit.slope = (m * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / m;
  fit.bracketed = below && above;
  if (fit.bracketed && fit.slope > 0) fit.n_max = (std::log(epsilon) - fit.intercept) / fit.slope;
  return fit;
}

std::uint64_t capacity_seed(std::uint64_t seed, std::size_t index) { return mix_keys(seed, index, 0xca9ac17e); }

CapacityResult capacity_sweep(const CapacitySweepSpec& spec, Execution exec) {
  spec.validate();
  CapacityResult result;
  for (std::size_t i = 0; i < spec.points.size(); ++i) {
    const CapacityPoint& pt = spec.points[i];
    const std::size_t n_top = *std::max_element(pt.n_grid.begin(), pt.n_grid.end());
    TeleportSpec ts;
    ts.circuit.dimension = spec.dimension;
    ts.circuit.lx = spec.num_sites;
    ts.circuit.depth = *std::max_element(pt.t_grid.begin(), pt.t_grid.end());
    ts.circuit.seed = capacity_seed(spec.seed, i);
    ts.blocks = consecutive_blocks(spec.p, n_top);
    ts.subsystem = {SelectionKind::random, pt.k, 0};
    ts.kind = CouplingKind::size;
    ts.realizations = spec.realizations;
    const FidelityTable table = marginal_fidelity_scan(ts, pt.n_grid, 0, spec.qu_samples, pt.t_grid, pt.g_grid, exec);

    CapacityRow row;
    row.k = pt.k;
    row.n_grid = table.n_grid;
    std::vector<double> ns, fs;
    for (std::size_t ni = 0; ni < table.n_grid.size(); ++ni) {
      row.optima.push_back(optimize_fidelity(table, ni));
      ns.push_back(static_cast<double>(table.n_grid[ni]));
      fs.push_back(row.optima.back().f);
    }
    row.fit = fit_threshold(ns, fs, spec.epsilon_th);
    row.unbounded_in_grid = std::all_of(fs.begin(), fs.end(), [&](double f) { return 1 - f <= spec.epsilon_th; });
    const double target = row.fit.n_max.value_or(ns.back());
    std::size_t nearest = 0;
    for (std::size_t ni = 1; ni < ns.size(); ++ni)
      if (std::abs(ns[ni] - target) < std::abs(ns[nearest] - target)) nearest = ni;
    row.at_crossing = row.optima[nearest];
    result.rows.push_back(std::move(row));
  }

  double skk = 0, skn = 0;
  std::vector<std::pair<double, double>> pts;
  for (const auto& row : result.rows)
    if (row.fit.n_max) {
      const double k = static_cast<double>(row.k);
      skk += k * k;
      skn += k * *row.fit.n_max;
      pts.emplace_back(k, *row.fit.n_max);
    }
  result.fitted_rows = pts.size();
  if (pts.size() >= 2) {
    result.c = skn / skk;
    double mean = 0;
    for (const auto& [k, n] : pts) mean += n;
    mean /= static_cast<double>(pts.size());
    double ss_res = 0, ss_tot = 0;
    for (const auto& [k, n] : pts) {
      ss_res += (n - result.c * k) * (n - result.c * k);
      ss_tot += (n - mean) * (n - mean);
    }
    result.r2 = ss_tot > 0 ? 1 - ss_res / ss_tot : 0.0;
  }
  return result;
}

void write_capacity_csv(std::ostream& out, const CapacityResult& result) {
  out << "K,n_max,slope,intercept,t_star,g_star\n";
  for (const auto& row : result.rows) {
    out << row.k << ',' << (row.fit.n_max ? fmt_real(*row.fit.n_max) : std::string()) << ','
        << fmt_real(row.fit.slope) << ',' << fmt_real(row.fit.intercept) << ',' << row.at_crossing.t << ','
        << fmt_real(row.at_crossing.g) << '\n';
  }
}

}  // namespace teleport
