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

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "teleport/circuits.hpp"

namespace teleport {

/// Probability mass on ascending abscissae. SYK sizes live on the lattice
/// offset + spacing * n.
struct SizeDistribution {
  std::vector<double> values;
  std::vector<double> pmf;
  double tail_mass = 0;
  double offset = 0;
  double spacing = 1;

  double total() const;
  double mean() const;
  double width() const;
};

struct OverlapDistribution {
  std::size_t n = 0, r1 = 0, r2 = 0;
  SizeDistribution dist;
};

/// P[p] = C(N,p) C(N-p,R1-p) C(N-R1,R2-p) / (C(N,R1) C(N,R2)).
OverlapDistribution overlap_pmf(std::size_t n, std::size_t r1, std::size_t r2);

/// Hypergeometric K-size law C(S,n) C(N-S,K-n) / C(N,K).
SizeDistribution ksize_pmf(std::size_t n, std::size_t s, std::size_t k);

/// Negative binomial (Delta)_n / n! x^n (1-x)^Delta on sizes q n + p.
/// n_max = 0 picks a cutoff with tail below 1e-13.
SizeDistribution syk_size_pmf(double delta, double x, std::size_t n_max = 0, double q = 1, double p = 0);

/// Smallest W with mass on [mean - W, mean + W] at least 1 - epsilon.
double asymptotic_width(const SizeDistribution& dist, double epsilon);

/// Mass outside [mean - w, mean + w], tail included.
double mass_outside(const SizeDistribution& dist, double w);

enum class WidthConvention {
  /// W = eta * (mean - offset), the eta parameterization on the SYK lattice.
  lattice,
  /// W = asymptotic_width(eps(eta)) with eps(eta) the mass outside eta * mean.
  minimal,
};

struct BoundPoint {
  double eta = 0;
  double epsilon = 0;
  double w = 0;
  double b = 0;
};

struct PeakBoundResult {
  double epsilon = 0;
  double w_epsilon = 0;
  double b = 0;
  double eta_star = 0;
  std::vector<BoundPoint> scan;
};

/// B(eta) = 2 eps + |sin(g W / N)| over the grid, keeping points with
/// g W / N <= pi / 2.
PeakBoundResult peak_bound(const SizeDistribution& dist, double g, double n, const std::vector<double>& eta_grid,
                           WidthConvention convention = WidthConvention::lattice);

/// x -> 1 limit of the SYK bound: n (1 - x) is Gamma(Delta) distributed, so
/// B = 2 [P(Delta, Delta(1-eta)) + Q(Delta, Delta(1+eta))] + sin(pi eta).
PeakBoundResult peak_bound_gamma_limit(double delta, const std::vector<double>& eta_grid);

/// Large-Delta minimizer sqrt(log(8 Delta / pi^3) / Delta).
double eta_star_asymptotic(double delta);

struct FiniteTemperatureBound {
  double beta_j = 0;
  double x = 0;
  double shape = 0;
  double g_beta = 0;
  double shift = 0;
  PeakBoundResult bound;
  bool inconclusive = false;
};

/// Low-temperature comparison: size distribution with
/// x = sinh^2(pi t / beta) / ((pi / beta J)^2 + sinh^2(pi t / beta)), shape 2p/q,
/// shifted by n_sites * delta_beta, with g set so g (mean - shift - p) / N = pi.
/// Flags the bound as inconclusive when min B exceeds G_beta = (lambda / 2J)^{2p/q}.
FiniteTemperatureBound finite_temperature_bound(double p, double q, double beta_j, double jt, double n_sites,
                                                double delta_beta, const std::vector<double>& eta_grid);

struct KpzCoefficients {
  double bulk = 0;
  double boundary = 0;
  double t_scr = 0;
  double late_width = 0;
  double saturation_size = 0;
  double fit_r2 = 0;
};

/// 1D: width = (a_bulk + a_bnd) t^{1/2} before saturation, a_bulk t_scr^{1/2} after.
/// 2D: width = b_bulk t + b_bnd t^{7/6} before, b_bulk t_scr after.
/// t_scr is where the early growth law mean_size = a t^d meets the plateau.
KpzCoefficients kpz_extract(const SizeTrace& trace, int dimension);

/// Empirical frequencies on the abscissae of `exact`. Sample i is drawn from
/// stream (seed, i / 1024), so the histogram does not depend on the worker count.
/// Overlap: |R1 cap R2| for two uniformly random subsets of sizes R1, R2.
std::vector<double> sample_overlap(const OverlapDistribution& exact, std::size_t samples, std::uint64_t seed,
                                   Execution exec = Execution::parallel);

/// K-size of a uniformly random size-S Pauli string on a random K-site subsystem.
std::vector<double> sample_ksize(const SizeDistribution& exact, std::size_t n, std::size_t s, std::size_t k,
                                 std::size_t samples, std::uint64_t seed, Execution exec = Execution::parallel);

/// Half the L1 distance between the pmf and the empirical frequencies.
double total_variation(const SizeDistribution& exact, const std::vector<double>& freq);

void write_csv(std::ostream& out, const SizeDistribution& dist);
void write_csv(std::ostream& out, const PeakBoundResult& bound);

}  // namespace teleport
