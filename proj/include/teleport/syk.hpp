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

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <vector>

namespace teleport {

using Complex = std::complex<double>;

/// Large-q SYK with p-body encoded operators.
struct SykParams {
  double n = 1;
  int q = 4;
  int p = 1;
  double j = 1;
  double beta = 0;
  double g = 0;

  void validate() const;
  /// Exponent 2p/q of the closed forms.
  double power() const { return 2.0 * p / q; }
};

/// Root u = lambda beta of u = 2 beta J cos(u / 4) in [0, 2 pi).
double solve_lyapunov(double beta_j);

/// lambda in units of J, equal to 2 cos(lambda beta / 4).
double lyapunov_over_j(double beta_j);

/// (lambda / 2J)^{2p/q}.
double two_point(const SykParams& params);

/// (1 + i (g/N) e^{2Jt} / 4)^{-2p/q}.
Complex correlator_infinite_T(const SykParams& params, double t);

enum class CorrelatorForm { leading, full };

/// With x = (J / 2 lambda) e^{lambda t} e^{i lambda beta / 4} and mu = g / N:
/// leading (-i G)^p (1 + i mu x)^{-2p/q},
/// full    (-i G)^p e^{-i mu p/q} (1 + (1 - e^{-i mu}) x)^{-2p/q}.
Complex correlator_finite_T(const SykParams& params, double t, CorrelatorForm form);

/// Evaluates the correlator over a time grid and throws NumericalFailure if the
/// base of the complex power crosses the principal branch cut between samples.
std::vector<Complex> correlator_scan(const SykParams& params, const std::vector<double>& t_grid,
                                     CorrelatorForm form);

struct WindingDistribution {
  /// f(q n + p) for n = 0 .. n_max.
  std::vector<Complex> values;
  double offset = 0;
  double spacing = 1;
  /// Size decay rate (2 lambda / J) e^{-lambda t} cos(lambda beta / 4).
  double gamma = 0;
  /// Winding coefficient with 2 alpha = (2 lambda / J) e^{-lambda t} sin(lambda beta / 4).
  double alpha = 0;
  /// Exact phase advance per step arg(x / (1 + x)); tends to 2 alpha at late times.
  double phase_step = 0;
  /// Bound on the neglected sum of |f| beyond n_max.
  double tail_bound = 0;
  bool truncated = false;

  double abs_sum() const;
};

/// Coefficients of the full correlator expanded in e^{-i g / N}:
/// f(qn + p) = i (-i G)^p (1 + x)^{-2p/q} C(n + 2p/q - 1, n) (x / (1 + x))^n.
/// n_max = 0 chooses the cutoff so the tail is below 1e-14 of the total; the
/// truncated flag marks a tail above 1e-8 of the total.
WindingDistribution winding_distribution(const SykParams& params, double t, std::size_t n_max = 0);

/// -i sum_n e^{-i (g / qN) S} f(S) with S = q n + p.
Complex resum_winding(const WindingDistribution& f, double g, double n_sites);

struct SizeMoments {
  double mean_size = 0;
  double size_width = 0;
  double gamma = 0;
};

/// (p/2)(2J/lambda)^2 e^{lambda t} and (sqrt(2qp)/4)(2J/lambda)^2 e^{lambda t}.
SizeMoments syk_size_moments(const SykParams& params, double t);

enum class StringyWeight {
  /// k ~ Gamma(2 Delta, rate 4) and a scattering phase in k^eps e^{eps t}.
  gravity,
  /// u = k^eps ~ Gamma(2 Delta, rate 4 e^{-eps t}) and a scattering phase linear in u.
  modified,
};

struct StringyParams {
  double delta = 1;
  double epsilon = 1;
  double g_n = 1;
  double a_eps = 1;
  double g = 0;
  double t = 0;
  /// Two-point prefactor <psi_l psi_r>.
  Complex two_point = 1.0;
  StringyWeight weight = StringyWeight::gravity;

  void validate() const;
};

/// Normalized quadrature of 4^{2D} / Gamma(2D) int dk k^{2D-1} e^{-4k}
/// exp(-i^{1+eps} g G_N A k^eps e^{eps t}), times the two-point prefactor.
/// Throws NumericalFailure when the integral diverges or fails to converge.
Complex stringy_correlator(const StringyParams& sp);

/// Exact value for eps = 1, or for the modified weight at any eps.
Complex stringy_closed_form(const StringyParams& sp);

void write_correlator_csv(std::ostream& out, const std::vector<double>& t_grid, const std::vector<Complex>& values);
void write_winding_csv(std::ostream& out, const WindingDistribution& f);

}  // namespace teleport
