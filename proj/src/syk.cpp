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

#include "teleport/syk.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "teleport/csv.hpp"
#include "teleport/errors.hpp"

namespace teleport {

namespace {

constexpr double kPi = std::numbers::pi;

/// (-i)^p without rounding.
Complex minus_i_pow(int p) {
  switch (((p % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, -1};
    case 2: return {-1, 0};
    default: return {0, 1};
  }
}

/// x = (J / 2 lambda) e^{lambda t} e^{i lambda beta / 4}.
Complex scramble_variable(const SykParams& params, double t) {
  const double u = solve_lyapunov(params.beta * params.j);
  const double lam = lyapunov_over_j(params.beta * params.j) * params.j;
  return std::polar(params.j / (2 * lam) * std::exp(lam * t), u / 4);
}

Complex correlator_base(const SykParams& params, double t, CorrelatorForm form) {
  const Complex x = scramble_variable(params, t);
  const double mu = params.g / params.n;
  if (form == CorrelatorForm::leading) return 1.0 + Complex(0, mu) * x;
  return 1.0 + (1.0 - std::polar(1.0, -mu)) * x;
}

}  // namespace

void SykParams::validate() const {
  require(q >= 4 && q % 2 == 0, "q must be even and at least 4");
  require(p >= 1, "p must be at least 1");
  require(j > 0, "J must be positive");
  require(beta >= 0, "beta must be non-negative");
  require(n > 0, "N must be positive");
}

double solve_lyapunov(double beta_j) {
  require(beta_j >= 0, "beta J must be non-negative");
  if (beta_j == 0) return 0;
  const auto f = [beta_j](double u) { return u - 2 * beta_j * std::cos(u / 4); };
  const auto done = [](double a, double b) { return std::abs(b - a) <= 1e-13 * std::abs(b); };
  const auto [lo, hi] = boost::math::tools::bisect(f, 0.0, 2 * kPi, done);
  return 0.5 * (lo + hi);
}

double lyapunov_over_j(double beta_j) { return 2 * std::cos(solve_lyapunov(beta_j) / 4); }

double two_point(const SykParams& params) {
  return std::pow(lyapunov_over_j(params.beta * params.j) / 2, params.power());
}

Complex correlator_infinite_T(const SykParams& params, double t) {
  params.validate();
  require(params.beta == 0, "infinite-temperature correlator needs beta = 0");
  const Complex base(1, params.g / params.n * std::exp(2 * params.j * t) / 4);
  return std::pow(base, -params.power());
}

Complex correlator_finite_T(const SykParams& params, double t, CorrelatorForm form) {
  params.validate();
  const Complex pre = minus_i_pow(params.p) * two_point(params);
  Complex value = pre * std::pow(correlator_base(params, t, form), -params.power());
  if (form == CorrelatorForm::full) value *= std::polar(1.0, -params.g / params.n * params.p / params.q);
  return value;
}

std::vector<Complex> correlator_scan(const SykParams& params, const std::vector<double>& t_grid,
                                     CorrelatorForm form) {
  std::vector<Complex> out;
  out.reserve(t_grid.size());
  Complex prev;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const Complex base = correlator_base(params, t_grid[i], form);
    if (i > 0 && (prev.imag() > 0) != (base.imag() > 0) && prev.real() < 0 && base.real() < 0)
      throw NumericalFailure("complex power crosses its branch cut between t = " + fmt_real(t_grid[i - 1]) +
                             " and t = " + fmt_real(t_grid[i]));
    prev = base;
    out.push_back(correlator_finite_T(params, t_grid[i], form));
  }
  return out;
}

double WindingDistribution::abs_sum() const {
  double s = 0;
  for (const auto& v : values) s += std::abs(v);
  return s;
}

WindingDistribution winding_distribution(const SykParams& params, double t, std::size_t n_max) {
  params.validate();
  constexpr std::size_t kCap = std::size_t{1} << 27;
  constexpr double kTailTol = 1e-8;
  constexpr double kAutoTol = 1e-14;
  const double m = params.power();
  const double lam_j = lyapunov_over_j(params.beta * params.j);
  const double lam = lam_j * params.j;
  const double quarter = solve_lyapunov(params.beta * params.j) / 4;
  const Complex x = scramble_variable(params, t);
  const Complex w = x / (1.0 + x);
  const double aw = std::abs(w);

  WindingDistribution out;
  out.offset = params.p;
  out.spacing = params.q;
  out.gamma = 2 * lam_j * std::exp(-lam * t) * std::cos(quarter);
  out.alpha = lam_j * std::exp(-lam * t) * std::sin(quarter);
  out.phase_step = std::arg(w);

  // Terms f_n, with |f_{n+1} / f_n| = |w| (n + m) / (n + 1) bounding the tail geometrically.
  const auto tail_after = [&](std::size_t n, double next_abs) {
    const double r_next = aw * (static_cast<double>(n) + 1 + m) / (static_cast<double>(n) + 2);
    const double r = std::max(aw, r_next);
    return r < 1 ? next_abs / (1 - r) : std::numeric_limits<double>::infinity();
  };

  Complex f = Complex(0, 1) * minus_i_pow(params.p) * two_point(params) * std::pow(1.0 + x, -m);
  double sum = 0;
  for (std::size_t n = 0;; ++n) {
    out.values.push_back(f);
    sum += std::abs(f);
    const Complex next = f * w * ((static_cast<double>(n) + m) / (static_cast<double>(n) + 1));
    const double tail = tail_after(n, std::abs(next));
    const bool stop = n_max != 0 ? n == n_max
                                 : (tail <= kAutoTol * sum && static_cast<double>(n) > m) || n + 1 == kCap;
    if (stop) {
      out.tail_bound = tail;
      break;
    }
    f = next;
  }
  out.truncated = out.tail_bound > kTailTol * sum;
  return out;
}

Complex resum_winding(const WindingDistribution& f, double g, double n_sites) {
  const double mu = g / n_sites;
  Complex s = 0;
  for (std::size_t n = 0; n < f.values.size(); ++n) {
    const double size = f.spacing * static_cast<double>(n) + f.offset;
    s += std::polar(1.0, -mu * size / f.spacing) * f.values[n];
  }
  return Complex(0, -1) * s;
}

SizeMoments syk_size_moments(const SykParams& params, double t) {
  params.validate();
  const double lam_j = lyapunov_over_j(params.beta * params.j);
  const double growth = std::exp(lam_j * params.j * t) * (4 / (lam_j * lam_j));
  SizeMoments m;
  m.mean_size = 0.5 * params.p * growth;
  m.size_width = std::sqrt(2.0 * params.q * params.p) / 4 * growth;
  m.gamma = lam_j * lam_j * std::exp(-lam_j * params.j * t);
  return m;
}

namespace {

void write_complex_row(std::ostream& out, const std::string& key, Complex v) {
  out << key << ',' << fmt_real(v.real()) << ',' << fmt_real(v.imag()) << ',' << fmt_real(std::abs(v)) << ','
      << fmt_real(std::arg(v)) << '\n';
}

}  // namespace

void write_correlator_csv(std::ostream& out, const std::vector<double>& t_grid, const std::vector<Complex>& values) {
  require(t_grid.size() == values.size(), "time grid and values differ in length");
  out << "t,re,im,abs,arg\n";
  for (std::size_t i = 0; i < values.size(); ++i) write_complex_row(out, fmt_real(t_grid[i]), values[i]);
}

void write_winding_csv(std::ostream& out, const WindingDistribution& f) {
  out << "n,re,im,abs,arg\n";
  for (std::size_t n = 0; n < f.values.size(); ++n) write_complex_row(out, std::to_string(n), f.values[n]);
}

}  // namespace teleport
