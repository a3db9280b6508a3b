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

#include "teleport/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "teleport/csv.hpp"
#include "teleport/errors.hpp"
#include "teleport/pauli.hpp"
#include "teleport/rng.hpp"
#include "teleport/syk.hpp"

namespace teleport {

namespace {

double log_choose(double n, double k) { return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1); }

/// Exponentiates log weights relative to their maximum and normalizes.
std::vector<double> normalize_logs(const std::vector<double>& logs) {
  const double m = *std::max_element(logs.begin(), logs.end());
  std::vector<double> out(logs.size());
  double s = 0;
  for (std::size_t i = 0; i < logs.size(); ++i) s += (out[i] = std::exp(logs[i] - m));
  for (auto& v : out) v /= s;
  return out;
}

}  // namespace

double SizeDistribution::total() const {
  double s = tail_mass;
  for (double p : pmf) s += p;
  return s;
}

double SizeDistribution::mean() const {
  double s = 0, w = 0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    s += values[i] * pmf[i];
    w += pmf[i];
  }
  return s / w;
}

double SizeDistribution::width() const {
  const double m = mean();
  double s = 0, w = 0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    s += (values[i] - m) * (values[i] - m) * pmf[i];
    w += pmf[i];
  }
  return std::sqrt(s / w);
}

OverlapDistribution overlap_pmf(std::size_t n, std::size_t r1, std::size_t r2) {
  require(r1 <= n && r2 <= n, "overlap_pmf needs R1, R2 <= N");
  const std::size_t lo = r1 + r2 > n ? r1 + r2 - n : 0;
  const std::size_t hi = std::min(r1, r2);
  const double N = static_cast<double>(n), R1 = static_cast<double>(r1), R2 = static_cast<double>(r2);
  const double norm = log_choose(N, R1) + log_choose(N, R2);
  std::vector<double> logs;
  OverlapDistribution out{n, r1, r2, {}};
  for (std::size_t p = lo; p <= hi; ++p) {
    const double P = static_cast<double>(p);
    logs.push_back(log_choose(N, P) + log_choose(N - P, R1 - P) + log_choose(N - R1, R2 - P) - norm);
    out.dist.values.push_back(P);
  }
  out.dist.pmf = normalize_logs(logs);
  return out;
}

SizeDistribution ksize_pmf(std::size_t n, std::size_t s, std::size_t k) {
  require(s <= n && k <= n, "ksize_pmf needs S, K <= N");
  const std::size_t lo = s + k > n ? s + k - n : 0;
  const std::size_t hi = std::min(s, k);
  const double N = static_cast<double>(n), S = static_cast<double>(s), K = static_cast<double>(k);
  SizeDistribution d;
  std::vector<double> logs;
  for (std::size_t m = lo; m <= hi; ++m) {
    const double M = static_cast<double>(m);
    logs.push_back(log_choose(S, M) + log_choose(N - S, K - M) - log_choose(N, K));
    d.values.push_back(M);
  }
  d.pmf = normalize_logs(logs);
  return d;
}

SizeDistribution syk_size_pmf(double delta, double x, std::size_t n_max, double q, double p) {
  require(delta > 0, "Delta must be positive");
  require(x >= 0 && x < 1, "x must lie in [0, 1)");
  SizeDistribution d;
  d.offset = p;
  d.spacing = q;
  if (x == 0) {
    d.values = {p};
    d.pmf = {1.0};
    return d;
  }
  if (n_max == 0) {
    const double mean = delta * x / (1 - x);
    const double sd = std::sqrt(delta * x) / (1 - x);
    n_max = static_cast<std::size_t>(std::ceil(mean + 60 * sd + 200 + 40 / (1 - x)));
  }
  const double base = -std::lgamma(delta) + delta * std::log1p(-x);
  const double lx = std::log(x);
  double mass = 0;
  d.values.resize(n_max + 1);
  d.pmf.resize(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double N = static_cast<double>(n);
    const double v = std::exp(base + std::lgamma(N + delta) - std::lgamma(N + 1) + N * lx);
    d.values[n] = q * N + p;
    d.pmf[n] = v;
    mass += v;
  }
  // Upper tail of the negative binomial: P(n > n_max) = I_x(n_max + 1, Delta).
  d.tail_mass = boost::math::ibeta(static_cast<double>(n_max + 1), delta, x);
  // Rounding in the summed terms is absorbed so that pmf + tail is exactly normalized.
  const double scale = (1.0 - d.tail_mass) / mass;
  for (auto& v : d.pmf) v *= scale;
  return d;
}

namespace {

/// Mass inside [mean - w, mean + w] from cumulative sums over ascending abscissae.
class WindowMass {
 public:
  explicit WindowMass(const SizeDistribution& dist) : dist_(dist), mean_(dist.mean()), cum_(dist.pmf.size() + 1, 0.0) {
    for (std::size_t i = 0; i < dist.pmf.size(); ++i) cum_[i + 1] = cum_[i] + dist.pmf[i];
  }

  double outside(double w) const {
    const auto& v = dist_.values;
    const auto lo = std::lower_bound(v.begin(), v.end(), mean_ - w);
    const auto hi = std::upper_bound(v.begin(), v.end(), mean_ + w);
    const double inside = cum_[static_cast<std::size_t>(hi - v.begin())] - cum_[static_cast<std::size_t>(lo - v.begin())];
    return std::max(0.0, 1.0 - inside);
  }

  double mean() const { return mean_; }

 private:
  const SizeDistribution& dist_;
  double mean_;
  std::vector<double> cum_;
};

}  // namespace

double mass_outside(const SizeDistribution& dist, double w) { return WindowMass(dist).outside(w); }

double asymptotic_width(const SizeDistribution& dist, double epsilon) {
  require(epsilon >= 0 && epsilon < 1, "epsilon must lie in [0, 1)");
  const double m = dist.mean();
  std::vector<std::pair<double, double>> by_distance;
  by_distance.reserve(dist.pmf.size());
  for (std::size_t i = 0; i < dist.pmf.size(); ++i) by_distance.emplace_back(std::abs(dist.values[i] - m), dist.pmf[i]);
  std::sort(by_distance.begin(), by_distance.end());
  const double target = 1.0 - epsilon;
  double cum = 0;
  for (std::size_t i = 0; i < by_distance.size(); ++i) {
    cum += by_distance[i].second;
    const bool last_at_distance = i + 1 == by_distance.size() || by_distance[i + 1].first != by_distance[i].first;
    if (last_at_distance && cum >= target * (1 - 1e-14)) return by_distance[i].first;
  }
  return by_distance.back().first;
}

PeakBoundResult peak_bound(const SizeDistribution& dist, double g, double n, const std::vector<double>& eta_grid,
                           WidthConvention convention) {
  require(n > 0, "N must be positive");
  PeakBoundResult out;
  out.b = std::numeric_limits<double>::infinity();
  const WindowMass window(dist);
  const double m = window.mean();
  const double half_pi = std::numbers::pi / 2;
  for (double eta : eta_grid) {
    if (eta <= 0) continue;
    const double w_eta = convention == WidthConvention::lattice ? eta * (m - dist.offset) : eta * m;
    BoundPoint pt;
    pt.eta = eta;
    pt.epsilon = window.outside(w_eta);
    pt.w = convention == WidthConvention::lattice ? w_eta : asymptotic_width(dist, std::min(pt.epsilon, 1.0 - 1e-15));
    if (std::abs(g) * pt.w / n > half_pi) continue;
    pt.b = 2 * pt.epsilon + std::abs(std::sin(g * pt.w / n));
    out.scan.push_back(pt);
    if (pt.b < out.b) {
      out.b = pt.b;
      out.eta_star = eta;
      out.epsilon = pt.epsilon;
      out.w_epsilon = pt.w;
    }
  }
  require(!out.scan.empty(), "no grid point satisfies g W / N <= pi / 2");
  return out;
}

PeakBoundResult peak_bound_gamma_limit(double delta, const std::vector<double>& eta_grid) {
  require(delta > 0, "Delta must be positive");
  PeakBoundResult out;
  out.b = std::numeric_limits<double>::infinity();
  for (double eta : eta_grid) {
    if (eta <= 0 || eta > 0.5) continue;
    BoundPoint pt;
    pt.eta = eta;
    pt.epsilon = boost::math::gamma_p(delta, delta * (1 - eta)) + boost::math::gamma_q(delta, delta * (1 + eta));
    pt.w = eta;
    pt.b = 2 * pt.epsilon + std::sin(std::numbers::pi * eta);
    out.scan.push_back(pt);
    if (pt.b < out.b) {
      out.b = pt.b;
      out.eta_star = eta;
      out.epsilon = pt.epsilon;
      out.w_epsilon = eta;
    }
  }
  require(!out.scan.empty(), "eta grid has no point in (0, 1/2]");
  return out;
}

double eta_star_asymptotic(double delta) {
  const double pi3 = std::pow(std::numbers::pi, 3);
  require(8 * delta > pi3, "asymptotic minimizer needs 8 Delta > pi^3");
  return std::sqrt(std::log(8 * delta / pi3) / delta);
}

FiniteTemperatureBound finite_temperature_bound(double p, double q, double beta_j, double jt, double n_sites,
                                                double delta_beta, const std::vector<double>& eta_grid) {
  require(beta_j > 0, "finite-temperature bound needs beta J > 0");
  require(p >= 1 && q >= 2, "need p >= 1 and q >= 2");
  FiniteTemperatureBound out;
  out.beta_j = beta_j;
  out.shape = 2 * p / q;
  const double s = std::sinh(std::numbers::pi * jt / beta_j);
  const double a = std::numbers::pi / beta_j;
  out.x = s * s / (a * a + s * s);
  require(out.x < 1, "time too late: x rounds to 1");
  out.shift = n_sites * delta_beta;
  SizeDistribution d = syk_size_pmf(out.shape, out.x, 0, q, p + out.shift);
  const double g = std::numbers::pi * n_sites / (d.mean() - d.offset);
  out.bound = peak_bound(d, g, n_sites, eta_grid, WidthConvention::lattice);
  out.g_beta = std::pow(lyapunov_over_j(beta_j) / 2, out.shape);
  out.inconclusive = out.bound.b > out.g_beta;
  return out;
}

namespace {

double sum_sq_ratio(const std::vector<double>& y, const std::vector<double>& f) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    num += y[i] * f[i];
    den += f[i] * f[i];
  }
  return den > 0 ? num / den : 0.0;
}

}  // namespace

KpzCoefficients kpz_extract(const SizeTrace& trace, int dimension) {
  require(dimension == 1 || dimension == 2, "KPZ extraction needs dimension 1 or 2");
  const auto& rows = trace.rows;
  if (rows.size() < 8) throw InsufficientData("trace too short for KPZ extraction");
  const double growth = dimension == 1 ? 1.0 : 2.0;
  const double bulk_exp = dimension == 1 ? 0.5 : 1.0;
  const double bnd_exp = dimension == 1 ? 0.5 : 7.0 / 6.0;

  KpzCoefficients out;
  const std::size_t quarter = std::max<std::size_t>(3, rows.size() / 4);
  for (std::size_t i = rows.size() - quarter; i < rows.size(); ++i) out.saturation_size += rows[i].mean_size;
  out.saturation_size /= static_cast<double>(quarter);

  std::vector<double> s, f;
  for (const auto& r : rows)
    if (r.t > 0 && r.mean_size <= 0.5 * out.saturation_size) {
      s.push_back(r.mean_size);
      f.push_back(std::pow(r.t, growth));
    }
  if (s.size() < 2) throw InsufficientData("not enough early-growth points to locate the scrambling time");
  const double a = sum_sq_ratio(s, f);
  out.t_scr = std::pow(out.saturation_size / a, 1.0 / growth);

  double late = 0;
  std::size_t nlate = 0;
  for (const auto& r : rows)
    if (r.t >= 1.5 * out.t_scr) {
      late += r.size_width;
      ++nlate;
    }
  if (nlate < 3) throw InsufficientData("width plateau not reached: trace ends before 1.5 t_scr");
  out.late_width = late / static_cast<double>(nlate);
  out.bulk = out.late_width / std::pow(out.t_scr, bulk_exp);

  std::vector<double> resid, basis, width, model_bulk;
  for (const auto& r : rows)
    if (r.t > 0 && r.t <= 0.75 * out.t_scr) {
      resid.push_back(r.size_width - out.bulk * std::pow(r.t, bulk_exp));
      basis.push_back(std::pow(r.t, bnd_exp));
      width.push_back(r.size_width);
      model_bulk.push_back(out.bulk * std::pow(r.t, bulk_exp));
    }
  if (resid.size() < 2) throw InsufficientData("not enough pre-saturation points for the boundary fit");
  out.boundary = sum_sq_ratio(resid, basis);

  double mean_w = 0;
  for (double w : width) mean_w += w;
  mean_w /= static_cast<double>(width.size());
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < width.size(); ++i) {
    const double pred = model_bulk[i] + out.boundary * basis[i];
    ss_res += (width[i] - pred) * (width[i] - pred);
    ss_tot += (width[i] - mean_w) * (width[i] - mean_w);
  }
  out.fit_r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return out;
}

namespace {

constexpr std::size_t kChunk = 1024;

/// Histogram of draw(rng) over `samples` draws, counted in fixed chunks.
template <typename Draw>
std::vector<double> chunked_histogram(const SizeDistribution& exact, std::size_t samples, std::uint64_t seed,
                                      Execution exec, Draw draw) {
  require(samples >= 1, "need at least one sample");
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  const long long first = static_cast<long long>(exact.values.front());
  std::vector<std::vector<std::uint64_t>> counts(chunks, std::vector<std::uint64_t>(exact.values.size(), 0));
#pragma omp parallel for schedule(dynamic, 1) if (exec == Execution::parallel)
  for (std::size_t c = 0; c < chunks; ++c) {
    Rng rng = make_stream(seed, c);
    const std::size_t end = std::min(samples, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      const long long v = static_cast<long long>(draw(rng)) - first;
      if (v >= 0 && static_cast<std::size_t>(v) < counts[c].size()) ++counts[c][static_cast<std::size_t>(v)];
    }
  }
  std::vector<double> freq(exact.values.size(), 0.0);
  for (const auto& cc : counts)
    for (std::size_t i = 0; i < cc.size(); ++i) freq[i] += static_cast<double>(cc[i]);
  for (auto& f : freq) f /= static_cast<double>(samples);
  return freq;
}

}  // namespace

std::vector<double> sample_overlap(const OverlapDistribution& exact, std::size_t samples, std::uint64_t seed,
                                   Execution exec) {
  return chunked_histogram(exact.dist, samples, seed, exec, [&](Rng& rng) {
    const SiteSet a = SiteSet::random(exact.n, exact.r1, rng);
    const SiteSet b = SiteSet::random(exact.n, exact.r2, rng);
    std::size_t both = 0;
    for (Site s : b.sites) both += a.contains(s) ? 1 : 0;
    return both;
  });
}

std::vector<double> sample_ksize(const SizeDistribution& exact, std::size_t n, std::size_t s, std::size_t k,
                                 std::size_t samples, std::uint64_t seed, Execution exec) {
  return chunked_histogram(exact, samples, seed, exec, [&](Rng& rng) {
    const PauliString p = random_pauli_of_size(s, n, rng);
    const SiteSet c = SiteSet::random(n, k, rng);
    return teleport::k_size(p, c);
  });
}

double total_variation(const SizeDistribution& exact, const std::vector<double>& freq) {
  require(freq.size() == exact.pmf.size(), "histogram and pmf differ in length");
  double s = 0;
  for (std::size_t i = 0; i < freq.size(); ++i) s += std::abs(freq[i] - exact.pmf[i]);
  return 0.5 * s;
}

void write_csv(std::ostream& out, const SizeDistribution& dist) {
  out << "abscissa,probability\n";
  for (std::size_t i = 0; i < dist.pmf.size(); ++i) out << fmt_real(dist.values[i]) << ',' << fmt_real(dist.pmf[i]) << '\n';
}

void write_csv(std::ostream& out, const PeakBoundResult& bound) {
  out << "eta,epsilon,W,B\n";
  for (const auto& p : bound.scan)
    out << fmt_real(p.eta) << ',' << fmt_real(p.epsilon) << ',' << fmt_real(p.w) << ',' << fmt_real(p.b) << '\n';
}

}  // namespace teleport
