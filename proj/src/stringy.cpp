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

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "teleport/csv.hpp"
#include "teleport/errors.hpp"
#include "teleport/syk.hpp"

namespace teleport {

namespace {

constexpr double kDecades = 40;  // e-folds below the peak kept in the window
constexpr double kQuadTol = 1e-12;

/// E[exp(z k^e)] for k ~ Gamma(shape a, rate r).
struct GammaExpectation {
  double a;
  double r;
  double e;
  Complex z;

  /// Log of the integrand magnitude, normalization included.
  double log_weight(double k) const {
    return (a - 1) * std::log(k) - r * k + z.real() * std::pow(k, e) + a * std::log(r) - std::lgamma(a);
  }
};

std::string describe(const GammaExpectation& ge) {
  return "shape=" + fmt_real(ge.a) + " rate=" + fmt_real(ge.r) + " exponent=" + fmt_real(ge.e) +
         " z=(" + fmt_real(ge.z.real()) + "," + fmt_real(ge.z.imag()) + ")";
}

/// Upper end of the window: first k past `from` where the log weight drops
/// kDecades below `peak`.
double upper_cut(const GammaExpectation& ge, double from, double peak) {
  double hi = std::max(from, 1.0 / ge.r) * 2;
  while (ge.log_weight(hi) > peak - kDecades) {
    hi *= 2;
    if (!std::isfinite(hi)) throw NumericalFailure("stringy window does not close: " + describe(ge));
  }
  const auto f = [&](double k) { return ge.log_weight(k) - (peak - kDecades); };
  const auto done = [](double lo, double up) { return up - lo <= 1e-10 * up; };
  return boost::math::tools::bisect(f, std::max(from, hi / 2), hi, done).second;
}

Complex integrate(const GammaExpectation& ge) {
  using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
  double lo = 0, hi = 0;
  // Integrand as a function of the quadrature variable s, with k = s^{1/a}
  // when a < 1 to remove the endpoint singularity.
  const bool substitute = ge.a < 1;
  const auto phase_at = [&](double k) { return ge.z.imag() * std::pow(k, ge.e); };
  const auto magnitude_sub = [&](double s) {
    if (s <= 0) return 0.0;
    const double k = std::pow(s, 1 / ge.a);
    return std::exp(-ge.r * k + ge.z.real() * std::pow(k, ge.e) + ge.a * std::log(ge.r) - std::lgamma(ge.a)) /
           ge.a;
  };

  if (substitute) {
    const double ref = ge.log_weight(1 / ge.r);
    hi = std::pow(upper_cut(ge, 1 / ge.r, ref), ge.a);
  } else {
    // log_weight is concave for a >= 1 and e <= 1, so the peak is unique.
    const auto neg = [&](double y) { return -ge.log_weight(std::exp(y)); };
    const double centre = std::log(ge.a / ge.r);
    const auto [ymode, negpeak] = boost::math::tools::brent_find_minima(neg, centre - 60, centre + 60, 52);
    const double mode = std::exp(ymode);
    const double peak = -negpeak;
    hi = upper_cut(ge, mode, peak);
    if (ge.a > 1) {
      const auto f = [&](double k) { return ge.log_weight(k) - (peak - kDecades); };
      double down = mode / 2;
      while (down > 0 && ge.log_weight(down) > peak - kDecades) down /= 2;
      if (down > 0) {
        const auto done = [](double l, double u) { return u - l <= 1e-10 * u; };
        lo = boost::math::tools::bisect(f, down, std::min(mode, down * 2), done).first;
      }
    }
  }

  const auto k_of = [&](double s) { return substitute ? std::pow(s, 1 / ge.a) : s; };
  const auto mag = [&](double s) {
    if (substitute) return magnitude_sub(s);
    return s <= 0 ? (ge.a == 1 ? std::exp(ge.log_weight(1e-300)) : 0.0) : std::exp(ge.log_weight(s));
  };
  const auto re = [&](double s) { return mag(s) * std::cos(phase_at(k_of(s))); };
  const auto im = [&](double s) { return mag(s) * std::sin(phase_at(k_of(s))); };

  double err_re = 0, err_im = 0, l1_re = 0, l1_im = 0;
  const double vr = Quad::integrate(re, lo, hi, 30, kQuadTol, &err_re, &l1_re);
  const double vi = Quad::integrate(im, lo, hi, 30, kQuadTol, &err_im, &l1_im);
  const double scale = std::max(l1_re + l1_im, 1e-300);
  if (!std::isfinite(vr) || !std::isfinite(vi) || err_re + err_im > 1e-8 * scale)
    throw NumericalFailure("stringy quadrature did not converge on [" + fmt_real(lo) + ", " + fmt_real(hi) +
                           "]: error estimate " + fmt_real(err_re + err_im) + " vs L1 " + fmt_real(scale) + ", " +
                           describe(ge));
  return {vr, vi};
}

GammaExpectation expectation_for(const StringyParams& sp) {
  const double half = std::numbers::pi * sp.epsilon / 2;
  const Complex dir(std::sin(half), -std::cos(half));  // -i^{1+eps}
  const double coupling = sp.g * sp.g_n * sp.a_eps;
  if (sp.weight == StringyWeight::gravity)
    return {2 * sp.delta, 4.0, sp.epsilon, coupling * std::exp(sp.epsilon * sp.t) * dir};
  return {2 * sp.delta, 4.0 * std::exp(-sp.epsilon * sp.t), 1.0, coupling * dir};
}

}  // namespace

void StringyParams::validate() const {
  require(delta > 0, "Delta must be positive");
  require(epsilon >= 0 && epsilon <= 1, "epsilon must lie in [0, 1]");
  require(g_n >= 0, "G_N must be non-negative");
}

Complex stringy_closed_form(const StringyParams& sp) {
  sp.validate();
  const GammaExpectation ge = expectation_for(sp);
  require(ge.e == 1, "closed form needs eps = 1 or the modified weight");
  if (ge.z.real() >= ge.r)
    throw NumericalFailure("stringy correlator diverges: coupling reached the pole, " + describe(ge));
  return sp.two_point * std::pow(1.0 - ge.z / ge.r, -ge.a);
}

Complex stringy_correlator(const StringyParams& sp) {
  sp.validate();
  if (sp.g == 0 || sp.g_n == 0 || sp.a_eps == 0) return sp.two_point;
  const GammaExpectation ge = expectation_for(sp);
  if (ge.e == 1 && ge.z.real() >= ge.r)
    throw NumericalFailure("stringy correlator diverges: coupling reached the pole, " + describe(ge));
  return sp.two_point * integrate(ge);
}

}  // namespace teleport
