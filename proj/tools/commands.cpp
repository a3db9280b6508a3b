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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "teleport/analytics.hpp"
#include "teleport/capacity.hpp"
#include "teleport/csv.hpp"
#include "teleport/errors.hpp"
#include "teleport/fidelity.hpp"
#include "teleport/syk.hpp"

namespace teleport::cli {

namespace {

std::size_t positive(Fields& f, const std::string& key, std::uint64_t fallback) {
  const std::uint64_t v = f.unsigned_integer(key, fallback);
  if (v == 0) f.fail(key, "must be positive");
  return static_cast<std::size_t>(v);
}

std::size_t positive(Fields& f, const std::string& key) {
  const std::uint64_t v = f.unsigned_integer(key);
  if (v == 0) f.fail(key, "must be positive");
  return static_cast<std::size_t>(v);
}

std::vector<int> time_grid(Fields& f, const std::string& key) {
  std::vector<int> out;
  for (std::int64_t t : f.integers(key)) {
    if (t < 0 || t > 1000000) f.fail(key, "times must lie in [0, 10^6]");
    out.push_back(static_cast<int>(t));
  }
  if (out.empty()) f.fail(key, "must be non-empty");
  return out;
}

std::vector<double> nonempty_reals(Fields& f, const std::string& key) {
  auto v = f.reals(key);
  if (v.empty()) f.fail(key, "must be non-empty");
  return v;
}

std::vector<std::size_t> size_grid(Fields& f, const std::string& key) {
  std::vector<std::size_t> out;
  for (std::int64_t n : f.integers(key)) {
    if (n < 1) f.fail(key, "entries must be positive");
    out.push_back(static_cast<std::size_t>(n));
  }
  if (out.empty()) f.fail(key, "must be non-empty");
  return out;
}

CircuitSpec circuit_fields(Fields& f, std::uint64_t seed, int min_depth) {
  CircuitSpec c;
  c.dimension = static_cast<int>(f.integer("dimension"));
  if (c.dimension < 0 || c.dimension > 2) f.fail("dimension", "expected 0, 1 or 2");
  c.lx = positive(f, "lx");
  c.ly = positive(f, "ly", 1);
  const std::int64_t depth = f.integer("depth", min_depth);
  if (depth < min_depth) f.fail("depth", "must cover the largest requested time");
  c.depth = static_cast<int>(depth);
  c.boundary = f.choice("boundary", {"open", "periodic"}, "open") == "open" ? Boundary::open : Boundary::periodic;
  c.seed = seed;
  try {
    c.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(f.path_of("lx") + ": " + e.what());
  }
  return c;
}

SubsystemSpec subsystem_fields(Fields& parent, std::size_t num_sites) {
  Fields f = parent.object("subsystem", true);
  SubsystemSpec s;
  const std::string kind = f.choice("kind", {"all", "random", "contiguous"}, "all");
  s.kind = kind == "all" ? SelectionKind::all : kind == "random" ? SelectionKind::random : SelectionKind::contiguous;
  s.k = static_cast<std::size_t>(f.unsigned_integer("k", num_sites));
  if (s.k == 0 || s.k > num_sites) f.fail("k", "must lie in [1, N]");
  s.start = static_cast<Site>(f.unsigned_integer("start", 0));
  if (s.kind == SelectionKind::contiguous && s.start + s.k > num_sites) f.fail("start", "window exceeds the system");
  f.finish();
  return s;
}

/// Blocks of p sites starting at each listed site.
std::vector<std::vector<Site>> block_fields(Fields& f, std::size_t p, std::size_t count, std::size_t num_sites) {
  std::vector<std::int64_t> fallback;
  for (std::size_t b = 0; b < count; ++b) fallback.push_back(static_cast<std::int64_t>(b * p));
  std::vector<std::vector<Site>> blocks;
  for (std::int64_t s : f.integers("seed_sites", fallback)) {
    if (s < 0 || static_cast<std::size_t>(s) + p > num_sites) f.fail("seed_sites", "block outside the system");
    std::vector<Site> block;
    for (std::size_t i = 0; i < p; ++i) block.push_back(static_cast<Site>(static_cast<std::size_t>(s) + i));
    blocks.push_back(std::move(block));
  }
  if (blocks.empty()) f.fail("seed_sites", "must be non-empty");
  return blocks;
}

RunOutput run_ruc_size(const ExperimentConfig& cfg, Execution exec) {
  RunOutput out;
  Fields f(cfg.parameters, "parameters", out.resolved);
  SizeTraceSpec spec;
  spec.circuit = circuit_fields(f, cfg.seed, 0);
  const std::size_t p = positive(f, "p", 1);
  if (p % 2 == 0) f.fail("p", "must be odd");
  spec.seed_blocks = block_fields(f, p, 1, spec.circuit.num_sites());
  spec.subsystem = subsystem_fields(f, spec.circuit.num_sites());
  spec.realizations = positive(f, "realizations", 1);
  spec.stride = static_cast<int>(positive(f, "stride", 1));
  f.finish();
  const SizeTrace trace = size_trace(spec, exec);
  std::ostringstream csv;
  write_csv(csv, trace);
  out.csv = csv.str();
  out.summary["rows"] = trace.rows.size();
  return out;
}

RunOutput run_ruc_fidelity(const ExperimentConfig& cfg, Execution exec) {
  RunOutput out;
  Fields f(cfg.parameters, "parameters", out.resolved);
  const std::vector<int> t_grid = time_grid(f, "t_grid");
  const std::vector<double> g_grid = nonempty_reals(f, "g_grid");
  TeleportSpec spec;
  spec.circuit = circuit_fields(f, cfg.seed, *std::max_element(t_grid.begin(), t_grid.end()));
  const std::size_t p = positive(f, "p", 1);
  if (p % 2 == 0) f.fail("p", "must be odd");
  const std::size_t n = positive(f, "n", 1);
  spec.blocks = block_fields(f, p, n, spec.circuit.num_sites());
  if (spec.blocks.size() < n) f.fail("seed_sites", "fewer blocks than n");
  spec.subsystem = subsystem_fields(f, spec.circuit.num_sites());
  spec.kind = f.choice("coupling", {"size", "hpr"}, "size") == "size" ? CouplingKind::size : CouplingKind::hpr_projector;
  spec.realizations = positive(f, "realizations", 1);

  Fields sf = f.object("sampling", true);
  PauliSampling sampling;
  sampling.kind = sf.choice("kind", {"exhaustive", "random"}, "exhaustive") == "exhaustive" ? SamplingKind::exhaustive
                                                                                            : SamplingKind::random;
  sampling.count = static_cast<std::size_t>(sf.unsigned_integer("count", 0));
  sf.finish();
  if (sampling.kind == SamplingKind::exhaustive && n > 6) f.fail("n", "exhaustive sampling supports n <= 6");
  if (sampling.kind == SamplingKind::random && sampling.count == 0) f.fail("sampling.count", "must be positive");

  const bool marginal = f.has("marginal");
  std::size_t measured = 0, qu_samples = 100;
  std::vector<std::size_t> n_grid{n};
  if (marginal) {
    Fields mf = f.object("marginal");
    measured = static_cast<std::size_t>(mf.unsigned_integer("measured", 0));
    qu_samples = positive(mf, "qu_samples", 100);
    if (mf.has("n_grid")) n_grid = size_grid(mf, "n_grid");
    for (std::size_t m : n_grid)
      if (m > spec.blocks.size()) mf.fail("n_grid", "entries must not exceed the number of blocks");
    if (measured >= *std::min_element(n_grid.begin(), n_grid.end()))
      mf.fail("measured", "must be below every n in n_grid");
    mf.finish();
  }
  f.finish();

  const FidelityTable table = marginal ? marginal_fidelity_scan(spec, n_grid, measured, qu_samples, t_grid, g_grid, exec)
                                       : epr_fidelity_scan(spec, t_grid, g_grid, sampling, exec);
  std::ostringstream csv;
  write_fidelity_csv_header(csv);
  const std::string kind = kind_name(spec.kind);
  for (std::size_t ni = 0; ni < table.n_grid.size(); ++ni)
    for (std::size_t ti = 0; ti < table.t_grid.size(); ++ti)
      for (std::size_t gi = 0; gi < table.g_grid.size(); ++gi)
        write_fidelity_csv_row(csv, table.at(ni, ti, gi), kind, cfg.seed);
  out.csv = csv.str();
  out.summary["cells"] = table.cells.size();
  return out;
}

RunOutput run_capacity(const ExperimentConfig& cfg, Execution exec) {
  RunOutput out;
  Fields f(cfg.parameters, "parameters", out.resolved);
  CapacitySweepSpec spec;
  spec.seed = cfg.seed;
  spec.epsilon_th = f.real("epsilon_th", 0.07);
  if (!(spec.epsilon_th > 0 && spec.epsilon_th < 1)) f.fail("epsilon_th", "must lie in (0, 1)");
  spec.p = positive(f, "p", 101);
  if (spec.p % 2 == 0) f.fail("p", "must be odd");
  spec.num_sites = positive(f, "N", 1000000);
  spec.dimension = static_cast<int>(f.integer("dimension", 0));
  if (spec.dimension != 0) f.fail("dimension", "capacity sweeps run on 0D circuits");
  spec.realizations = positive(f, "realizations", 20);
  spec.qu_samples = positive(f, "qu_samples", 100);
  for (Fields& pf : f.objects("points")) {
    CapacityPoint pt;
    pt.k = positive(pf, "K");
    if (pt.k > spec.num_sites) pf.fail("K", "must not exceed N");
    pt.n_grid = size_grid(pf, "n_grid");
    if (pt.n_grid.size() < 3) pf.fail("n_grid", "needs at least three points");
    for (std::size_t n : pt.n_grid)
      if (n * spec.p > spec.num_sites) pf.fail("n_grid", "n p must not exceed N");
    pt.t_grid = time_grid(pf, "t_grid");
    pt.g_grid = nonempty_reals(pf, "g_grid");
    pf.finish();
    spec.points.push_back(std::move(pt));
  }
  if (spec.points.empty()) f.fail("points", "must be non-empty");
  f.finish();

  const CapacityResult result = capacity_sweep(spec, exec);
  std::ostringstream csv;
  write_capacity_csv(csv, result);
  out.csv = csv.str();
  Json rows = Json::array();
  for (const auto& row : result.rows) {
    Json r;
    r["K"] = row.k;
    r["n_max"] = row.fit.n_max ? Json(*row.fit.n_max) : Json(nullptr);
    r["slope"] = row.fit.slope;
    r["intercept"] = row.fit.intercept;
    r["bracketed"] = row.fit.bracketed;
    r["unbounded_in_grid"] = row.unbounded_in_grid;
    r["n_max_within_half_K"] = !row.fit.n_max || *row.fit.n_max <= 0.5 * static_cast<double>(row.k);
    Json optima = Json::array();
    for (std::size_t i = 0; i < row.optima.size(); ++i)
      optima.push_back({{"n", row.n_grid[i]},
                        {"t", row.optima[i].t},
                        {"g", row.optima[i].g},
                        {"F", row.optima[i].f},
                        {"std_error", row.optima[i].std_error}});
    r["optima"] = optima;
    rows.push_back(r);
  }
  out.summary["rows"] = rows;
  out.summary["c"] = result.c;
  out.summary["r2"] = result.r2;
  out.summary["fitted_rows"] = result.fitted_rows;
  return out;
}

SykParams syk_fields(Fields& f) {
  SykParams sp;
  sp.n = f.real("N", 1);
  sp.q = static_cast<int>(f.integer("q", 4));
  sp.p = static_cast<int>(f.integer("p", 1));
  sp.j = f.real("J", 1);
  sp.beta = f.real("beta", 0);
  sp.g = f.real("g", 0);
  try {
    sp.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(f.path_of("q") + ": " + e.what());
  }
  return sp;
}

RunOutput run_syk_correlator(const ExperimentConfig& cfg, Execution) {
  RunOutput out;
  Fields f(cfg.parameters, "parameters", out.resolved);
  const SykParams sp = syk_fields(f);
  const std::vector<double> t_grid = nonempty_reals(f, "t_grid");
  const std::string form = f.choice("form", {"infinite", "leading", "full"}, "full");
  if (form == "infinite" && sp.beta != 0) f.fail("form", "the infinite-temperature form needs beta = 0");
  f.finish();
  std::vector<Complex> values;
  if (form == "infinite") {
    for (double t : t_grid) values.push_back(correlator_infinite_T(sp, t));
  } else {
    values = correlator_scan(sp, t_grid, form == "leading" ? CorrelatorForm::leading : CorrelatorForm::full);
  }
  std::ostringstream csv;
  write_correlator_csv(csv, t_grid, values);
  out.csv = csv.str();
  out.summary["lambda_over_J"] = lyapunov_over_j(sp.beta * sp.j);
  out.summary["two_point"] = two_point(sp);
  return out;
}

RunOutput run_syk_winding(const ExperimentConfig& cfg, Execution) {
  RunOutput out;
  Fields f(cfg.parameters, "parameters", out.resolved);
  const SykParams sp = syk_fields(f);
  const double t = f.real("t");
  const std::size_t n_max = static_cast<std::size_t>(f.unsigned_integer("n_max", 0));
  f.finish();
  const WindingDistribution w = winding_distribution(sp, t, n_max);
  std::ostringstream csv;
  write_winding_csv(csv, w);
  out.csv = csv.str();
  out.summary["gamma"] = w.gamma;
  out.summary["alpha"] = w.alpha;
  out.summary["phase_step"] = w.phase_step;
  out.summary["tail_bound"] = w.tail_bound;
  out.summary["truncated"] = w.truncated;
  out.summary["abs_sum"] = w.abs_sum();
  return out;
}

RunOutput run_stringy(const ExperimentConfig& cfg, Execution) {
  RunOutput out;
  Fields f(cfg.parameters, "parameters", out.resolved);
  StringyParams sp;
  sp.delta = f.real("Delta");
  sp.epsilon = f.real("epsilon", 1);
  sp.g_n = f.real("G_N");
  sp.a_eps = f.real("A_eps", 1);
  sp.g = f.real("g");
  sp.two_point = f.real("two_point", 1);
  sp.weight = f.choice("weight", {"gravity", "modified"}, "gravity") == "gravity" ? StringyWeight::gravity
                                                                                   : StringyWeight::modified;
  const std::vector<double> t_grid = nonempty_reals(f, "t_grid");
  try {
    sp.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(f.path_of("epsilon") + ": " + e.what());
  }
  f.finish();
  std::vector<Complex> values;
  for (double t : t_grid) {
    sp.t = t;
    values.push_back(stringy_correlator(sp));
  }
  std::ostringstream csv;
  write_correlator_csv(csv, t_grid, values);
  out.csv = csv.str();
  return out;
}

std::vector<double> eta_fields(Fields& f) {
  if (f.has("eta_grid")) {
    auto v = nonempty_reals(f, "eta_grid");
    for (double e : v)
      if (!(e > 0)) f.fail("eta_grid", "entries must be positive");
    return v;
  }
  const std::size_t steps = positive(f, "eta_steps", 1000);
  const double top = f.real("eta_max", 0.5);
  if (!(top > 0)) f.fail("eta_max", "must be positive");
  std::vector<double> v;
  for (std::size_t i = 1; i <= steps; ++i) v.push_back(top * static_cast<double>(i) / static_cast<double>(steps));
  return v;
}

Json bound_summary(const PeakBoundResult& b) {
  return {{"min_B", b.b}, {"eta_star", b.eta_star}, {"epsilon", b.epsilon}, {"W", b.w_epsilon}};
}

RunOutput run_bound(const ExperimentConfig& cfg, Execution) {
  RunOutput out;
  Fields f(cfg.parameters, "parameters", out.resolved);
  const std::string mode = f.choice("mode", {"syk", "gamma-limit", "finite-temperature"}, "syk");
  PeakBoundResult bound;
  if (mode == "syk") {
    const double delta = f.real("Delta");
    const double x = f.real("x");
    const double n = f.real("N");
    const double q = f.real("q", 1);
    const double p = f.real("p", 0);
    const bool lattice = f.choice("convention", {"lattice", "minimal"}, "lattice") == "lattice";
    const bool has_g = f.has("g");
    const double g_in = f.real("g", 0);
    const std::vector<double> eta = eta_fields(f);
    f.finish();
    if (!(delta > 0)) throw ConfigError("parameters.Delta: must be positive");
    if (!(x >= 0 && x < 1)) throw ConfigError("parameters.x: must lie in [0, 1)");
    const SizeDistribution d = syk_size_pmf(delta, x, 0, q, p);
    const double g = has_g ? g_in : std::numbers::pi * n / (d.mean() - d.offset);
    bound = peak_bound(d, g, n, eta, lattice ? WidthConvention::lattice : WidthConvention::minimal);
    out.summary = bound_summary(bound);
    out.summary["g"] = g;
  } else if (mode == "gamma-limit") {
    const double delta = f.real("Delta");
    const std::vector<double> eta = eta_fields(f);
    f.finish();
    if (!(delta > 0)) throw ConfigError("parameters.Delta: must be positive");
    bound = peak_bound_gamma_limit(delta, eta);
    out.summary = bound_summary(bound);
    if (8 * delta > std::pow(std::numbers::pi, 3)) out.summary["eta_star_asymptotic"] = eta_star_asymptotic(delta);
  } else {
    const double p = f.real("p");
    const double q = f.real("q", 4);
    const double beta_j = f.real("beta_J");
    const double jt = f.real("Jt");
    const double n = f.real("N");
    const double delta_beta = f.real("delta_beta", 0);
    const std::vector<double> eta = eta_fields(f);
    f.finish();
    const FiniteTemperatureBound ft = finite_temperature_bound(p, q, beta_j, jt, n, delta_beta, eta);
    bound = ft.bound;
    out.summary = bound_summary(bound);
    out.summary["x"] = ft.x;
    out.summary["G_beta"] = ft.g_beta;
    out.summary["inconclusive"] = ft.inconclusive;
  }
  std::ostringstream csv;
  write_csv(csv, bound);
  out.csv = csv.str();
  return out;
}

RunOutput run_overlap_oracle(const ExperimentConfig& cfg, Execution exec) {
  RunOutput out;
  Fields f(cfg.parameters, "parameters", out.resolved);
  const std::string kind = f.choice("kind", {"overlap", "ksize"}, "overlap");
  const std::size_t n = positive(f, "N");
  const std::size_t samples = positive(f, "samples", 100000);
  SizeDistribution exact;
  std::vector<double> freq;
  if (kind == "overlap") {
    const std::size_t r1 = static_cast<std::size_t>(f.unsigned_integer("R1"));
    const std::size_t r2 = static_cast<std::size_t>(f.unsigned_integer("R2"));
    f.finish();
    if (r1 > n || r2 > n) throw ConfigError("parameters.R1: R1 and R2 must not exceed N");
    const OverlapDistribution od = overlap_pmf(n, r1, r2);
    exact = od.dist;
    freq = sample_overlap(od, samples, cfg.seed, exec);
  } else {
    const std::size_t s = static_cast<std::size_t>(f.unsigned_integer("S"));
    const std::size_t k = static_cast<std::size_t>(f.unsigned_integer("K"));
    f.finish();
    if (s > n || k > n) throw ConfigError("parameters.S: S and K must not exceed N");
    exact = ksize_pmf(n, s, k);
    freq = sample_ksize(exact, n, s, k, samples, cfg.seed, exec);
  }
  std::ostringstream csv;
  csv << "value,exact,sampled\n";
  for (std::size_t i = 0; i < freq.size(); ++i)
    csv << fmt_real(exact.values[i]) << ',' << fmt_real(exact.pmf[i]) << ',' << fmt_real(freq[i]) << '\n';
  out.csv = csv.str();
  out.summary["total_variation"] = total_variation(exact, freq);
  out.summary["exact_mean"] = exact.mean();
  out.summary["exact_width"] = exact.width();
  return out;
}

}  // namespace

RunOutput run_command(const ExperimentConfig& config, Execution exec) {
  const std::string& s = config.subcommand;
  if (s == "ruc-size") return run_ruc_size(config, exec);
  if (s == "ruc-fidelity") return run_ruc_fidelity(config, exec);
  if (s == "capacity") return run_capacity(config, exec);
  if (s == "syk-correlator") return run_syk_correlator(config, exec);
  if (s == "syk-winding") return run_syk_winding(config, exec);
  if (s == "stringy") return run_stringy(config, exec);
  if (s == "bound") return run_bound(config, exec);
  if (s == "overlap-oracle") return run_overlap_oracle(config, exec);
  throw ConfigError("subcommand: unknown subcommand \"" + s + "\"");
}

}  // namespace teleport::cli
