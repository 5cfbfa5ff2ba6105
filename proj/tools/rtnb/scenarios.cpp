// Copyright 2026 The rtnb Authors
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

#include "scenarios.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "rtnb/noise.hpp"
#include "rtnb/nonmarkov.hpp"
#include "rtnb/qec.hpp"
#include "rtnb/states.hpp"
#include "rtnb/trajectories.hpp"
#include "rtnb/wigner.hpp"

namespace rtnb::cli {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

FockDim read_dim(ScenarioConfig& cfg, long fallback) {
  return FockDim(static_cast<int>(cfg.integer("d", fallback, 2, 200)));
}

BlpOptions read_blp_options(ScenarioConfig& cfg) {
  BlpOptions o;
  o.horizon = cfg.real("horizon", o.horizon, 1e-6, 1e6);
  o.step = cfg.real("step", o.step, 1e-6, 1e3);
  o.envelope_floor = cfg.real("envelope_floor", o.envelope_floor, 0.0, 1.0);
  o.quiet_window = cfg.real("quiet_window", o.quiet_window, 0.0, 1e6);
  o.tail_fraction = cfg.real("tail_fraction", o.tail_fraction, 0.0, 1.0);
  return o;
}

// Channel family tau -> E_tau for the dephasing models.
struct NoiseModel {
  std::string kind;  // rtn, gaussian, oneoverf, none
  double r = 1.0;
  OneOverFParams f;

  Channel at(double tau, FockDim d) const {
    if (kind == "rtn") return rtn_channel({r, tau}, d);
    if (kind == "gaussian") return gaussian_dephasing_channel({tau / r}, d);
    if (kind == "oneoverf") {
      OneOverFParams p = f;
      p.tau = tau;
      return oneoverf_channel(p, d);
    }
    return Channel::identity(d);
  }

  double factor(double a, double tau) const {
    if (kind == "rtn") return rtn_dephasing_factor(a, r, tau);
    if (kind == "gaussian") return gaussian_dephasing_factor(a, tau / r);
    if (kind == "oneoverf") {
      OneOverFParams p = f;
      p.tau = tau;
      return one_over_f_factor(a, p);
    }
    return 1.0;
  }
};

OneOverFParams read_oneoverf(ScenarioConfig& cfg) {
  OneOverFParams p;
  p.r_min = cfg.real("r_min", p.r_min, 1e-12, 1e12);
  p.r_max = cfg.real("r_max", p.r_max, 1e-12, 1e12);
  p.normalize_coupling = cfg.flag("normalize_coupling", p.normalize_coupling);
  if (!(p.r_min < p.r_max)) throw ConfigError(cfg.origin() + ": field 'r_max': must exceed r_min");
  return p;
}

void common_meta(ResultTable& t, const std::string& scenario, const ScenarioConfig& cfg,
                 const RunOptions& opts) {
  t.meta("rtnb_version", RTNB_VERSION);
  t.meta("scenario", scenario);
  t.meta("config", cfg.origin());
  t.meta("config_hash_fnv1a64", hex64(cfg.hash()));
  t.meta("seed", std::to_string(opts.seed));
}

// ---------------------------------------------------------------- dephasing

ResultTable run_dephasing(ScenarioConfig& cfg, const RunOptions& opts) {
  NoiseModel model;
  model.kind = cfg.choice("model", "rtn", {"rtn", "gaussian", "oneoverf"});
  const auto as = cfg.int_grid("a", -1000, 1000, {1});
  const auto rs = model.kind == "oneoverf" ? std::vector<double>{kNaN}
                                           : cfg.real_grid("r", 0.0, 1e8, {1.0});
  const auto taus = cfg.real_grid("tau", 0.0, 1e6);
  if (model.kind == "oneoverf") {
    model.f = read_oneoverf(cfg);
    model.f.n_f = static_cast<int>(cfg.integer("n_f", 1, 1, 100000));
  }
  const long mc = cfg.integer("mc_samples", 0, 0, 100000000);
  if (mc > 0 && mc < 1000) throw ConfigError(cfg.origin() + ": field 'mc_samples': use 0 or >= 1000");
  if (mc > 0 && model.kind == "gaussian") {
    throw ConfigError(cfg.origin() + ": field 'mc_samples': no trajectory oracle for gaussian");
  }
  cfg.reject_unused();

  struct Point {
    long a;
    double r, tau;
  };
  std::vector<Point> grid;
  for (long a : as)
    for (double r : rs)
      for (double tau : taus) grid.push_back({a, r, tau});

  struct Row {
    double analytic;
    McEstimate est;
  };
  const auto rows = parallel_map<Row>(grid.size(), opts.workers, [&](std::size_t i) {
    const Point& p = grid[i];
    NoiseModel m = model;
    if (m.kind != "oneoverf") m.r = p.r;
    Row row{m.factor(static_cast<double>(p.a), p.tau), {}};
    if (mc > 0) {
      const std::uint64_t s = derive_seed(opts.seed, i);
      row.est = m.kind == "rtn" ? mc_dephasing_factor(p.a, p.r, p.tau, mc, s)
                                : [&] {
                                    OneOverFParams f = m.f;
                                    f.tau = p.tau;
                                    return mc_one_over_f_factor(p.a, f, mc, s);
                                  }();
    }
    return row;
  });

  ResultTable t;
  common_meta(t, "dephasing", cfg, opts);
  t.meta("model", model.kind);
  if (model.kind == "oneoverf") {
    t.meta("n_f", std::to_string(model.f.n_f));
    t.meta("r_min", format_real(model.f.r_min));
    t.meta("r_max", format_real(model.f.r_max));
    t.meta("normalize_coupling", model.f.normalize_coupling ? "true" : "false");
  }
  if (mc > 0) {
    t.meta("mc_samples", std::to_string(mc));
    t.meta("point_seed", "splitmix64(seed + 0x9e3779b97f4a7c15 * (row + 1))");
  }
  t.columns = {"a", "r", "tau", "analytic"};
  if (mc > 0) t.columns.insert(t.columns.end(), {"mc_re", "mc_im", "mc_std_error", "mc_z"});
  long within = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<Cell> row{grid[i].a, grid[i].r, grid[i].tau, rows[i].analytic};
    if (mc > 0) {
      const auto& e = rows[i].est;
      const double dev = std::abs(e.mean.real() - rows[i].analytic);
      const double z = e.std_error > 0 ? dev / e.std_error : (dev == 0.0 ? 0.0 : kInf);
      if (z <= 3.0) ++within;
      row.insert(row.end(), {e.mean.real(), e.mean.imag(), e.std_error, z});
    }
    t.rows.push_back(std::move(row));
  }
  if (mc > 0) {
    t.meta("fraction_within_3_std_errors",
           format_real(static_cast<double>(within) / static_cast<double>(grid.size())));
  }
  return t;
}

// ---------------------------------------------------------------- states

CVector read_pure_state(ScenarioConfig& cfg, FockDim d, const std::string& kind) {
  if (kind == "vacuum") return fock_state(0, d);
  if (kind == "fock") return fock_state(static_cast<int>(cfg.integer("n", 0, d.value() - 1)), d);
  if (kind == "coherent") {
    const double a = cfg.real("alpha", 0.0, 100.0);
    const double th = cfg.real("theta", 0.0, -1e3, 1e3);
    return coherent_state(std::polar(a, th), d);
  }
  const int N = static_cast<int>(cfg.integer("N", 1, 64));
  if (kind == "binomial_plus" || kind == "binomial_minus") {
    const auto code = RSBCode::binomial(N, static_cast<int>(cfg.integer("K", 1, 64)), d);
    return kind == "binomial_plus" ? code.plus() : code.minus();
  }
  const auto code = RSBCode::cat(N, cplx(cfg.real("alpha", 0.0, 100.0)), d);
  return kind == "cat_plus" ? code.plus() : code.minus();
}

GaussianParams read_gaussian(ScenarioConfig& cfg, const std::string& suffix) {
  GaussianParams p;
  p.alpha0 = cfg.real("alpha0" + suffix, 0.0, 0.0, 100.0);
  p.theta = cfg.real("theta" + suffix, 0.0, -1e3, 1e3);
  p.beta0 = cfg.real("beta0" + suffix, 0.0, 0.0, 10.0);
  p.gamma = cfg.real("gamma" + suffix, 0.0, -1e3, 1e3);
  p.nbar = cfg.real("nbar" + suffix, 0.0, 0.0, 1e3);
  return p;
}

// ---------------------------------------------------------------- wigner

ResultTable run_wigner(ScenarioConfig& cfg, const RunOptions& opts) {
  const std::string kind = cfg.choice(
      "state", "vacuum",
      {"vacuum", "fock", "coherent", "binomial_plus", "binomial_minus", "cat_plus", "cat_minus", "gaussian"});
  const FockDim d = read_dim(cfg, 30);
  const DensityMatrix rho0 =
      kind == "gaussian" ? gaussian_state(read_gaussian(cfg, ""), d)
                         : DensityMatrix::pure(read_pure_state(cfg, d, kind));
  NoiseModel model;
  model.kind = cfg.choice("noise", "rtn", {"rtn", "gaussian", "oneoverf"});
  if (model.kind == "oneoverf") {
    model.f = read_oneoverf(cfg);
    model.f.n_f = static_cast<int>(cfg.integer("n_f", 1, 1, 100000));
  } else {
    model.r = cfg.real("r", 1.0, 1e-12, 1e8);
  }
  const auto taus = cfg.real_grid("tau", 0.0, 1e6, {0.0});
  const double extent = cfg.real("extent", 6.0, 0.5, 50.0);
  const int points = static_cast<int>(cfg.integer("points", 121, 3, 4001));
  const bool ring = cfg.has("ring_radius");
  const double radius = cfg.real("ring_radius", 0.0, 0.0, 50.0);
  const int n_theta = static_cast<int>(cfg.integer("n_theta", 720, 8, 1000000));
  cfg.reject_unused();

  const GridAxis axis{-extent, extent, points};
  struct Row {
    double nv, integral, ring;
  };
  const auto rows = parallel_map<Row>(taus.size(), opts.workers, [&](std::size_t i) {
    const DensityMatrix rho = apply_channel(model.at(taus[i], d), rho0);
    const WignerGrid g = wigner(rho, axis, axis);
    return Row{negativity_volume(g), grid_integral(g), ring ? ring_negativity(rho, radius, n_theta) : kNaN};
  });

  ResultTable t;
  common_meta(t, "wigner", cfg, opts);
  t.meta("state", kind);
  t.meta("noise", model.kind);
  t.columns = {"tau", "negativity_volume", "grid_integral"};
  if (ring) t.columns.push_back("ring_negativity");
  std::vector<double> nv;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    std::vector<Cell> row{taus[i], rows[i].nv, rows[i].integral};
    if (ring) row.push_back(rows[i].ring);
    t.rows.push_back(std::move(row));
    nv.push_back(rows[i].nv);
  }
  if (nv.size() >= 3) t.meta("n_wn", format_real(n_wn(nv)));
  return t;
}

// ---------------------------------------------------------------- blp

struct StatePair {
  DensityMatrix first;
  DensityMatrix second;
};

StatePair read_pair(ScenarioConfig& cfg, FockDim d, const std::string& kind, long& fock_l) {
  fock_l = 0;
  if (kind == "fock") {
    fock_l = cfg.integer("l", 1, 1, d.value() - 1);
    const CVector z = fock_state(0, d), l = fock_state(static_cast<int>(fock_l), d);
    return {DensityMatrix::pure((z + l) / std::sqrt(2.0)), DensityMatrix::pure((z - l) / std::sqrt(2.0))};
  }
  if (kind == "coherent") {
    const double a = cfg.real("alpha", 0.0, 100.0);
    return {DensityMatrix::pure(coherent_state(a, d)), DensityMatrix::pure(coherent_state(-a, d))};
  }
  if (kind == "gaussian") {
    return {gaussian_state(read_gaussian(cfg, "_1"), d), gaussian_state(read_gaussian(cfg, "_2"), d)};
  }
  const int N = static_cast<int>(cfg.integer("N", 1, 64));
  const RSBCode code = kind == "binomial"
                           ? RSBCode::binomial(N, static_cast<int>(cfg.integer("K", 1, 64)), d)
                           : RSBCode::cat(N, cplx(cfg.real("alpha", 0.0, 100.0)), d);
  return {DensityMatrix::pure(code.plus()), DensityMatrix::pure(code.minus())};
}

ResultTable run_blp(ScenarioConfig& cfg, const RunOptions& opts) {
  const std::string kind = cfg.choice("pair", "fock", {"fock", "coherent", "cat", "binomial", "gaussian"});
  const FockDim d = read_dim(cfg, 30);
  long l = 0;
  const StatePair pair = read_pair(cfg, d, kind, l);
  NoiseModel model;
  model.kind = cfg.choice("noise", "rtn", {"rtn", "gaussian", "oneoverf"});
  std::vector<double> rs{kNaN};
  if (model.kind == "oneoverf") {
    model.f = read_oneoverf(cfg);
    model.f.n_f = static_cast<int>(cfg.integer("n_f", 1, 1, 100000));
  } else {
    rs = cfg.real_grid("r", 1e-12, 1e8, {0.1});
  }
  const BlpOptions bo = read_blp_options(cfg);
  cfg.reject_unused();

  const auto reps = parallel_map<RevivalReport>(rs.size(), opts.workers, [&](std::size_t i) {
    NoiseModel m = model;
    m.r = rs[i];
    return blp_star(pair.first, pair.second, [&](double tau) { return m.at(tau, d); }, bo);
  });

  ResultTable t;
  common_meta(t, "blp", cfg, opts);
  t.meta("pair", kind);
  t.meta("noise", model.kind);
  t.meta("horizon", format_real(bo.horizon));
  t.meta("step", format_real(bo.step));
  const bool closed_form = kind == "fock" && model.kind == "rtn";
  t.columns = {"r", "converged", "tail_bound", "t_end"};
  if (closed_form) t.columns.push_back("closed_form");
  t.columns.push_back("n_blp_star");
  for (std::size_t i = 0; i < rs.size(); ++i) {
    std::vector<Cell> row{rs[i], reps[i].converged, reps[i].tail_bound, reps[i].t_end};
    if (closed_form) {
      row.push_back(rs[i] > 0 && rs[i] < l ? analytic_fock_pair_blp(static_cast<int>(l), rs[i]) : kNaN);
    }
    row.push_back(reps[i].n_blp_star);
    t.all_converged = t.all_converged && reps[i].converged;
    t.rows.push_back(std::move(row));
  }
  t.meta("all_converged", t.all_converged ? "true" : "false");
  return t;
}

// ---------------------------------------------------------------- oneoverf

ResultTable run_oneoverf(ScenarioConfig& cfg, const RunOptions& opts) {
  const FockDim d = read_dim(cfg, 40);
  const double alpha = cfg.real("alpha", 3.0, 0.0, 100.0);
  const auto nfs = cfg.int_grid("n_f", 1, 100000, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15});
  const OneOverFParams base = read_oneoverf(cfg);
  const BlpOptions bo = read_blp_options(cfg);
  cfg.reject_unused();

  const DensityMatrix r1 = DensityMatrix::pure(coherent_state(alpha, d));
  const DensityMatrix r2 = DensityMatrix::pure(coherent_state(-alpha, d));
  const auto reps = parallel_map<RevivalReport>(nfs.size(), opts.workers, [&](std::size_t i) {
    OneOverFParams p = base;
    p.n_f = static_cast<int>(nfs[i]);
    return blp_star(r1, r2, [&](double tau) {
      OneOverFParams q = p;
      q.tau = tau;
      return oneoverf_channel(q, d);
    }, bo);
  });

  ResultTable t;
  common_meta(t, "oneoverf", cfg, opts);
  t.meta("alpha", format_real(alpha));
  t.meta("r_min", format_real(base.r_min));
  t.meta("r_max", format_real(base.r_max));
  t.meta("normalize_coupling", base.normalize_coupling ? "true" : "false");
  t.meta("horizon", format_real(bo.horizon));
  t.columns = {"n_f", "converged", "tail_bound", "t_end", "n_blp_star"};
  for (std::size_t i = 0; i < nfs.size(); ++i) {
    t.rows.push_back({nfs[i], reps[i].converged, reps[i].tail_bound, reps[i].t_end, reps[i].n_blp_star});
    t.all_converged = t.all_converged && reps[i].converged;
  }
  t.meta("all_converged", t.all_converged ? "true" : "false");
  return t;
}

// ---------------------------------------------------------------- knill

RSBCode read_code(ScenarioConfig& cfg, const std::string& prefix, const RSBCode* fallback,
                  long d_fallback) {
  std::string family = "binomial";
  if (fallback) family = std::holds_alternative<CatKind>(fallback->kind()) ? "cat" : "binomial";
  family = cfg.choice(prefix + "code", family, {"binomial", "cat"});
  const int N = static_cast<int>(fallback ? cfg.integer(prefix + "N", fallback->order(), 1, 64)
                                          : cfg.integer(prefix + "N", 1, 64));
  if (family == "binomial") {
    long K0 = 0;
    if (fallback) {
      if (const auto* b = std::get_if<BinomialKind>(&fallback->kind())) K0 = b->K;
    }
    const int K = static_cast<int>(K0 ? cfg.integer(prefix + "K", K0, 1, 64) : cfg.integer(prefix + "K", 1, 64));
    const long dd = cfg.integer(prefix + "d", std::max<long>(d_fallback, static_cast<long>(N) * K + N + 1), 2, 200);
    return RSBCode::binomial(N, K, FockDim(static_cast<int>(dd)));
  }
  double a0 = 0.0;
  if (fallback) {
    if (const auto* c = std::get_if<CatKind>(&fallback->kind())) a0 = std::abs(c->alpha);
  }
  const double alpha = a0 > 0 ? cfg.real(prefix + "alpha", a0, 0.0, 100.0) : cfg.real(prefix + "alpha", 0.0, 100.0);
  const long dd = cfg.integer(prefix + "d", std::max<long>(d_fallback, 2), 2, 200);
  return RSBCode::cat(N, cplx(alpha), FockDim(static_cast<int>(dd)));
}

ResultTable run_knill(ScenarioConfig& cfg, const RunOptions& opts) {
  const RSBCode data = read_code(cfg, "", nullptr, 0);
  const RSBCode aux = read_code(cfg, "aux_", &data, 0);
  KnillConfig kc{data, aux, aux, static_cast<int>(cfg.integer("n_bins", 256, 64, 8192)), std::nullopt, std::nullopt};
  NoiseModel model;
  model.kind = cfg.choice("noise", "rtn", {"rtn", "gaussian", "oneoverf", "none"});
  if (model.kind == "oneoverf") {
    model.f = read_oneoverf(cfg);
    model.f.n_f = static_cast<int>(cfg.integer("n_f", 1, 1, 100000));
  } else if (model.kind != "none") {
    model.r = cfg.real("r", 0.1, 1e-12, 1e8);
  }
  const double kappa = cfg.real("kappa", 0.0, 0.0, 1e6);
  const auto taus = cfg.real_grid("tau", 0.0, 1e6, {0.0});
  const bool with_strength = cfg.flag("noise_strength", true);
  cfg.reject_unused();

  const FockDim d = data.dim();
  auto noise_at = [&](double tau) {
    Channel deph = model.at(tau, d);
    if (kappa * tau == 0.0) return deph;
    const Channel loss = loss_kraus({kappa * tau, loss_k_max(kappa * tau, d)}, d);
    return compose(deph, loss);
  };
  struct Row {
    double f, semi, bound, ns, be;
  };
  const auto rows = parallel_map<Row>(taus.size(), opts.workers, [&](std::size_t i) {
    const Channel ch = noise_at(taus[i]);
    Row row;
    row.f = knill_fidelity(kc, ch);
    const auto* table = ch.get_if<DephasingTable>();
    row.semi = table ? semi_analytic_fidelity_dephasing(kc, table->factors) : kNaN;
    row.bound = table ? fidelity_bound(kc, ch) : kNaN;
    row.ns = with_strength ? noise_strength(ch, data) : kNaN;
    row.be = break_even_fidelity(ch);
    return row;
  });

  ResultTable t;
  common_meta(t, "knill", cfg, opts);
  t.meta("data_code", std::holds_alternative<CatKind>(data.kind()) ? "cat" : "binomial");
  t.meta("N", std::to_string(data.order()));
  t.meta("M_L", std::to_string(aux.order()));
  t.meta("d", std::to_string(d.value()));
  t.meta("n_bins", std::to_string(kc.n_phase_bins));
  t.meta("noise", model.kind);
  t.meta("kappa", format_real(kappa));
  t.columns = {"tau", "semi_analytic", "bound", "noise_strength", "break_even", "fidelity"};
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const Row& r = rows[i];
    t.rows.push_back({taus[i], r.semi, r.bound, r.ns, r.be, r.f});
  }
  return t;
}

// ---------------------------------------------------------------- sweep

ResultTable run_sweep(ScenarioConfig& cfg, const RunOptions& opts) {
  const FockDim d = read_dim(cfg, 40);
  const double r = cfg.real("r", 0.1, 1e-12, 1e8);
  const auto grid = cfg.real_grid("alpha0", 0.0, 100.0);
  const BlpOptions bo = read_blp_options(cfg);
  cfg.reject_unused();

  const auto pts = parallel_map<GaussianSweepPoint>(grid.size(), opts.workers, [&](std::size_t i) {
    return gaussian_blp_sweep(r, {grid[i]}, d, bo).points.front();
  });
  ResultTable t;
  common_meta(t, "sweep", cfg, opts);
  t.meta("r", format_real(r));
  t.columns = {"alpha0", "converged", "n_blp_star"};
  double best = -1.0, arg = kNaN;
  for (const auto& p : pts) {
    t.rows.push_back({p.alpha0, p.converged, p.n_blp_star});
    t.all_converged = t.all_converged && p.converged;
    if (p.n_blp_star > best) {
      best = p.n_blp_star;
      arg = p.alpha0;
    }
  }
  t.meta("alpha0_max", format_real(arg));
  t.meta("all_converged", t.all_converged ? "true" : "false");
  return t;
}

// ---------------------------------------------------------------- validate

struct Check {
  std::string name;
  double value;
  double reference;
  double tolerance;
  bool pass;
};

std::vector<std::function<Check()>> validation_suite(long mc, std::uint64_t seed, unsigned workers) {
  std::vector<std::function<Check()>> s;
  s.push_back([=] {
    long ok = 0, total = 0;
    std::uint64_t k = 0;
    for (int a : {1, 2, 3})
      for (double r : {0.1, 1.0, 10.0})
        for (double tau : {0.5, 1.0, 2.0, 5.0}) {
          const auto e = mc_dephasing_factor(a, r, tau, mc, derive_seed(seed, k++), static_cast<int>(workers));
          ok += std::abs(e.mean.real() - rtn_dephasing_factor(a, r, tau)) <= 3.0 * e.std_error;
          ++total;
        }
    const double f = static_cast<double>(ok) / total;
    return Check{"rtn_mc_vs_analytic_fraction", f, 1.0, 0.05, f >= 0.95};
  });
  s.push_back([=] {
    OneOverFParams p;
    p.n_f = 2;
    p.tau = 1.0;
    const auto e = mc_one_over_f_factor(1.0, p, mc, derive_seed(seed, 100), static_cast<int>(workers));
    const double ref = one_over_f_factor(1.0, p);
    return Check{"oneoverf_mc_vs_analytic", e.mean.real(), ref, 3.0 * e.std_error,
                 std::abs(e.mean.real() - ref) <= 3.0 * e.std_error};
  });
  for (int l : {1, 2}) {
    s.push_back([=] {
      const FockDim d(l + 2);
      const CVector z = fock_state(0, d), v = fock_state(l, d);
      const auto rep = blp_star(DensityMatrix::pure((z + v) / std::sqrt(2.0)),
                                DensityMatrix::pure((z - v) / std::sqrt(2.0)),
                                [&](double tau) { return rtn_channel({0.1, tau}, d); });
      const double ref = analytic_fock_pair_blp(l, 0.1);
      return Check{"fock_pair_closed_form_l" + std::to_string(l), rep.n_blp_star, ref, 0.01 * ref,
                   std::abs(rep.n_blp_star - ref) <= 0.01 * ref};
    });
  }
  s.push_back([] {
    const FockDim d(12);
    const CMatrix B = canonical_b_matrix(d);
    CMatrix sum = CMatrix::Zero(12, 12);
    for (int b = 0; b < 256; ++b) sum += phase_povm_bin(b, 256, B);
    const double err = (sum - CMatrix::Identity(12, 12)).cwiseAbs().maxCoeff();
    return Check{"povm_completeness", err, 0.0, 1e-10, err <= 1e-10};
  });
  s.push_back([] {
    const FockDim d(8);
    const RSBCode code = RSBCode::binomial(2, 2, d);
    const Channel ch = compose(rtn_channel({0.1, 1.0}, d), loss_kraus({0.05, loss_k_max(0.05, d)}, d));
    const double cp = 1.0 - noise_strength(ch, code);
    const double var = diamond_norm_variational(projected_kraus(ch, code));
    return Check{"diamond_norm_variational", cp, var, 1e-4, std::abs(cp - var) <= 1e-4};
  });
  s.push_back([] {
    double worst = 0.0;
    for (int N : {1, 2})
      for (int K : {1, 2})
        for (double tau : {0.4, 1.3}) {
          const RSBCode code = RSBCode::binomial(N, K, FockDim(N * K + N + 1));
          const auto kc = KnillConfig::uniform(code, 256);
          const Channel ch = rtn_channel({0.1, tau}, code.dim());
          worst = std::max(worst, std::abs(knill_fidelity(kc, ch) -
                                           semi_analytic_fidelity_dephasing(kc, ch.get_if<DephasingTable>()->factors)));
        }
    return Check{"semi_analytic_vs_circuit", worst, 0.0, 1e-2, worst <= 1e-2};
  });
  s.push_back([] {
    double worst = 0.0;
    for (int N : {1, 2, 3})
      for (double tau : {0.3, 1.1, 2.7}) {
        const FockDim d(2 * N + 1);
        const RSBCode code = RSBCode::binomial(N, 2, d);
        const CMatrix F = rtn_channel({0.1, tau}, d).get_if<DephasingTable>()->factors;
        const double a = dual_distinguishability(code, F, canonical_b_matrix(d), 1 << 14);
        const double ref = 4.0 * std::sqrt(2.0) / std::numbers::pi * std::abs(rtn_dephasing_factor(N, 0.1, tau));
        worst = std::max(worst, std::abs(a - ref));
      }
    return Check{"binomial_k2_identity", worst, 0.0, 1e-6, worst <= 1e-6};
  });
  s.push_back([] {
    const double x = 1e-3;
    const double lhs = exp_integral_e1(x).real() + std::log(x) + std::numbers::egamma;
    const double ref = x - x * x / 4.0;
    return Check{"e1_small_argument_series", lhs, ref, 1e-9, std::abs(lhs - ref) <= 1e-9};
  });
  s.push_back([] {
    const FockDim d(6);
    const Channel ch = compose(rtn_channel({0.3, 0.7}, d), loss_kraus({0.2, loss_k_max(0.2, d)}, d));
    const Channel kr = kraus_from_superop(Channel::from_superop(superoperator(ch), d.value(), d.value()));
    const double err = (superoperator(kr) - superoperator(ch)).cwiseAbs().maxCoeff();
    return Check{"kraus_superop_round_trip", err, 0.0, 1e-8, err <= 1e-8};
  });
  s.push_back([] {
    const FockDim d(4);
    const double w0 = wigner_point(CMatrix(fock_state(0, d) * fock_state(0, d).adjoint()), 0, 0);
    const double w1 = wigner_point(CMatrix(fock_state(1, d) * fock_state(1, d).adjoint()), 0, 0);
    const double err = std::max(std::abs(w0 - 1 / std::numbers::pi), std::abs(w1 + 1 / std::numbers::pi));
    return Check{"wigner_parity_values", err, 0.0, 1e-6, err <= 1e-6};
  });
  return s;
}

ResultTable run_validate(ScenarioConfig& cfg, const RunOptions& opts) {
  const long mc = cfg.integer("mc_samples", 100000, 1000, 100000000);
  cfg.reject_unused();
  const auto suite = validation_suite(mc, opts.seed, opts.workers);
  ResultTable t;
  common_meta(t, "validate", cfg, opts);
  t.meta("mc_samples", std::to_string(mc));
  t.columns = {"check", "value", "reference", "tolerance", "pass"};
  for (const auto& c : suite) {
    const Check r = c();
    t.rows.push_back({r.name, r.value, r.reference, r.tolerance, r.pass});
    t.validation_failed = t.validation_failed || !r.pass;
  }
  t.meta("validation", t.validation_failed ? "FAILED" : "passed");
  return t;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"dephasing", "wigner", "blp", "oneoverf",
                                              "knill",     "sweep",  "validate"};
  return names;
}

ResultTable run_scenario(const std::string& scenario, ScenarioConfig& cfg, const RunOptions& opts) {
  if (scenario == "dephasing") return run_dephasing(cfg, opts);
  if (scenario == "wigner") return run_wigner(cfg, opts);
  if (scenario == "blp") return run_blp(cfg, opts);
  if (scenario == "oneoverf") return run_oneoverf(cfg, opts);
  if (scenario == "knill") return run_knill(cfg, opts);
  if (scenario == "sweep") return run_sweep(cfg, opts);
  if (scenario == "validate") return run_validate(cfg, opts);
  throw ConfigError("unknown scenario '" + scenario + "'");
}

}  // namespace rtnb::cli
