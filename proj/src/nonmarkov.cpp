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

#include "rtnb/nonmarkov.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "rtnb/noise.hpp"

namespace rtnb {

double trace_distance(const CMatrix& rho1, const CMatrix& rho2) {
  if (rho1.rows() != rho2.rows() || rho1.cols() != rho2.cols()) {
    throw DimensionMismatch("trace_distance: states have different dimensions");
  }
  return std::min(1.0, 0.5 * trace_norm(rho1 - rho2));
}

double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  return trace_distance(rho1.matrix(), rho2.matrix());
}

namespace {

struct Point {
  double t;
  double v;
};

// Golden-section search for an extremum of f on [a, b]. `sign` = +1 finds a
// maximum, -1 a minimum. The best grid value is passed in so the result is
// never worse than the bracket it started from.
Point golden(const std::function<double(double)>& f, double a, double b, int sign, Point seed,
             double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = sign * f(c), fd = sign * f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = sign * f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = sign * f(d);
    }
  }
  Point best = fc > fd ? Point{c, sign * fc} : Point{d, sign * fd};
  if (sign * seed.v > sign * best.v) best = seed;
  return best;
}

}  // namespace

RevivalReport blp_star(const std::function<double(double)>& distance, const BlpOptions& opts) {
  if (!(opts.horizon > 0.0) || !(opts.step > 0.0)) {
    throw InvalidArgument("blp_star: horizon and step must be positive");
  }
  RevivalReport rep;
  auto& ts = rep.series.times;
  auto& vs = rep.series.values;
  const long K = static_cast<long>(std::ceil(opts.horizon / opts.step - 1e-9));
  ts.reserve(K + 1);
  vs.reserve(K + 1);
  auto t_at = [&](long k) { return std::min(opts.horizon, k * opts.step); };

  ts.push_back(0.0);
  vs.push_back(distance(0.0));

  int dir = 0;
  Point rise_start{0.0, vs[0]};
  std::vector<double> heights;
  bool stopped = false;
  double last_loud = 0.0;  // time of the latest local maximum above the floor

  auto add_rise = [&](Point top) {
    const double h = top.v - rise_start.v;
    if (h > opts.min_rise) {
      rep.n_blp_star += h;
      rep.rising_intervals.emplace_back(rise_start.t, top.t);
      heights.push_back(h);
    }
  };

  for (long k = 1; k <= K; ++k) {
    ts.push_back(t_at(k));
    vs.push_back(distance(ts.back()));
    const double diff = vs[k] - vs[k - 1];
    const int nd = diff > 0 ? 1 : (diff < 0 ? -1 : dir);
    if (dir == 0 && nd == 1) {
      rise_start = {0.0, vs[0]};
    } else if (dir == -1 && nd == 1) {
      const double a = ts[k >= 2 ? k - 2 : 0];
      rise_start = golden(distance, a, ts[k], -1, {ts[k - 1], vs[k - 1]}, opts.refine_tol);
    } else if (dir == 1 && nd == -1) {
      const double a = ts[k >= 2 ? k - 2 : 0];
      const Point top = golden(distance, a, ts[k], +1, {ts[k - 1], vs[k - 1]}, opts.refine_tol);
      add_rise(top);
      if (top.v >= opts.envelope_floor) {
        last_loud = top.t;
      } else if (top.t - last_loud >= opts.quiet_window) {
        stopped = true;
        rep.t_end = ts[k];
        dir = nd;
        break;
      }
    }
    dir = nd;
  }
  if (!stopped) {
    rep.t_end = ts.back();
    if (dir == 1) add_rise({ts.back(), vs.back()});
  }

  // Geometric tail from the last revival heights.
  if (stopped) {
    rep.tail_bound = 0.0;
  } else if (dir == 1) {
    rep.tail_bound = std::numeric_limits<double>::infinity();
  } else if (heights.size() >= 3) {
    const std::size_t n = heights.size();
    const double q = std::max(heights[n - 1] / heights[n - 2], heights[n - 2] / heights[n - 3]);
    rep.tail_bound = q < 1.0 ? heights[n - 1] * q / (1.0 - q)
                             : std::numeric_limits<double>::infinity();
  } else if (!heights.empty()) {
    rep.tail_bound = heights.back();
  }
  rep.converged = stopped || rep.tail_bound <= opts.tail_fraction * rep.n_blp_star ||
                  (heights.empty() && dir != 1);
  if (!rep.converged && opts.throw_if_not_converged) {
    std::ostringstream os;
    os << "blp_star: tail bound " << rep.tail_bound << " exceeds " << opts.tail_fraction
       << " of the accumulated value " << rep.n_blp_star << " at horizon " << opts.horizon;
    throw NotConverged(os.str());
  }
  return rep;
}

RevivalReport blp_star(const DensityMatrix& rho1, const DensityMatrix& rho2,
                       const std::function<Channel(double)>& family, const BlpOptions& opts) {
  if (rho1.matrix().rows() != rho2.matrix().rows()) {
    throw DimensionMismatch("blp_star: states have different dimensions");
  }
  const CMatrix diff = rho1.matrix() - rho2.matrix();
  return blp_star(
      [&](double t) { return std::min(1.0, 0.5 * trace_norm(apply_channel(family(t), diff))); },
      opts);
}

double analytic_fock_pair_blp(int l, double r) {
  if (l < 1) throw InvalidArgument("analytic_fock_pair_blp: l must be >= 1");
  if (!(r > 0.0) || r >= l) throw InvalidArgument("analytic_fock_pair_blp: need 0 < r < l");
  const double omega = std::sqrt((l - r) * (l + r));
  return 1.0 / std::expm1(std::numbers::pi * r / omega);
}

RevivalReport gaussian_pair_blp(const GaussianParams& p1, const GaussianParams& p2, double r,
                                FockDim d, const BlpOptions& opts) {
  const DensityMatrix rho1 = gaussian_state(p1, d);
  const DensityMatrix rho2 = gaussian_state(p2, d);
  return blp_star(rho1, rho2, [&](double t) { return rtn_channel({r, t}, d); }, opts);
}

GaussianSweep gaussian_blp_sweep(double r, const std::vector<double>& alpha0_grid, FockDim d,
                                 const BlpOptions& opts) {
  GaussianSweep out;
  double best = -1.0;
  for (double a0 : alpha0_grid) {
    GaussianParams p1, p2;
    p1.alpha0 = p2.alpha0 = a0;
    p2.theta = std::numbers::pi;
    const auto rep = gaussian_pair_blp(p1, p2, r, d, opts);
    out.points.push_back({a0, rep.n_blp_star, rep.converged});
    if (rep.n_blp_star > best) {
      best = rep.n_blp_star;
      out.alpha0_max = a0;
    }
  }
  return out;
}

GaussianPairOptimum optimize_gaussian_pair(const GaussianParams& start1,
                                           const GaussianParams& start2, double r, FockDim d,
                                           const BlpOptions& opts, int sweeps,
                                           double initial_step) {
  auto pack = [](const GaussianParams& a, const GaussianParams& b) {
    return std::array<double, 10>{a.alpha0, b.alpha0, a.theta, b.theta, a.beta0,
                                  b.beta0,  a.gamma,  b.gamma, a.nbar,  b.nbar};
  };
  auto unpack = [](const std::array<double, 10>& x) {
    GaussianParams a{x[0], x[2], x[4], x[6], x[8]};
    GaussianParams b{x[1], x[3], x[5], x[7], x[9]};
    return std::make_pair(a, b);
  };
  // Amplitudes and occupations are non-negative.
  constexpr std::array<bool, 10> nonneg{true, true, false, false, true,
                                        true, false, false, true, true};
  int evals = 0;
  auto objective = [&](const std::array<double, 10>& x) {
    ++evals;
    const auto [a, b] = unpack(x);
    try {
      return gaussian_pair_blp(a, b, r, d, opts).n_blp_star;
    } catch (const TruncationError&) {
      return -1.0;
    }
  };
  auto x = pack(start1, start2);
  double fx = objective(x);
  double step = initial_step;
  for (int s = 0; s < sweeps; ++s) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (double dir : {+1.0, -1.0}) {
        auto y = x;
        y[i] += dir * step;
        if (nonneg[i] && y[i] < 0.0) continue;
        const double fy = objective(y);
        if (fy > fx) {
          x = y;
          fx = fy;
          break;
        }
      }
    }
    step *= 0.5;
  }
  const auto [a, b] = unpack(x);
  return {a, b, fx, evals};
}

}  // namespace rtnb
