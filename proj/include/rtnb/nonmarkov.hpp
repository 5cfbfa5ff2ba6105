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

#pragma once

// Trace-distance revivals (BLP measure for a fixed pair of states).
//
// N*_BLP sums D(t_max) - D(t_min) over every interval on which D rises, i.e.
// the integral of sigma = dD/dt over sigma > 0.

#include <functional>
#include <utility>
#include <vector>

#include "rtnb/fock.hpp"
#include "rtnb/states.hpp"
#include "rtnb/wigner.hpp"

namespace rtnb {

double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2);
double trace_distance(const CMatrix& rho1, const CMatrix& rho2);

struct TraceDistanceSeries {
  std::vector<double> times;
  std::vector<double> values;
};

struct BlpOptions {
  double horizon = 150.0;
  double step = 0.05;
  /// Extrema found on the grid are refined by golden-section search to this
  /// resolution in tau.
  double refine_tol = 1e-6;
  /// Stop once the local maxima of D have stayed below this value for at
  /// least quiet_window in tau. A single small maximum is not enough: under
  /// rate-averaged noise D can nearly vanish and then revive.
  double envelope_floor = 1e-4;
  double quiet_window = 20.0;
  /// Converged when the geometric tail estimate is below this fraction of
  /// the accumulated value.
  double tail_fraction = 0.01;
  /// Rises smaller than this are treated as rounding noise.
  double min_rise = 1e-12;
  bool throw_if_not_converged = false;
};

struct RevivalReport {
  double n_blp_star = 0.0;
  std::vector<std::pair<double, double>> rising_intervals;
  bool converged = false;
  /// Geometric estimate of the revivals beyond the last evaluated time.
  double tail_bound = 0.0;
  /// Last time at which D was evaluated.
  double t_end = 0.0;
  TraceDistanceSeries series;
};

/// Revival accounting for a sampled distance function D(tau).
RevivalReport blp_star(const std::function<double(double)>& distance, const BlpOptions& opts = {});

/// Revival accounting for a pair evolved by a channel family tau -> E_tau.
RevivalReport blp_star(const DensityMatrix& rho1, const DensityMatrix& rho2,
                       const std::function<Channel(double)>& family, const BlpOptions& opts = {});

/// 1 / (e^{pi r / Omega_l} - 1), Omega_l = sqrt(l^2 - r^2): the value for the
/// pair (|0> +- |l>)/sqrt(2) under RTN with an unbounded horizon.
double analytic_fock_pair_blp(int l, double r);

/// N*_BLP of the pair (rho(p1), rho(p2)) under RTN with ratio r.
RevivalReport gaussian_pair_blp(const GaussianParams& p1, const GaussianParams& p2, double r,
                                FockDim d, const BlpOptions& opts = {});

struct GaussianSweepPoint {
  double alpha0;
  double n_blp_star;
  bool converged;
};

struct GaussianSweep {
  std::vector<GaussianSweepPoint> points;
  double alpha0_max = 0.0;
};

/// Sweep over coherent pairs alpha0, -alpha0 (theta difference pi, no
/// squeezing, no thermal occupation).
GaussianSweep gaussian_blp_sweep(double r, const std::vector<double>& alpha0_grid, FockDim d,
                                 const BlpOptions& opts = {});

struct GaussianPairOptimum {
  GaussianParams p1;
  GaussianParams p2;
  double n_blp_star;
  int evaluations;
};

/// Coordinate search over all ten parameters of the pair, starting from
/// (start1, start2). Expensive; meant for validating the reduction to
/// coherent pairs, not for production sweeps.
GaussianPairOptimum optimize_gaussian_pair(const GaussianParams& start1,
                                           const GaussianParams& start2, double r, FockDim d,
                                           const BlpOptions& opts = {}, int sweeps = 3,
                                           double initial_step = 0.25);

}  // namespace rtnb
