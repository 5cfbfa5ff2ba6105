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

// Wigner function in the convention
//   W(q, p) = (1/pi) int dy e^{-2ipy} <q + y| rho |q - y>,
// so that a = (q + ip) / sqrt(2), the vacuum is exp(-q^2 - p^2) / pi and a
// coherent state |alpha> peaks at (sqrt(2) Re alpha, sqrt(2) Im alpha).
// The kernel e^{+2ipy} gives the same function mirrored in p. Writing x = 2y
// turns this into the (1/2pi) int dx e^{-ipx} <q + x/2| rho |q - x/2> form.

#include <vector>

#include "rtnb/fock.hpp"

namespace rtnb {

struct GridAxis {
  double min = -6.0;
  double max = 6.0;
  int n = 121;

  double spacing() const { return (max - min) / (n - 1); }
  double at(int i) const { return min + i * spacing(); }
};

struct WignerGrid {
  GridAxis q;
  GridAxis p;
  RMatrix values;  ///< values(i, j) = W(q_i, p_j)
};

/// W at a single phase-space point, (1/pi) int dy e^{-2ipy} <q+y|rho|q-y>
/// with q = (a + a^dag)/sqrt2. A coherent state |alpha> peaks at
/// (sqrt2 Re alpha, sqrt2 Im alpha); the kernel with e^{+2ipy} is the same
/// function mirrored in p.
double wigner_point(const CMatrix& rho, double q, double p);

/// W on a rectangular grid. Throws GridTooSmall if |W| on the boundary
/// reaches boundary_tol.
WignerGrid wigner(const DensityMatrix& rho, const GridAxis& q, const GridAxis& p,
                  double boundary_tol = 1e-6);

/// 2-D trapezoid integral of W over the grid.
double grid_integral(const WignerGrid& w);

/// (1/2)(int |W| - 1), evaluated as (1/2)(int |W| - int W) so that grid
/// normalisation error does not leak in. Never negative.
double negativity_volume(const WignerGrid& w);

/// (1/2)(int_0^{2pi} dtheta |W(R cos theta, R sin theta)| - 1), exactly as
/// defined. This is not a negativity in the strict sense: it is negative for
/// states with little weight on the ring, e.g. the vacuum at R = 1.2 gives
/// e^{-1.44} - 1/2.
double ring_negativity(const DensityMatrix& rho, double R, int n_theta = 720);

/// 1 - |sum dN| / sum |dN| over a sampled series. 0 when all increments
/// vanish.
double n_wn(const std::vector<double>& series);

}  // namespace rtnb
