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

#include "rtnb/wigner.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace rtnb {

double wigner_point(const CMatrix& rho, double q, double p) {
  // W = (1/pi) e^{-B/2} sum_{m>=n} c_mn (-1)^n sqrt(n!/m!) conj(A)^{m-n} L_n^{(m-n)}(B)
  // with A = sqrt(2)(q + ip), B = |A|^2, and c_mn = rho_nn or 2 rho_mn (m > n),
  // keeping the real part.
  const Eigen::Index d = rho.rows();
  const cplx A = std::sqrt(2.0) * cplx(q, p);
  const cplx Ac = std::conj(A);
  const double B = std::norm(A);
  double w = 0.0;
  cplx apow = 1.0;  // conj(A)^k
  for (Eigen::Index k = 0; k < d; ++k) {
    // Walk n = 0..d-1-k with the Laguerre recurrence and the running factor
    // (-1)^n sqrt(n!/(n+k)!).
    double l_prev = 0.0, l_cur = 1.0;
    double ratio = 1.0;
    for (Eigen::Index j = 1; j <= k; ++j) ratio /= std::sqrt(static_cast<double>(j));
    cplx acc = 0.0;
    for (Eigen::Index n = 0; n + k < d; ++n) {
      if (n > 0) {
        ratio *= -std::sqrt(static_cast<double>(n) / static_cast<double>(n + k));
        const double next =
            ((2.0 * (n - 1) + 1.0 + k - B) * l_cur - (n - 1.0 + k) * l_prev) / static_cast<double>(n);
        l_prev = l_cur;
        l_cur = next;
      }
      acc += rho(n + k, n) * (ratio * l_cur);
    }
    const double weight = (k == 0) ? 1.0 : 2.0;
    w += weight * (acc * apow).real();
    apow *= Ac;
  }
  return w * std::exp(-0.5 * B) / std::numbers::pi;
}

WignerGrid wigner(const DensityMatrix& rho, const GridAxis& q, const GridAxis& p,
                  double boundary_tol) {
  if (q.n < 2 || p.n < 2 || !(q.max > q.min) || !(p.max > p.min)) {
    throw InvalidArgument("wigner: each axis needs at least two points and max > min");
  }
  WignerGrid g{q, p, RMatrix(q.n, p.n)};
  for (int i = 0; i < q.n; ++i)
    for (int j = 0; j < p.n; ++j) g.values(i, j) = wigner_point(rho.matrix(), q.at(i), p.at(j));
  double edge = 0.0;
  edge = std::max(edge, g.values.row(0).cwiseAbs().maxCoeff());
  edge = std::max(edge, g.values.row(q.n - 1).cwiseAbs().maxCoeff());
  edge = std::max(edge, g.values.col(0).cwiseAbs().maxCoeff());
  edge = std::max(edge, g.values.col(p.n - 1).cwiseAbs().maxCoeff());
  if (edge >= boundary_tol) {
    std::ostringstream os;
    os << "wigner: |W| reaches " << edge << " on the grid boundary (tolerance " << boundary_tol
       << "); widen the grid";
    throw GridTooSmall(os.str());
  }
  return g;
}

namespace {

double trapezoid_2d(const WignerGrid& w, bool absolute) {
  double s = 0.0;
  for (int i = 0; i < w.q.n; ++i) {
    const double wi = (i == 0 || i == w.q.n - 1) ? 0.5 : 1.0;
    for (int j = 0; j < w.p.n; ++j) {
      const double wj = (j == 0 || j == w.p.n - 1) ? 0.5 : 1.0;
      const double v = w.values(i, j);
      s += wi * wj * (absolute ? std::abs(v) : v);
    }
  }
  return s * w.q.spacing() * w.p.spacing();
}

}  // namespace

double grid_integral(const WignerGrid& w) { return trapezoid_2d(w, false); }

double negativity_volume(const WignerGrid& w) {
  return std::max(0.0, 0.5 * (trapezoid_2d(w, true) - trapezoid_2d(w, false)));
}

double ring_negativity(const DensityMatrix& rho, double R, int n_theta) {
  if (!(R >= 0.0)) throw InvalidArgument("ring_negativity: R must be non-negative");
  if (n_theta < 8) throw InvalidArgument("ring_negativity: n_theta must be >= 8");
  double s = 0.0;
  const double h = 2.0 * std::numbers::pi / n_theta;
  for (int k = 0; k < n_theta; ++k) {
    const double th = k * h;
    s += std::abs(wigner_point(rho.matrix(), R * std::cos(th), R * std::sin(th)));
  }
  return 0.5 * (s * h - 1.0);
}

double n_wn(const std::vector<double>& series) {
  if (series.size() < 3) throw InvalidArgument("n_wn: series needs at least three values");
  double net = 0.0, total = 0.0;
  for (std::size_t i = 1; i < series.size(); ++i) {
    const double d = series[i] - series[i - 1];
    net += d;
    total += std::abs(d);
  }
  if (total == 0.0) return 0.0;
  return 1.0 - std::abs(net) / total;
}

}  // namespace rtnb
