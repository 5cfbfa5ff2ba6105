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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rtnb/noise.hpp"
#include "rtnb/nonmarkov.hpp"
#include "rtnb/states.hpp"
#include "rtnb/wigner.hpp"

using namespace rtnb;

namespace {

constexpr double kPi = std::numbers::pi;

CMatrix projector(const CVector& v) { return v * v.adjoint(); }

// Position wavefunctions of |0> and |1> with x = (a + a^dag)/sqrt2.
cplx psi0(double x) { return std::pow(kPi, -0.25) * std::exp(-0.5 * x * x); }
cplx psi1(double x) { return std::sqrt(2.0) * x * psi0(x); }

// (1/pi) int dy e^{-2ipy} <q+y|rho|q-y> for rho = |u><v| by midpoint sums.
// This sign puts a coherent state at (sqrt2 Re alpha, +sqrt2 Im alpha).
double wigner_by_definition(cplx (*u)(double), cplx (*v)(double), double q, double p, cplx cu, cplx cv) {
  const int n = 4000;
  const double L = 12.0, h = 2 * L / n;
  cplx s = 0;
  for (int k = 0; k < n; ++k) {
    const double y = -L + (k + 0.5) * h;
    s += std::exp(cplx(0, -2 * p * y)) * cu * u(q + y) * std::conj(cv * v(q - y));
  }
  return (s * h / kPi).real();
}

}  // namespace

TEST_CASE("parity values at the origin") {
  const FockDim d(6);
  CHECK(std::abs(wigner_point(projector(fock_state(0, d)), 0, 0) - 1 / kPi) < 1e-6);
  CHECK(std::abs(wigner_point(projector(fock_state(1, d)), 0, 0) + 1 / kPi) < 1e-6);
  CHECK(std::abs(wigner_point(projector(fock_state(4, d)), 0, 0) - 1 / kPi) < 1e-12);
}

TEST_CASE("vacuum is (1/pi) e^{-q^2 - p^2}") {
  const CMatrix v = projector(fock_state(0, FockDim(3)));
  for (double q : {-1.3, 0.0, 0.7})
    for (double p : {-0.4, 0.9}) CHECK(std::abs(wigner_point(v, q, p) - std::exp(-q * q - p * p) / kPi) < 1e-14);
}

TEST_CASE("coherence sign convention against the defining integral") {
  // rho = (|0> + e^{i phi}|1>)(...)^dag / 2 probes the conjugation of the
  // off-diagonal term.
  const FockDim d(2);
  const double phi = 0.9;
  CVector v(2);
  v << 1.0, std::polar(1.0, phi);
  v /= std::sqrt(2.0);
  const CMatrix rho = projector(v);
  for (auto [q, p] : std::vector<std::pair<double, double>>{{0.5, 0.3}, {-0.8, 0.6}, {0.2, -1.1}}) {
    const cplx c1 = std::polar(1.0, phi);
    const double expect = 0.5 * (wigner_by_definition(psi0, psi0, q, p, 1, 1) + wigner_by_definition(psi1, psi1, q, p, 1, 1) +
                                 wigner_by_definition(psi1, psi0, q, p, c1, 1) + wigner_by_definition(psi0, psi1, q, p, 1, c1));
    INFO("q=" << q << " p=" << p);
    CHECK(std::abs(wigner_point(rho, q, p) - expect) < 1e-8);
  }
}

TEST_CASE("coherent state peaks at sqrt2 (Re alpha, Im alpha)") {
  const FockDim d(30);
  const cplx alpha(2.0, 0.0);
  const DensityMatrix c = DensityMatrix::pure(coherent_state(alpha, d));
  const double q0 = std::sqrt(2.0) * alpha.real(), p0 = std::sqrt(2.0) * alpha.imag();
  CHECK(wigner_point(c.matrix(), q0, p0) == doctest::Approx(1 / kPi).epsilon(1e-8));
  CHECK(wigner_point(c.matrix(), q0 + 0.5, p0) == doctest::Approx(std::exp(-0.25) / kPi).epsilon(1e-8));
  const cplx beta(1.0, 1.5);
  const CMatrix b = DensityMatrix::pure(coherent_state(beta, d)).matrix();
  const double qb = std::sqrt(2.0) * beta.real(), pb = std::sqrt(2.0) * beta.imag();
  CHECK(wigner_point(b, qb, pb) == doctest::Approx(1 / kPi).epsilon(1e-8));
  CHECK(wigner_point(b, qb, -pb) < 1e-3);
}

TEST_CASE("grid normalisation and boundary check") {
  const FockDim d(30);
  const DensityMatrix c = DensityMatrix::pure(coherent_state(cplx(1.0, 1.0), d));
  const WignerGrid g = wigner(c, GridAxis{}, GridAxis{});
  CHECK(std::abs(grid_integral(g) - 1.0) < 2e-3);
  CHECK(negativity_volume(g) < 1e-4);
  CHECK_THROWS_AS(wigner(c, GridAxis{-2, 2, 41}, GridAxis{-2, 2, 41}), GridTooSmall);
}

TEST_CASE("negativity volume of |1>") {
  const double oracle_abs = oracle::fock1_abs_wigner_integral();
  const double expect = 2 * std::exp(-0.5) - 1;
  CHECK(std::abs(0.5 * (oracle_abs - 1.0) - expect) < 1e-10);
  const WignerGrid g = wigner(DensityMatrix::pure(fock_state(1, FockDim(4))), GridAxis{}, GridAxis{});
  CHECK(std::abs(negativity_volume(g) - expect) < 5e-3);
}

TEST_CASE("Gaussian states have no negativity") {
  const FockDim d(40);
  for (GaussianParams p : {GaussianParams{1.5, 0.3, 0.0, 0.0, 0.0}, GaussianParams{0.0, 0.0, 0.5, 0.7, 0.0},
                           GaussianParams{1.0, 2.0, 0.3, 0.0, 0.5}, GaussianParams{0.0, 0.0, 0.0, 0.0, 1.0}}) {
    const WignerGrid g = wigner(gaussian_state(p, d), GridAxis{-9, 9, 181}, GridAxis{-9, 9, 181});
    CHECK(negativity_volume(g) < 1e-4);
  }
}

TEST_CASE("ring negativity") {
  const DensityMatrix v = DensityMatrix::pure(fock_state(0, FockDim(3)));
  CHECK(ring_negativity(v, 1.2) == doctest::Approx(std::exp(-1.44) - 0.5).epsilon(1e-10));
  CHECK(ring_negativity(v, 0.0) == doctest::Approx(0.5 * (2 * kPi / kPi - 1)).epsilon(1e-12));
  CHECK_THROWS_AS(ring_negativity(v, -1.0), InvalidArgument);

  SUBCASE("oscillates for small r and decays monotonically for large r") {
    const FockDim d(8);
    const DensityMatrix plus = DensityMatrix::pure(RSBCode::binomial(1, 2, d).plus());
    auto series = [&](double r) {
      std::vector<double> s;
      for (int k = 0; k <= 120; ++k) {
        s.push_back(ring_negativity(apply_channel(rtn_channel({r, 0.05 * k}, d), plus), 1.0));
      }
      return s;
    };
    CHECK(n_wn(series(0.1)) > 0.3);
    CHECK(n_wn(series(10.0)) < 1e-9);
  }
}

TEST_CASE("n_wn") {
  CHECK(n_wn({3, 2, 1, 0}) == 0.0);
  CHECK(n_wn({1, 0, 1}) == 1.0);
  CHECK(n_wn({2, 2, 2}) == 0.0);
  CHECK_THROWS_AS(n_wn({1, 2}), InvalidArgument);
}

TEST_CASE("negativity of a binomial |+> oscillates with the trace-distance period") {
  const FockDim d(10);
  const RSBCode code = RSBCode::binomial(2, 2, d);
  const DensityMatrix plus = DensityMatrix::pure(code.plus()), minus = DensityMatrix::pure(code.minus());
  const double r = 0.1;
  std::vector<double> nv, dist, taus;
  for (int k = 0; k <= 160; ++k) {
    const double tau = 0.05 * k;
    const Channel ch = rtn_channel({r, tau}, d);
    const DensityMatrix p = apply_channel(ch, plus);
    nv.push_back(negativity_volume(wigner(p, GridAxis{-6, 6, 81}, GridAxis{-6, 6, 81})));
    dist.push_back(trace_distance(p, apply_channel(ch, minus)));
    taus.push_back(tau);
  }
  // Maxima over a +-0.5 window; the coarse grid leaves small ripples near
  // the minima of the negativity.
  auto maxima = [&](const std::vector<double>& s) {
    const std::size_t w = 10;
    std::vector<double> t;
    for (std::size_t i = w; i + w < s.size(); ++i) {
      const auto lo = s.begin() + static_cast<long>(i - w), hi = s.begin() + static_cast<long>(i + w + 1);
      if (s[i] == *std::max_element(lo, hi)) t.push_back(taus[i]);
    }
    return t;
  };
  const auto a = maxima(nv), b = maxima(dist);
  REQUIRE(a.size() >= 2);
  REQUIRE(b.size() >= 2);
  const double pa = (a.back() - a.front()) / (a.size() - 1), pb = (b.back() - b.front()) / (b.size() - 1);
  CHECK(std::abs(pa - pb) < 0.1 * pb);
}
