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

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "rtnb/noise.hpp"
#include "rtnb/nonmarkov.hpp"

using namespace rtnb;

namespace {

constexpr double kPi = std::numbers::pi;

DensityMatrix fock_pair_state(int l, double sign, FockDim d) {
  return DensityMatrix::pure((fock_state(0, d) + sign * fock_state(l, d)) / std::sqrt(2.0));
}

std::vector<double> peak_times(const std::vector<double>& t, const std::vector<double>& v) {
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < v.size(); ++i)
    if (v[i] > v[i - 1] && v[i] >= v[i + 1]) out.push_back(t[i]);
  return out;
}

}  // namespace

TEST_CASE("trace distance") {
  const FockDim d(4);
  const DensityMatrix a = DensityMatrix::pure(fock_state(0, d)), b = DensityMatrix::pure(fock_state(1, d));
  CHECK(trace_distance(a, a) == 0.0);
  CHECK(trace_distance(a, b) == doctest::Approx(1.0).epsilon(1e-14));
  const DensityMatrix p = DensityMatrix::pure((fock_state(0, d) + fock_state(1, d)) / std::sqrt(2.0));
  CHECK(trace_distance(a, p) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK_THROWS_AS(trace_distance(a, DensityMatrix::pure(fock_state(0, FockDim(3)))), DimensionMismatch);

  SUBCASE("metric on random triples") {
    std::mt19937_64 rng(29);
    for (int k = 0; k < 50; ++k) {
      const auto x = oracle::random_density(5, rng), y = oracle::random_density(5, rng), z = oracle::random_density(5, rng);
      CHECK(trace_distance(x, z) <= trace_distance(x, y) + trace_distance(y, z) + 1e-9);
      CHECK(trace_distance(x, y) == doctest::Approx(trace_distance(y, x)).epsilon(1e-12));
    }
  }
  SUBCASE("contracts under channels") {
    const FockDim d6(6);
    const std::vector<Channel> chans{rtn_channel({0.1, 2.0}, d6), gaussian_dephasing_channel({0.5}, d6),
                                     oneoverf_channel({2, 1e-3, 1e3, 1.0, false}, d6),
                                     loss_kraus({0.3, loss_k_max(0.3, d6)}, d6)};
    std::mt19937_64 rng(31);
    for (const auto& c : chans)
      for (int k = 0; k < 20; ++k) {
        const auto x = oracle::random_density(6, rng), y = oracle::random_density(6, rng);
        CHECK(trace_distance(apply_channel(c, x), apply_channel(c, y)) <= trace_distance(x, y) + 1e-9);
      }
  }
}

TEST_CASE("Fock pair distance is |G|") {
  const FockDim d(5);
  for (int l : {1, 3})
    for (double tau : {0.0, 0.7, 2.9}) {
      const Channel ch = rtn_channel({0.4, tau}, d);
      const double D = trace_distance(apply_channel(ch, fock_pair_state(l, 1, d)), apply_channel(ch, fock_pair_state(l, -1, d)));
      CHECK(D == doctest::Approx(std::abs(rtn_dephasing_factor(l, 0.4, tau))).epsilon(1e-10));
    }
}

TEST_CASE("blp_star on scalar series") {
  SUBCASE("monotone decay has no revivals") {
    const auto rep = blp_star([](double t) { return std::exp(-t); });
    CHECK(rep.n_blp_star == 0.0);
    CHECK(rep.converged);
  }
  SUBCASE("geometric revivals of a damped cosine") {
    // |cos t| e^{-g t}: rises on each half period by e^{-g t_k}.
    const double g = 0.1;
    const auto rep = blp_star([&](double t) { return std::abs(std::cos(t)) * std::exp(-g * t); });
    double expect = 0.0;
    for (int k = 1; k < 200; ++k) {
      // rises from zero at (k - 1/2) pi to the maximum at k pi - atan g
      const double tmax = k * kPi - std::atan(g);
      expect += std::abs(std::cos(tmax)) * std::exp(-g * tmax);
    }
    CHECK(rep.converged);
    CHECK(rep.n_blp_star == doctest::Approx(expect).epsilon(1e-4));
  }
  SUBCASE("constant series") { CHECK(blp_star([](double) { return 0.5; }).n_blp_star == 0.0); }
}

TEST_CASE("closed-form Fock pair measure") {
  CHECK(analytic_fock_pair_blp(1, 0.1) == doctest::Approx(2.6935).epsilon(1e-4));
  CHECK(analytic_fock_pair_blp(4, 0.1) > analytic_fock_pair_blp(1, 0.1));
  CHECK_THROWS_AS(analytic_fock_pair_blp(1, 1.0), InvalidArgument);
  CHECK_THROWS_AS(analytic_fock_pair_blp(0, 0.1), InvalidArgument);
  for (int l = 1; l <= 4; ++l) {
    const FockDim d(l + 3);
    const auto rep = blp_star(fock_pair_state(l, 1, d), fock_pair_state(l, -1, d),
                              [&](double t) { return rtn_channel({0.2, t}, d); });
    INFO("l = " << l);
    CHECK(rep.converged);
    CHECK(rep.n_blp_star == doctest::Approx(analytic_fock_pair_blp(l, 0.2)).epsilon(1e-2));
    CHECK_FALSE(rep.rising_intervals.empty());
  }
}

TEST_CASE("Markovian families give zero") {
  const FockDim d(20);
  const DensityMatrix a = DensityMatrix::pure(coherent_state(1.5, d)), b = DensityMatrix::pure(coherent_state(-1.5, d));
  SUBCASE("Gaussian dephasing") {
    const auto rep = blp_star(a, b, [&](double t) { return gaussian_dephasing_channel({t}, d); });
    CHECK(rep.n_blp_star == 0.0);
  }
  SUBCASE("1/f with many fluctuators") {
    const FockDim d40(40);
    const DensityMatrix x = DensityMatrix::pure(coherent_state(3.0, d40)), y = DensityMatrix::pure(coherent_state(-3.0, d40));
    const auto rep = blp_star(x, y, [&](double t) { return oneoverf_channel({50, 1e-4, 1e4, t, false}, d40); });
    CHECK(rep.n_blp_star < 1e-3);
  }
}

TEST_CASE("Gaussian pair reductions") {
  const FockDim d(30);
  const double r = 0.1;
  BlpOptions opts;
  opts.horizon = 80.0;
  GaussianParams p1, p2;
  p1.alpha0 = p2.alpha0 = 1.5;
  p2.theta = kPi;
  const double base = gaussian_pair_blp(p1, p2, r, d, opts).n_blp_star;
  CHECK(base > 0.0);
  SUBCASE("amplitude squeezing does not increase the measure") {
    // S(beta) = exp((beta a^dag^2 - beta^* a^2)/2) with gamma = 2 theta + pi
    // squeezes along the displacement.
    GaussianParams s1 = p1, s2 = p2;
    s1.beta0 = s2.beta0 = 0.4;
    s1.gamma = s2.gamma = kPi;
    CHECK(gaussian_pair_blp(s1, s2, r, d, opts).n_blp_star <= base + 1e-9);
  }
  SUBCASE("phase squeezing raises the measure at this amplitude") {
    GaussianParams s1 = p1, s2 = p2;
    s1.beta0 = s2.beta0 = 0.4;
    CHECK(gaussian_pair_blp(s1, s2, r, d, opts).n_blp_star > base);
  }
  SUBCASE("thermal excitation does not increase the measure") {
    GaussianParams t1 = p1, t2 = p2;
    t1.nbar = t2.nbar = 2.0;
    CHECK(gaussian_pair_blp(t1, t2, r, FockDim(60), opts).n_blp_star <= base + 1e-9);
  }
  SUBCASE("phase symmetry") {
    GaussianParams q1 = p1, q2 = p2;
    q1.theta = kPi / 3;
    q2.theta = 4 * kPi / 3;
    CHECK(std::abs(gaussian_pair_blp(q1, q2, r, d, opts).n_blp_star - base) < 1e-6);
  }
  SUBCASE("sweep reports its argmax") {
    const auto sw = gaussian_blp_sweep(r, {0.5, 1.5, 2.5}, d, opts);
    REQUIRE(sw.points.size() == 3);
    double best = -1, arg = 0;
    for (const auto& p : sw.points)
      if (p.n_blp_star > best) {
        best = p.n_blp_star;
        arg = p.alpha0;
      }
    CHECK(sw.alpha0_max == arg);
    CHECK(sw.points[1].n_blp_star == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("binomial pair frequency grows linearly with N") {
  std::vector<double> ns, freq;
  for (int N = 1; N <= 4; ++N) {
    const FockDim d(2 * N + 1);
    const RSBCode code = RSBCode::binomial(N, 2, d);
    const DensityMatrix p = DensityMatrix::pure(code.plus()), m = DensityMatrix::pure(code.minus());
    std::vector<double> t, v;
    for (int k = 0; k <= 4000; ++k) {
      const double tau = 0.005 * k;
      const Channel ch = rtn_channel({0.1, tau}, d);
      t.push_back(tau);
      v.push_back(trace_distance(apply_channel(ch, p), apply_channel(ch, m)));
    }
    const auto pk = peak_times(t, v);
    REQUIRE(pk.size() >= 2);
    ns.push_back(N);
    freq.push_back((pk.size() - 1) / (pk.back() - pk.front()));
  }
  const auto fit = oracle::fit_line(ns, freq);
  CHECK(fit.r2 > 0.99);
  CHECK(fit.slope > 0.0);
}
