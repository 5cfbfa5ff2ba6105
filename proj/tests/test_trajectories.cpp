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

#include "rtnb/noise.hpp"
#include "rtnb/trajectories.hpp"

using namespace rtnb;

TEST_CASE("telegraph paths") {
  SUBCASE("deterministic per seed") {
    const auto a = sample_telegraph(1.3, 10.0, std::uint64_t{42});
    const auto b = sample_telegraph(1.3, 10.0, std::uint64_t{42});
    CHECK(a.initial_sign == b.initial_sign);
    CHECK(a.flip_times == b.flip_times);
  }
  SUBCASE("flip times increasing and in range") {
    std::mt19937_64 rng(1);
    for (int k = 0; k < 100; ++k) {
      const auto p = sample_telegraph(3.0, 5.0, rng);
      for (std::size_t i = 0; i < p.flip_times.size(); ++i) {
        CHECK(p.flip_times[i] >= 0.0);
        CHECK(p.flip_times[i] <= 5.0);
        if (i) CHECK(p.flip_times[i] > p.flip_times[i - 1]);
      }
    }
  }
  SUBCASE("mean zero and autocorrelation e^{-2 r lag}") {
    std::mt19937_64 rng(7);
    const long n = 100000;
    const double lag = 0.5;
    double s = 0, s2 = 0, c = 0, c2 = 0;
    for (long k = 0; k < n; ++k) {
      const auto p = sample_telegraph(1.0, 2.0, rng);
      const double v = path_value(p, 1.0);
      const double prod = path_value(p, 0.2) * path_value(p, 0.2 + lag);
      s += v;
      s2 += v * v;
      c += prod;
      c2 += prod * prod;
    }
    const double mean = s / n, se = std::sqrt((s2 / n - mean * mean) / n);
    CHECK(std::abs(mean) <= 3 * se);
    const double ac = c / n, se_ac = std::sqrt((c2 / n - ac * ac) / n);
    CHECK(std::abs(ac - std::exp(-1.0)) <= 3 * se_ac);
  }
}

TEST_CASE("integrate_phase") {
  TelegraphPath none{1, {}, 3.0};
  CHECK(integrate_phase(none, 2.0) == 2.0);
  TelegraphPath one{1, {1.0}, 3.0};
  CHECK(integrate_phase(one, 2.0) == 0.0);
  TelegraphPath neg{-1, {0.5, 2.0}, 3.0};
  CHECK(integrate_phase(neg, 3.0) == doctest::Approx(-0.5 + 1.5 - 1.0));
  CHECK_THROWS_AS(integrate_phase(none, 3.5), InvalidArgument);
  CHECK_THROWS_AS(integrate_phase(none, -0.1), InvalidArgument);

  std::mt19937_64 rng(3);
  for (int k = 0; k < 1000; ++k) {
    const auto p = sample_telegraph(2.0, 4.0, rng);
    CHECK(std::abs(integrate_phase(p, 4.0)) <= 4.0 + 1e-12);
  }
}

TEST_CASE("Monte-Carlo dephasing factor") {
  SUBCASE("a = 0 is exact") {
    const auto e = mc_dephasing_factor(0, 1.0, 2.0, 1000, 1);
    CHECK(e.mean == cplx(1.0));
    CHECK(e.std_error == 0.0);
  }
  SUBCASE("minimum sample count") { CHECK_THROWS_AS(mc_dephasing_factor(1, 1.0, 1.0, 999, 1), InvalidArgument); }
  SUBCASE("agrees with the analytic factor") {
    const auto e = mc_dephasing_factor(1, 0.1, std::numbers::pi, 100000, 5);
    CHECK(std::abs(e.mean.real() - rtn_dephasing_factor(1, 0.1, std::numbers::pi)) <= 3 * e.std_error);
    const auto f = mc_dephasing_factor(2, 10.0, 1.0, 100000, 6);
    CHECK(std::abs(f.mean.real() - rtn_dephasing_factor(2, 10.0, 1.0)) <= 3 * f.std_error);
    CHECK(std::abs(f.mean.imag()) <= 4 * f.std_error_imag);
  }
  SUBCASE("independent of the worker count") {
    const auto a = mc_dephasing_factor(1, 0.7, 1.5, 20000, 9, 1);
    const auto b = mc_dephasing_factor(1, 0.7, 1.5, 20000, 9, 3);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
  }
  SUBCASE("many-flip regime uses block skipping without bias") {
    const auto e = mc_dephasing_factor(3, 200.0, 5.0, 100000, 12);
    CHECK(std::abs(e.mean.real() - rtn_dephasing_factor(3, 200.0, 5.0)) <= 3 * e.std_error);
  }
  SUBCASE("disjoint seeds give uncorrelated estimates") {
    const auto a = mc_dephasing_factor(1, 0.5, 1.0, 50000, 100);
    const auto b = mc_dephasing_factor(1, 0.5, 1.0, 50000, 101);
    CHECK(a.mean != b.mean);
    CHECK(std::abs(a.mean.real() - b.mean.real()) <= 4 * std::hypot(a.std_error, b.std_error));
  }
}

TEST_CASE("log-uniform rates") {
  std::mt19937_64 rng(21);
  CHECK(sample_log_uniform_rate(2.0, 2.0, rng) == 2.0);
  // chi-square over 10 equal bins in log r
  const int bins = 10;
  const long n = 100000;
  std::vector<long> counts(bins, 0);
  for (long k = 0; k < n; ++k) {
    const double r = sample_log_uniform_rate(1e-4, 1e4, rng);
    REQUIRE(r >= 1e-4);
    REQUIRE(r <= 1e4);
    const int b = std::min(bins - 1, static_cast<int>((std::log10(r) + 4.0) / 8.0 * bins));
    ++counts[b];
  }
  double chi2 = 0;
  const double expect = static_cast<double>(n) / bins;
  for (long c : counts) chi2 += (c - expect) * (c - expect) / expect;
  CHECK(chi2 < 21.666);  // 99th percentile, 9 degrees of freedom
}

TEST_CASE("Monte-Carlo 1/f factor") {
  SUBCASE("degenerate rate range reduces to a single fluctuator") {
    OneOverFParams p;
    p.n_f = 1;
    p.r_min = p.r_max = 0.4;
    p.tau = 2.0;
    const auto a = mc_one_over_f_factor(1, p, 100000, 3);
    const auto b = mc_dephasing_factor(1, 0.4, 2.0, 100000, 4);
    CHECK(std::abs(a.mean.real() - b.mean.real()) <= 3 * std::hypot(a.std_error, b.std_error));
  }
  SUBCASE("agrees with the analytic factor") {
    OneOverFParams p;
    p.n_f = 2;
    p.tau = 1.0;
    const auto e = mc_one_over_f_factor(1, p, 100000, 11);
    CHECK(std::abs(e.mean.real() - one_over_f_factor(1, p)) <= 3 * e.std_error);
    p.n_f = 10;
    p.tau = 2.0;
    const auto f = mc_one_over_f_factor(1, p, 100000, 12);
    CHECK(std::abs(f.mean.real() - one_over_f_factor(1, p)) <= 3 * f.std_error);
  }
  SUBCASE("normalised coupling") {
    OneOverFParams p;
    p.n_f = 4;
    p.tau = 1.5;
    p.normalize_coupling = true;
    const auto e = mc_one_over_f_factor(2, p, 100000, 13);
    CHECK(std::abs(e.mean.real() - one_over_f_factor(2, p)) <= 3 * e.std_error);
  }
}
