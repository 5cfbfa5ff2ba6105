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

#include "rtnb/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

namespace rtnb {
namespace {

void check_rate(double r, double tau_max) {
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("telegraph: r must be positive");
  if (!(tau_max >= 0.0) || !std::isfinite(tau_max)) {
    throw InvalidArgument("telegraph: tau_max must be non-negative");
  }
}

// Walks 2M holding times given their odd and even sums: conditional on a sum
// of M exponentials, the individual terms are that sum times uniform spacings.
// Returns true once tau is reached.
bool walk_block(double x, double y, int M, double tau, double& t, double& phi, int sign,
                std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto spacings = [&](double total) {
    std::vector<double> cut(M + 1);
    cut[0] = 0.0;
    cut[M] = 1.0;
    for (int i = 1; i < M; ++i) cut[i] = u(rng);
    std::sort(cut.begin() + 1, cut.begin() + M);
    std::vector<double> out(M);
    for (int i = 0; i < M; ++i) out[i] = total * (cut[i + 1] - cut[i]);
    return out;
  };
  const auto odd = spacings(x);
  const auto even = spacings(y);
  for (int i = 0; i < M; ++i) {
    for (double h : {odd[i], even[i]}) {
      if (t + h >= tau) {
        phi += sign * (tau - t);
        return true;
      }
      phi += sign * h;
      t += h;
      sign = -sign;
    }
  }
  return false;
}

// Phase of a freshly drawn path at tau, without storing the flips. Long
// stretches are skipped in blocks of 2M flips: the time spent in the current
// and the opposite state are independent Gamma(M, 1/r) variables, and the
// sign is unchanged after an even number of flips. Exact in distribution.
double sample_phase(double r, double tau, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.5);
  std::exponential_distribution<double> wait(r);
  int sign = coin(rng) ? 1 : -1;
  double t = 0.0, phi = 0.0;
  for (;;) {
    const double expected_flips = r * (tau - t);
    if (expected_flips > 64.0) {
      const int M = static_cast<int>(expected_flips / 4.0);
      std::gamma_distribution<double> g(M, 1.0 / r);
      const double x = g(rng), y = g(rng);
      if (t + x + y < tau) {
        phi += sign * (x - y);
        t += x + y;
        continue;
      }
      if (walk_block(x, y, M, tau, t, phi, sign, rng)) return phi;
      continue;  // unreachable in exact arithmetic
    }
    const double next = t + wait(rng);
    if (next >= tau) return phi + sign * (tau - t);
    phi += sign * (next - t);
    t = next;
    sign = -sign;
  }
}

struct ChunkSums {
  double re = 0, im = 0, re2 = 0, im2 = 0;
};

// Runs `one(rng)` n times over seeded chunks and folds the results in chunk
// order.
McEstimate run_chunks(long n, std::uint64_t seed, int workers,
                      const std::function<double(std::mt19937_64&)>& one, double a) {
  if (n < 1000) throw InvalidArgument("Monte-Carlo estimates need at least 1000 samples");
  const long n_chunks = (n + kChunkSize - 1) / kChunkSize;
  std::vector<ChunkSums> sums(n_chunks);
  auto work = [&](long first, long stride) {
    for (long c = first; c < n_chunks; c += stride) {
      auto rng = chunk_rng(seed, static_cast<std::uint64_t>(c));
      const long count = std::min(kChunkSize, n - c * kChunkSize);
      ChunkSums s;
      for (long i = 0; i < count; ++i) {
        const double phi = a * one(rng);
        const double cr = std::cos(phi), ci = std::sin(phi);
        s.re += cr;
        s.im += ci;
        s.re2 += cr * cr;
        s.im2 += ci * ci;
      }
      sums[c] = s;
    }
  };
  workers = std::max(1, std::min<int>(workers, static_cast<int>(n_chunks)));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    for (auto& t : pool) t.join();
  }
  ChunkSums tot;
  for (const auto& s : sums) {
    tot.re += s.re;
    tot.im += s.im;
    tot.re2 += s.re2;
    tot.im2 += s.im2;
  }
  const double dn = static_cast<double>(n);
  const double mr = tot.re / dn, mi = tot.im / dn;
  const double vr = std::max(0.0, (tot.re2 - dn * mr * mr) / (dn - 1));
  const double vi = std::max(0.0, (tot.im2 - dn * mi * mi) / (dn - 1));
  return {cplx(mr, mi), std::sqrt(vr / dn), std::sqrt(vi / dn), n};
}

}  // namespace

std::mt19937_64 chunk_rng(std::uint64_t seed, std::uint64_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  return std::mt19937_64(seq);
}

TelegraphPath sample_telegraph(double r, double tau_max, std::mt19937_64& rng) {
  check_rate(r, tau_max);
  std::bernoulli_distribution coin(0.5);
  std::exponential_distribution<double> wait(r);
  TelegraphPath path;
  path.tau_max = tau_max;
  path.initial_sign = coin(rng) ? 1 : -1;
  double t = 0.0;
  for (;;) {
    t += wait(rng);
    if (t >= tau_max) break;
    path.flip_times.push_back(t);
  }
  return path;
}

TelegraphPath sample_telegraph(double r, double tau_max, std::uint64_t seed) {
  auto rng = chunk_rng(seed, 0);
  return sample_telegraph(r, tau_max, rng);
}

int path_value(const TelegraphPath& path, double t) {
  if (t < 0.0 || t > path.tau_max) throw InvalidArgument("path_value: t outside [0, tau_max]");
  const auto flips = std::upper_bound(path.flip_times.begin(), path.flip_times.end(), t) -
                     path.flip_times.begin();
  return (flips % 2 == 0) ? path.initial_sign : -path.initial_sign;
}

double integrate_phase(const TelegraphPath& path, double tau) {
  if (!(tau >= 0.0) || tau > path.tau_max) {
    throw InvalidArgument("integrate_phase: tau outside [0, tau_max]");
  }
  double phi = 0.0, t = 0.0;
  int sign = path.initial_sign;
  for (double f : path.flip_times) {
    if (f >= tau) break;
    phi += sign * (f - t);
    t = f;
    sign = -sign;
  }
  return phi + sign * (tau - t);
}

McEstimate mc_dephasing_factor(double a, double r, double tau, long n, std::uint64_t seed,
                               int workers) {
  check_rate(r, tau);
  if (a == 0.0 || tau == 0.0) {
    if (n < 1000) throw InvalidArgument("Monte-Carlo estimates need at least 1000 samples");
    return {cplx(1.0, 0.0), 0.0, 0.0, n};
  }
  return run_chunks(
      n, seed, workers, [&](std::mt19937_64& rng) { return sample_phase(r, tau, rng); }, a);
}

double sample_log_uniform_rate(double r_min, double r_max, std::mt19937_64& rng) {
  if (!(r_min > 0.0) || r_max < r_min) {
    throw InvalidArgument("rate range must satisfy 0 < r_min <= r_max");
  }
  if (r_min == r_max) return r_min;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return r_min * std::pow(r_max / r_min, u(rng));
}

McEstimate mc_one_over_f_factor(double a, const OneOverFParams& p, long n, std::uint64_t seed,
                                int workers) {
  if (p.n_f < 1) throw InvalidArgument("mc_one_over_f_factor: n_f must be >= 1");
  if (!(p.r_min > 0.0) || p.r_max < p.r_min) {
    throw InvalidArgument("mc_one_over_f_factor: need 0 < r_min <= r_max");
  }
  if (!(p.tau >= 0.0)) throw InvalidArgument("mc_one_over_f_factor: tau must be >= 0");
  if (a == 0.0 || p.tau == 0.0) {
    if (n < 1000) throw InvalidArgument("Monte-Carlo estimates need at least 1000 samples");
    return {cplx(1.0, 0.0), 0.0, 0.0, n};
  }
  const double scale = p.normalize_coupling ? 1.0 / std::sqrt(static_cast<double>(p.n_f)) : 1.0;
  return run_chunks(
      n, seed, workers,
      [&](std::mt19937_64& rng) {
        double phi = 0.0;
        for (int i = 0; i < p.n_f; ++i) {
          const double r = sample_log_uniform_rate(p.r_min, p.r_max, rng);
          phi += sample_phase(r, p.tau, rng);
        }
        return scale * phi;
      },
      a);
}

}  // namespace rtnb
