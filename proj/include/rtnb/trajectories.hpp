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

// Monte-Carlo telegraph process.
//
// A path starts at +1 or -1 with equal probability and flips after
// exponentially distributed waiting times of rate r, which gives the
// autocorrelation <c(t1) c(t2)> = exp(-2 r |t1 - t2|).
//
// Streams: samples are grouped in fixed chunks of kChunkSize. Chunk k draws
// from a std::mt19937_64 seeded with seed_seq{seed_lo, seed_hi, k}, so an
// estimate depends only on (seed, n) and not on the number of workers.

#include <cstdint>
#include <random>
#include <vector>

#include "rtnb/fock.hpp"
#include "rtnb/noise.hpp"

namespace rtnb {

inline constexpr long kChunkSize = 4096;

struct TelegraphPath {
  int initial_sign = 1;
  std::vector<double> flip_times;
  double tau_max = 0.0;
};

TelegraphPath sample_telegraph(double r, double tau_max, std::mt19937_64& rng);
TelegraphPath sample_telegraph(double r, double tau_max, std::uint64_t seed);

/// c(t) for 0 <= t <= tau_max (right-continuous at flips).
int path_value(const TelegraphPath& path, double t);

/// Exact integral of c over [0, tau].
double integrate_phase(const TelegraphPath& path, double tau);

struct McEstimate {
  cplx mean;
  double std_error = 0.0;       ///< of the real part
  double std_error_imag = 0.0;  ///< of the imaginary part
  long n_samples = 0;
};

/// Generator for chunk `chunk` of a run seeded with `seed`.
std::mt19937_64 chunk_rng(std::uint64_t seed, std::uint64_t chunk);

/// Mean of exp(i a phi(tau)) over n telegraph paths.
McEstimate mc_dephasing_factor(double a, double r, double tau, long n, std::uint64_t seed,
                               int workers = 1);

/// Rate drawn from P(r) ~ 1/r on [r_min, r_max] by inverse CDF. Degenerate
/// ranges (r_min == r_max) return r_min.
double sample_log_uniform_rate(double r_min, double r_max, std::mt19937_64& rng);

/// Mean of exp(i a s sum_i phi_i(tau)) with N_f independent paths per sample,
/// each with its own rate. s = 1/sqrt(N_f) when p.normalize_coupling is set,
/// otherwise 1, matching one_over_f_factor.
McEstimate mc_one_over_f_factor(double a, const OneOverFParams& p, long n, std::uint64_t seed,
                                int workers = 1);

}  // namespace rtnb
