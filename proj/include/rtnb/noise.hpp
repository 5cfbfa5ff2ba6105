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

// Noise channels on a single truncated mode.
//
// All times are dimensionless (tau = nu t) and rates are ratios to the
// coupling (r = xi / nu). The bare mode frequency drops out in the
// interaction picture and never appears here.

#include <functional>

#include "rtnb/fock.hpp"

namespace rtnb {

struct RTNParams {
  double r = 1.0;
  double tau = 0.0;
};

/// N_f telegraph fluctuators with rates drawn from P(r) ~ 1/r on
/// [r_min, r_max].
struct OneOverFParams {
  int n_f = 1;
  double r_min = 1e-4;
  double r_max = 1e4;
  double tau = 0.0;
  /// Scale the coupling of each fluctuator by 1/sqrt(N_f). Off by default,
  /// which gives factor(N_f) = factor(1)^N_f.
  bool normalize_coupling = false;
};

struct LossParams {
  double kappa_tau = 0.0;
  int k_max = 0;
};

struct GaussianDephasingParams {
  double sigma2 = 0.0;
};

/// <exp(i a phi(tau))> for a single telegraph fluctuator with flip rate r.
/// Even in a; exactly 1 for a = 0 or tau = 0.
double rtn_dephasing_factor(double a, double r, double tau);

DensityMatrix apply_rtn_dephasing(const DensityMatrix& rho, const RTNParams& p);

/// exp(-a^2 sigma2 / 2).
double gaussian_dephasing_factor(double a, double sigma2);

/// Principal-branch exponential integral E1(z). Throws DomainError at z = 0.
cplx exp_integral_e1(cplx z);

/// Rate-averaged single-fluctuator factor (the quantity raised to N_f).
double one_over_f_single(double a, double r_min, double r_max, double tau);

double one_over_f_factor(double a, const OneOverFParams& p);

/// Kraus operators A_k, k = 0..k_max, of pure photon loss.
Channel loss_kraus(const LossParams& p, FockDim d);

/// Smallest k_max whose Kraus set is complete within tol on the whole
/// truncated space (at most d - 1, which is exact).
int loss_k_max(double kappa_tau, FockDim d, double tol = 1e-10);

/// d x d table T(m, n) = factor(|m - n|); every model here is even in m - n.
CMatrix dephasing_table(FockDim d, const std::function<double(int)>& factor);

Channel rtn_channel(const RTNParams& p, FockDim d);
Channel gaussian_dephasing_channel(const GaussianDephasingParams& p, FockDim d);
Channel oneoverf_channel(const OneOverFParams& p, FockDim d);

}  // namespace rtnb
