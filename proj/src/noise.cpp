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

#include "rtnb/noise.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace rtnb {
namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw InvalidArgument(msg);
}

// Series in s = Omega^2 tau^2 for cosh(Omega tau) and sinh(Omega tau) / Omega.
// Valid for either sign of s, so it bridges the r = |a| crossover.
void cosh_sinh_series(double s, double tau, double& c, double& sh) {
  double term_c = 1.0, term_s = 1.0;
  c = 1.0;
  sh = 1.0;
  for (int k = 1; k < 30; ++k) {
    term_c *= s / ((2.0 * k - 1) * (2.0 * k));
    term_s *= s / ((2.0 * k) * (2.0 * k + 1));
    c += term_c;
    sh += term_s;
    if (std::abs(term_c) < 1e-18 && std::abs(term_s) < 1e-18) break;
  }
  sh *= tau;
}

cplx e1_series(cplx z) {
  // E1(z) = -gamma - log z - sum_{k>=1} (-z)^k / (k k!)
  cplx sum = 0.0, term = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= -z / static_cast<double>(k);
    const cplx add = term / static_cast<double>(k);
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return -std::numbers::egamma - std::log(z) - sum;
}

cplx e1_continued_fraction(cplx z) {
  // E1(z) = e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - ...))), modified Lentz.
  constexpr double tiny = 1e-300;
  cplx b = z + 1.0;
  cplx c = 1.0 / tiny;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 1; i < 20000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    const cplx del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) return h * std::exp(-z);
  }
  throw NotConverged("exp_integral_e1: continued fraction did not converge");
}

}  // namespace

double rtn_dephasing_factor(double a, double r, double tau) {
  require(std::isfinite(a) && std::isfinite(r) && std::isfinite(tau),
          "rtn_dephasing_factor: non-finite argument");
  require(r >= 0.0, "rtn_dephasing_factor: r must be non-negative");
  require(tau >= 0.0, "rtn_dephasing_factor: tau must be non-negative");
  a = std::abs(a);
  if (a == 0.0 || tau == 0.0) return 1.0;

  const double s = (r - a) * (r + a) * tau * tau;  // Omega^2 tau^2
  if (std::abs(s) < 1e-2) {
    double c, sh;
    cosh_sinh_series(s, tau, c, sh);
    return std::exp(-r * tau) * (c + r * sh);
  }
  if (r > a) {
    const double omega = std::sqrt((r - a) * (r + a));
    const double slow = a * a / (r + omega);  // r - Omega without cancellation
    return 0.5 * (1.0 + r / omega) * std::exp(-slow * tau) +
           0.5 * (1.0 - r / omega) * std::exp(-(r + omega) * tau);
  }
  const double w = std::sqrt((a - r) * (a + r));
  return std::exp(-r * tau) * (std::cos(w * tau) + (r / w) * std::sin(w * tau));
}

DensityMatrix apply_rtn_dephasing(const DensityMatrix& rho, const RTNParams& p) {
  const CMatrix t = dephasing_table(rho.dim(), [&](int a) { return rtn_dephasing_factor(a, p.r, p.tau); });
  return DensityMatrix::unchecked(t.cwiseProduct(rho.matrix()));
}

double gaussian_dephasing_factor(double a, double sigma2) {
  require(sigma2 >= 0.0 && std::isfinite(sigma2), "gaussian_dephasing_factor: sigma2 must be >= 0");
  return std::exp(-0.5 * a * a * sigma2);
}

cplx exp_integral_e1(cplx z) {
  if (z == cplx(0.0)) throw DomainError("exp_integral_e1: logarithmic singularity at z = 0");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("exp_integral_e1: non-finite argument");
  }
  // The series loses about |z| / ln 10 digits to cancellation, so it is only
  // used near the origin.
  if (std::abs(z) <= 2.0) return e1_series(z);
  return e1_continued_fraction(z);
}

double one_over_f_single(double a, double r_min, double r_max, double tau) {
  require(std::isfinite(r_min) && std::isfinite(r_max) && r_min > 0.0,
          "one_over_f: r_min must be positive and finite");
  require(r_min < r_max, "one_over_f: r_min must be strictly below r_max");
  require(tau >= 0.0 && std::isfinite(tau), "one_over_f: tau must be non-negative");
  a = std::abs(a);
  if (a == 0.0 || tau == 0.0) return 1.0;

  const cplx ia(0.0, a);
  const cplx phase = std::exp(cplx(0.0, a * tau));
  // Antiderivative in the substitution variable x = r +- Omega.
  auto F = [&](cplx x) {
    return exp_integral_e1(x * tau) - 0.5 * phase * exp_integral_e1((x + ia) * tau) -
           0.5 * std::conj(phase) * exp_integral_e1((x - ia) * tau);
  };
  // F(z^+) + F(z^-) above the crossover, 2 Re F(z) with z = r - i sqrt(a^2 - r^2)
  // below it. Both branches meet at x = a, so ties need no special routing.
  auto branch_sum = [&](double r) -> double {
    if (r >= a) {
      const double root = std::sqrt((r - a) * (r + a));
      const double zp = r + root;
      const double zm = a * a / zp;
      return (F(zp) + F(zm)).real();
    }
    const cplx z(r, -std::sqrt((a - r) * (a + r)));
    return 2.0 * F(z).real();
  };
  const double integral = branch_sum(r_max) - branch_sum(r_min);
  return integral / std::log(r_max / r_min);
}

double one_over_f_factor(double a, const OneOverFParams& p) {
  require(p.n_f >= 1, "one_over_f_factor: n_f must be >= 1");
  const double scale = p.normalize_coupling ? 1.0 / std::sqrt(static_cast<double>(p.n_f)) : 1.0;
  const double g = one_over_f_single(a * scale, p.r_min, p.r_max, p.tau);
  if (a == 0.0 || p.tau == 0.0) return 1.0;
  return std::pow(g, p.n_f);
}

Channel loss_kraus(const LossParams& p, FockDim d) {
  require(std::isfinite(p.kappa_tau) && p.kappa_tau >= 0.0, "loss_kraus: kappa_tau must be >= 0");
  require(p.k_max >= 0, "loss_kraus: k_max must be >= 0");
  if (p.k_max >= d.value()) {
    throw InvalidArgument("loss_kraus: k_max = " + std::to_string(p.k_max) +
                          " must be below d = " + std::to_string(d.value()));
  }
  if (p.kappa_tau == 0.0) return Channel::from_kraus({CMatrix::Identity(d.size(), d.size())});
  const double lp = std::log(-std::expm1(-p.kappa_tau));  // ln(1 - e^{-kappa tau})
  const double lq = -p.kappa_tau;                         // ln(e^{-kappa tau})
  std::vector<CMatrix> ops;
  for (int k = 0; k <= p.k_max; ++k) {
    CMatrix A = CMatrix::Zero(d.size(), d.size());
    for (int m = 0; m + k < d.value(); ++m) {
      // <m| A_k |m+k> = sqrt(C(m+k, k) p^k (1-p)^m)
      const double lc = std::lgamma(m + k + 1.0) - std::lgamma(k + 1.0) - std::lgamma(m + 1.0);
      A(m, m + k) = std::exp(0.5 * (lc + k * lp + m * lq));
    }
    ops.push_back(std::move(A));
  }
  return Channel::from_kraus(std::move(ops));
}

int loss_k_max(double kappa_tau, FockDim d, double tol) {
  require(kappa_tau >= 0.0, "loss_k_max: kappa_tau must be >= 0");
  if (kappa_tau == 0.0) return 0;
  const double p = -std::expm1(-kappa_tau);
  for (int K = 0; K < d.value(); ++K) {
    double worst = 0.0;
    for (int n = K + 1; n < d.value(); ++n) {
      // Missing weight is the binomial tail P(k > K) for n photons.
      double kept = 0.0;
      for (int k = 0; k <= K; ++k) {
        const double lc = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
        kept += std::exp(lc + k * std::log(p) + (n - k) * (-kappa_tau));
      }
      worst = std::max(worst, 1.0 - kept);
    }
    if (worst <= tol) return K;
  }
  return d.value() - 1;
}

CMatrix dephasing_table(FockDim d, const std::function<double(int)>& factor) {
  const int n = d.value();
  std::vector<double> by_diff(n);
  for (int a = 0; a < n; ++a) by_diff[a] = factor(a);
  CMatrix t(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t(i, j) = by_diff[std::abs(i - j)];
  return t;
}

Channel rtn_channel(const RTNParams& p, FockDim d) {
  return Channel::dephasing(dephasing_table(d, [&](int a) { return rtn_dephasing_factor(a, p.r, p.tau); }));
}

Channel gaussian_dephasing_channel(const GaussianDephasingParams& p, FockDim d) {
  return Channel::dephasing(
      dephasing_table(d, [&](int a) { return gaussian_dephasing_factor(a, p.sigma2); }));
}

Channel oneoverf_channel(const OneOverFParams& p, FockDim d) {
  return Channel::dephasing(dephasing_table(d, [&](int a) { return one_over_f_factor(a, p); }));
}

}  // namespace rtnb
