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

#include "rtnb/states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace rtnb {
namespace {

constexpr double kTailThreshold = 1e-6;

void require_order(int N) {
  if (N < 1) throw InvalidArgument("rotation order N must be >= 1, got " + std::to_string(N));
}

double binomial_coefficient(int n, int k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

}  // namespace

DensityMatrix gaussian_state(const GaussianParams& p, FockDim d) {
  for (double v : {p.alpha0, p.theta, p.beta0, p.gamma, p.nbar}) {
    if (!std::isfinite(v)) throw InvalidArgument("gaussian_state: non-finite parameter");
  }
  if (p.alpha0 < 0 || p.beta0 < 0 || p.nbar < 0) {
    throw InvalidArgument("gaussian_state: alpha0, beta0 and nbar must be non-negative");
  }
  // Build in a padded space so that the exponentials do not see the hard
  // truncation wall, then crop back to d.
  const int big = d.value() + std::max(20, d.value());
  const auto ops = mode_operators(FockDim(big));
  const cplx alpha = std::polar(p.alpha0, p.theta);
  const cplx beta = std::polar(p.beta0, p.gamma);

  RVector thermal(big);
  const double q = p.nbar / (p.nbar + 1.0);
  for (int n = 0; n < big; ++n) thermal(n) = std::pow(q, n) / (p.nbar + 1.0);
  CMatrix rho = thermal.cast<cplx>().asDiagonal();

  if (p.beta0 > 0) {
    const CMatrix a2 = ops.annihilation * ops.annihilation;
    const CMatrix gen = 0.5 * (beta * a2.adjoint() - std::conj(beta) * a2);
    const CMatrix s = gen.exp();
    rho = s * rho * s.adjoint();
  }
  if (p.alpha0 > 0) {
    const CMatrix gen = alpha * ops.creation - std::conj(alpha) * ops.annihilation;
    const CMatrix dm = gen.exp();
    rho = dm * rho * dm.adjoint();
  }

  double tail = 0.0;
  for (int n = d.value() - 3; n < big; ++n) tail += rho(n, n).real();
  if (tail > kTailThreshold) {
    std::ostringstream os;
    os << "gaussian_state: population " << tail << " at levels >= " << d.value() - 3
       << " exceeds " << kTailThreshold << "; increase d";
    throw TruncationError(os.str());
  }
  CMatrix out = rho.topLeftCorner(d.size(), d.size());
  out = 0.5 * (out + out.adjoint()).eval();
  out /= out.trace().real();
  return DensityMatrix(std::move(out));
}

CVector fock_state(int n, FockDim d) {
  if (n < 0 || n >= d.value()) {
    throw InvalidArgument("fock_state: level " + std::to_string(n) + " outside 0.." +
                          std::to_string(d.value() - 1));
  }
  CVector v = CVector::Zero(d.size());
  v(n) = 1.0;
  return v;
}

CVector coherent_state(cplx alpha, FockDim d) {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw InvalidArgument("coherent_state: non-finite amplitude");
  }
  CVector v(d.size());
  v(0) = std::exp(-0.5 * std::norm(alpha));
  for (Eigen::Index n = 0; n + 1 < d.size(); ++n) {
    v(n + 1) = v(n) * alpha / std::sqrt(static_cast<double>(n + 1));
  }
  // Everything above d - 1 is missing as well, so measure the tail as 1 minus
  // the kept weight below the top three levels.
  const double kept = v.head(std::max<Eigen::Index>(0, d.size() - 3)).squaredNorm();
  if (1.0 - kept > kTailThreshold) {
    std::ostringstream os;
    os << "coherent_state: |alpha|^2 = " << std::norm(alpha) << " leaves population "
       << 1.0 - kept << " at levels >= " << d.value() - 3 << "; increase d";
    throw TruncationError(os.str());
  }
  return v / v.norm();
}

CodewordPair binomial_codewords(int N, int K, FockDim d) {
  require_order(N);
  if (K < 1) throw InvalidArgument("binomial_codewords: K must be >= 1");
  if (static_cast<long>(K) * N > d.value() - 1) {
    std::ostringstream os;
    os << "binomial_codewords: top level K*N = " << K * N << " does not fit in d = " << d.value();
    throw InvalidArgument(os.str());
  }
  CVector zero = CVector::Zero(d.size());
  CVector one = CVector::Zero(d.size());
  const double norm = std::pow(2.0, K - 1);
  for (int p = 0; p <= K; ++p) {
    const double amp = std::sqrt(binomial_coefficient(K, p) / norm);
    (p % 2 == 0 ? zero : one)(static_cast<Eigen::Index>(p) * N) = amp;
  }
  return {{zero, CodewordLabel::Zero}, {one, CodewordLabel::One}};
}

CodewordPair primitive_to_codewords(const CVector& primitive, int N, FockDim d) {
  require_order(N);
  if (primitive.size() != d.size()) {
    throw DimensionMismatch("primitive_to_codewords: primitive has " +
                            std::to_string(primitive.size()) + " amplitudes, d = " +
                            std::to_string(d.value()));
  }
  CVector zero = CVector::Zero(d.size());
  CVector one = CVector::Zero(d.size());
  for (int m = 0; m < 2 * N; ++m) {
    const CVector rotated = rotation_operator(m * std::numbers::pi / N, d) * primitive;
    zero += rotated;
    one += (m % 2 == 0 ? 1.0 : -1.0) * rotated;
  }
  const double n0 = zero.norm(), n1 = one.norm();
  if (n0 < 1e-12 || n1 < 1e-12) {
    throw DegeneratePrimitive(std::string("primitive has no support on the ") +
                              (n0 < 1e-12 ? "|0>_N" : "|1>_N") + " sublattice");
  }
  return {{zero / n0, CodewordLabel::Zero}, {one / n1, CodewordLabel::One}};
}

CodewordPair cat_codewords(int N, cplx alpha, FockDim d) {
  return primitive_to_codewords(coherent_state(alpha, d), N, d);
}

RSBCode RSBCode::cat(int N, cplx alpha, FockDim d) {
  return RSBCode(CatKind{alpha}, N, d, cat_codewords(N, alpha, d));
}

RSBCode RSBCode::binomial(int N, int K, FockDim d) {
  return RSBCode(BinomialKind{K}, N, d, binomial_codewords(N, K, d));
}

RSBCode RSBCode::generic(const CVector& primitive, int N, FockDim d) {
  return RSBCode(GenericKind{primitive}, N, d, primitive_to_codewords(primitive, N, d));
}

double RSBCode::mean_photon() const {
  double s = 0.0;
  for (Eigen::Index n = 0; n < zero_.size(); ++n) {
    s += static_cast<double>(n) * (std::norm(zero_(n)) + std::norm(one_(n)));
  }
  return 0.5 * s;
}

RSBCode RSBCode::with_dim(FockDim d) const {
  return std::visit(
      [&](const auto& k) -> RSBCode {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, CatKind>) {
          return cat(N_, k.alpha, d);
        } else if constexpr (std::is_same_v<T, BinomialKind>) {
          return binomial(N_, k.K, d);
        } else {
          CVector p = CVector::Zero(d.size());
          const Eigen::Index n = std::min(d.size(), k.primitive.size());
          p.head(n) = k.primitive.head(n);
          return generic(p, N_, d);
        }
      },
      kind_);
}

}  // namespace rtnb
