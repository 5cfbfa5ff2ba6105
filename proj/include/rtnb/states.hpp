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

#include <variant>

#include "rtnb/fock.hpp"

namespace rtnb {

/// D(alpha) S(beta) nu_th(nbar) S(beta)^dagger D(alpha)^dagger with
/// alpha = alpha0 e^{i theta} and beta = beta0 e^{i gamma}.
struct GaussianParams {
  double alpha0 = 0.0;
  double theta = 0.0;
  double beta0 = 0.0;
  double gamma = 0.0;
  double nbar = 0.0;
};

DensityMatrix gaussian_state(const GaussianParams& p, FockDim d);

CVector fock_state(int n, FockDim d);

/// Truncated coherent state. Throws TruncationError when the tail is not
/// negligible; the returned vector is renormalised on the truncated space.
CVector coherent_state(cplx alpha, FockDim d);

enum class CodewordLabel { Zero, One, Plus, Minus };

struct Codeword {
  CVector vec;
  CodewordLabel label;
};

struct CodewordPair {
  Codeword zero;
  Codeword one;
};

/// Binomial (N, K) code. Requires K*N <= d - 1 so that the top Fock level of
/// the codewords fits.
CodewordPair binomial_codewords(int N, int K, FockDim d);

/// Cat code from the 2N rotated coherent states alpha e^{i m pi / N}.
CodewordPair cat_codewords(int N, cplx alpha, FockDim d);

/// |j>_N proportional to sum_{m=0}^{2N-1} (-1)^{jm} R(m pi / N) |primitive>.
/// Throws DegeneratePrimitive if either projection vanishes.
CodewordPair primitive_to_codewords(const CVector& primitive, int N, FockDim d);

struct CatKind {
  cplx alpha;
};
struct BinomialKind {
  int K;
};
struct GenericKind {
  CVector primitive;
};

/// Order-N rotation-symmetric bosonic code.
class RSBCode {
 public:
  using Kind = std::variant<CatKind, BinomialKind, GenericKind>;

  static RSBCode cat(int N, cplx alpha, FockDim d);
  static RSBCode binomial(int N, int K, FockDim d);
  static RSBCode generic(const CVector& primitive, int N, FockDim d);

  int order() const noexcept { return N_; }
  FockDim dim() const noexcept { return d_; }
  const Kind& kind() const noexcept { return kind_; }

  const CVector& zero() const noexcept { return zero_; }
  const CVector& one() const noexcept { return one_; }
  CVector plus() const { return (zero_ + one_) / std::sqrt(2.0); }
  CVector minus() const { return (zero_ - one_) / std::sqrt(2.0); }

  /// Average photon number of the two codewords.
  double mean_photon() const;

  /// Same code rebuilt at a different truncation.
  RSBCode with_dim(FockDim d) const;

 private:
  RSBCode(Kind kind, int N, FockDim d, CodewordPair cw)
      : kind_(std::move(kind)), N_(N), d_(d), zero_(std::move(cw.zero.vec)),
        one_(std::move(cw.one.vec)) {}
  Kind kind_;
  int N_;
  FockDim d_;
  CVector zero_;
  CVector one_;
};

}  // namespace rtnb
