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

// Truncated Fock-space linear algebra.
//
// Everything is dense. A single mode is truncated to levels 0..d-1; two-mode
// operators use the Kronecker index m * d_b + n (mode a first). Memory is
// O(d^2) per single-mode operator and O(d^4) for superoperators and Choi
// matrices, so superoperator-level work is intended for d <= ~40.
//
// Superoperators act on column-stacked operators:
//   vec(A X B) = (B^T (x) A) vec(X),   vec index of X(i, j) is i + rows * j,
// and the Choi matrix is J = sum_k vec(K_k) vec(K_k)^dagger.

#include <complex>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "rtnb/errors.hpp"

namespace rtnb {

using cplx = std::complex<double>;

template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

using CMatrix = ComplexMatrix<double>;
using CVector = ComplexVector<double>;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Truncation dimension of a single bosonic mode (levels 0..d-1).
class FockDim {
 public:
  explicit FockDim(int d) : d_(d) {
    if (d < 2) throw InvalidArgument("FockDim: d must be >= 2, got " + std::to_string(d));
  }
  int value() const noexcept { return d_; }
  Eigen::Index size() const noexcept { return d_; }
  friend bool operator==(FockDim, FockDim) = default;

 private:
  int d_;
};

template <typename Scalar = double>
struct ModeOperators {
  ComplexMatrix<Scalar> annihilation;
  ComplexMatrix<Scalar> creation;
  ComplexMatrix<Scalar> number;
};

/// a, a^dagger and n on the truncated space. [a, a^dagger] = I except for the
/// bottom-right entry, which is 1 - d (truncation artifact).
template <typename Scalar = double>
ModeOperators<Scalar> mode_operators(FockDim d) {
  const Eigen::Index n = d.size();
  ModeOperators<Scalar> ops;
  ops.annihilation = ComplexMatrix<Scalar>::Zero(n, n);
  ops.number = ComplexMatrix<Scalar>::Zero(n, n);
  for (Eigen::Index m = 0; m + 1 < n; ++m) {
    ops.annihilation(m, m + 1) = std::sqrt(static_cast<Scalar>(m + 1));
  }
  for (Eigen::Index m = 0; m < n; ++m) ops.number(m, m) = static_cast<Scalar>(m);
  ops.creation = ops.annihilation.adjoint();
  return ops;
}

/// exp(i theta n) as a dense diagonal matrix.
template <typename Scalar = double>
ComplexMatrix<Scalar> rotation_operator(Scalar theta, FockDim d) {
  ComplexVector<Scalar> diag(d.size());
  for (Eigen::Index n = 0; n < d.size(); ++n) {
    diag(n) = std::polar(Scalar(1), theta * static_cast<Scalar>(n));
  }
  return diag.asDiagonal();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = 1e-10) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

/// Eigenvalues (ascending) of a Hermitian matrix; only the lower triangle is read.
RVector hermitian_eigenvalues(const CMatrix& m);

/// Sum of singular values. Hermitian input goes through the eigenvalue path.
template <typename Derived>
double trace_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch("trace_norm: matrix must be square");
  }
  if (m.size() == 0) return 0.0;
  const CMatrix dense = m.template cast<cplx>();
  const double scale = std::max(1.0, dense.cwiseAbs().maxCoeff());
  if (is_hermitian(dense, 1e-13 * scale)) {
    return hermitian_eigenvalues(dense).cwiseAbs().sum();
  }
  Eigen::BDCSVD<CMatrix> svd(dense);
  return svd.singularValues().sum();
}

/// Hermitian, unit-trace, positive semidefinite matrix on a truncated space.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kTraceTol = 1e-9;
  static constexpr double kEigenTol = 1e-9;

  /// Validates Hermiticity, trace and positivity.
  explicit DensityMatrix(CMatrix m);

  /// |psi><psi|; psi must be normalised within 1e-9.
  static DensityMatrix pure(const CVector& psi);

  /// Skips validation. Used for outputs of maps that preserve the invariants
  /// up to rounding (and for non-trace-preserving channel outputs).
  static DensityMatrix unchecked(CMatrix m);

  const CMatrix& matrix() const noexcept { return mat_; }
  FockDim dim() const { return FockDim(static_cast<int>(mat_.rows())); }
  double trace() const { return mat_.trace().real(); }
  double purity() const { return (mat_ * mat_).trace().real(); }
  /// Total population of levels >= level.
  double population_from(int level) const;

 private:
  struct Unchecked {};
  DensityMatrix(CMatrix m, Unchecked) : mat_(std::move(m)) {}
  CMatrix mat_;
};

/// Throws TruncationError when the population of the top `top_levels` Fock
/// levels exceeds `threshold`.
void check_truncation(const DensityMatrix& rho, double threshold = 1e-6, int top_levels = 3);
void check_truncation(const CVector& psi, double threshold = 1e-6, int top_levels = 3);

struct KrausSet {
  std::vector<CMatrix> ops;
};

/// d_out^2 x d_in^2 matrix in the column-stacking convention.
struct SuperOp {
  CMatrix mat;
};

/// (d_out d_in) x (d_out d_in) Choi matrix, J = sum_k vec(K_k) vec(K_k)^dagger.
struct Choi {
  CMatrix mat;
};

/// Element-wise map rho(m, n) -> factors(m, n) * rho(m, n). Equivalent to a
/// diagonal superoperator; stored as a d x d table.
struct DephasingTable {
  CMatrix factors;
};

class Channel;

/// Stages applied first to last.
struct ChannelSequence {
  std::vector<Channel> stages;
};

/// Completely positive map between truncated spaces with interchangeable
/// representations.
class Channel {
 public:
  using Repr = std::variant<KrausSet, SuperOp, Choi, DephasingTable, ChannelSequence>;

  static Channel from_kraus(std::vector<CMatrix> ops);
  static Channel from_superop(CMatrix s, int d_in, int d_out);
  static Channel from_choi(CMatrix j, int d_in, int d_out);
  static Channel dephasing(CMatrix factors);
  static Channel identity(FockDim d);

  int d_in() const noexcept { return d_in_; }
  int d_out() const noexcept { return d_out_; }
  const Repr& repr() const noexcept { return repr_; }

  template <typename T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&repr_);
  }

 private:
  Channel(int d_in, int d_out, Repr repr) : d_in_(d_in), d_out_(d_out), repr_(std::move(repr)) {}
  int d_in_;
  int d_out_;
  Repr repr_;

  friend Channel compose(const Channel& second, const Channel& first);
};

/// second o first.
Channel compose(const Channel& second, const Channel& first);

CMatrix superop_to_choi(const CMatrix& s, int d_in, int d_out);
CMatrix choi_to_superop(const CMatrix& j, int d_in, int d_out);

CMatrix superoperator(const Channel& c);
CMatrix choi_matrix(const Channel& c);

/// Kraus operators from the eigendecomposition of the Choi matrix, dropping
/// eigenvalues below `cutoff`. Throws NotCompletelyPositive if an eigenvalue
/// is below -cp_tol.
Channel kraus_from_superop(const Channel& c, double cutoff = 1e-12, double cp_tol = 1e-8);

/// Any representation to a Kraus set. Dephasing tables are decomposed through
/// their d x d Choi block rather than the full Choi matrix.
Channel to_kraus(const Channel& c, double cutoff = 1e-12, double cp_tol = 1e-8);

bool is_completely_positive(const Channel& c, double tol = 1e-8);

/// max |(sum_k K^dagger K - I)_ij|.
double trace_preservation_error(const Channel& c);

/// Action on an arbitrary operator.
CMatrix apply_channel(const Channel& c, const CMatrix& op);
DensityMatrix apply_channel(const Channel& c, const DensityMatrix& rho);

}  // namespace rtnb
