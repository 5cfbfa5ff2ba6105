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

#include "rtnb/fock.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace rtnb {
namespace {

std::string dims(Eigen::Index r, Eigen::Index c) {
  std::ostringstream os;
  os << r << "x" << c;
  return os.str();
}

void require_finite(const CMatrix& m, const char* who) {
  if (!m.allFinite()) throw InvalidArgument(std::string(who) + ": non-finite entries");
}

int sqrt_dim(Eigen::Index n, const char* who) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n))));
  if (d * d != n) throw DimensionMismatch(std::string(who) + ": size is not a perfect square");
  return static_cast<int>(d);
}

CMatrix vec(const CMatrix& m) {
  return Eigen::Map<const CVector>(m.data(), m.size());
}

CMatrix unvec(const CVector& v, Eigen::Index rows, Eigen::Index cols) {
  return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

CMatrix kraus_superop(const std::vector<CMatrix>& ops) {
  const Eigen::Index dout = ops.front().rows();
  const Eigen::Index din = ops.front().cols();
  CMatrix s = CMatrix::Zero(dout * dout, din * din);
  // S((i, j), (k, l)) = sum_K K(i, k) conj(K(j, l)).
  for (const auto& k : ops) {
    const CMatrix kc = k.conjugate();
    for (Eigen::Index l = 0; l < din; ++l) {
      for (Eigen::Index kk = 0; kk < din; ++kk) {
        for (Eigen::Index j = 0; j < dout; ++j) {
          const cplx w = kc(j, l);
          if (w == cplx(0.0)) continue;
          s.block(dout * j, kk + din * l, dout, 1) += w * k.col(kk);
        }
      }
    }
  }
  return s;
}

Eigen::SelfAdjointEigenSolver<CMatrix> hermitian_eig(const CMatrix& m) {
  // Symmetrise first so a tiny anti-Hermitian residue cannot leak in.
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success) throw Error("hermitian eigensolver failed to converge");
  return es;
}

std::vector<CMatrix> kraus_from_choi(const CMatrix& j, int d_in, int d_out, double cutoff,
                                     double cp_tol) {
  const auto es = hermitian_eig(j);
  const RVector& ev = es.eigenvalues();
  if (ev.size() > 0 && ev(0) < -cp_tol) {
    std::ostringstream os;
    os << "Choi matrix has eigenvalue " << ev(0) << " < -" << cp_tol;
    throw NotCompletelyPositive(os.str());
  }
  std::vector<CMatrix> ops;
  for (Eigen::Index s = ev.size() - 1; s >= 0; --s) {
    if (ev(s) < cutoff) break;
    const CVector v = std::sqrt(ev(s)) * es.eigenvectors().col(s);
    ops.push_back(unvec(v, d_out, d_in));
  }
  if (ops.empty()) ops.push_back(CMatrix::Zero(d_out, d_in));
  return ops;
}

std::vector<CMatrix> kraus_from_dephasing(const CMatrix& f, double cutoff, double cp_tol) {
  if (!is_hermitian(f, 1e-12)) {
    throw NotCompletelyPositive("dephasing table is not Hermitian");
  }
  const auto es = hermitian_eig(f);
  const RVector& ev = es.eigenvalues();
  if (ev(0) < -cp_tol) {
    std::ostringstream os;
    os << "dephasing table has eigenvalue " << ev(0) << " < -" << cp_tol;
    throw NotCompletelyPositive(os.str());
  }
  std::vector<CMatrix> ops;
  for (Eigen::Index s = ev.size() - 1; s >= 0; --s) {
    if (ev(s) < cutoff) break;
    const CVector v = std::sqrt(ev(s)) * es.eigenvectors().col(s);
    ops.push_back(v.asDiagonal());
  }
  return ops;
}

}  // namespace

RVector hermitian_eigenvalues(const CMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("hermitian_eigenvalues: not square");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("hermitian eigensolver failed to converge");
  return es.eigenvalues();
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(CMatrix m) : mat_(std::move(m)) {
  if (mat_.rows() != mat_.cols()) {
    throw DimensionMismatch("DensityMatrix: matrix is " + dims(mat_.rows(), mat_.cols()));
  }
  (void)FockDim(static_cast<int>(mat_.rows()));
  require_finite(mat_, "DensityMatrix");
  if (!is_hermitian(mat_, kHermitianTol)) throw InvalidArgument("DensityMatrix: not Hermitian");
  if (std::abs(mat_.trace() - cplx(1.0)) > kTraceTol) {
    std::ostringstream os;
    os << "DensityMatrix: trace " << mat_.trace().real() << " != 1";
    throw InvalidArgument(os.str());
  }
  const double lo = hermitian_eigenvalues(mat_)(0);
  if (lo < -kEigenTol) {
    std::ostringstream os;
    os << "DensityMatrix: eigenvalue " << lo << " is negative";
    throw InvalidArgument(os.str());
  }
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-9) {
    throw InvalidArgument("DensityMatrix::pure: state vector is not normalised");
  }
  (void)FockDim(static_cast<int>(psi.size()));
  return DensityMatrix(psi * psi.adjoint(), Unchecked{});
}

DensityMatrix DensityMatrix::unchecked(CMatrix m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("DensityMatrix: not square");
  return DensityMatrix(std::move(m), Unchecked{});
}

double DensityMatrix::population_from(int level) const {
  double p = 0.0;
  for (Eigen::Index n = std::max(0, level); n < mat_.rows(); ++n) p += mat_(n, n).real();
  return p;
}

void check_truncation(const DensityMatrix& rho, double threshold, int top_levels) {
  const int d = static_cast<int>(rho.matrix().rows());
  const double tail = rho.population_from(d - top_levels);
  if (tail > threshold) {
    std::ostringstream os;
    os << "population " << tail << " in the top " << top_levels << " of " << d
       << " Fock levels exceeds " << threshold;
    throw TruncationError(os.str());
  }
}

void check_truncation(const CVector& psi, double threshold, int top_levels) {
  const Eigen::Index d = psi.size();
  const Eigen::Index from = std::max<Eigen::Index>(0, d - top_levels);
  const double tail = psi.tail(d - from).squaredNorm();
  if (tail > threshold) {
    std::ostringstream os;
    os << "population " << tail << " in the top " << top_levels << " of " << d
       << " Fock levels exceeds " << threshold;
    throw TruncationError(os.str());
  }
}

// ---------------------------------------------------------------------------
// Channel

Channel Channel::from_kraus(std::vector<CMatrix> ops) {
  if (ops.empty()) throw InvalidArgument("Channel::from_kraus: empty Kraus set");
  const Eigen::Index r = ops.front().rows(), c = ops.front().cols();
  for (const auto& k : ops) {
    if (k.rows() != r || k.cols() != c) {
      throw DimensionMismatch("Channel::from_kraus: Kraus operators differ in shape");
    }
    require_finite(k, "Channel::from_kraus");
  }
  return Channel(static_cast<int>(c), static_cast<int>(r), KrausSet{std::move(ops)});
}

Channel Channel::from_superop(CMatrix s, int d_in, int d_out) {
  if (s.rows() != static_cast<Eigen::Index>(d_out) * d_out ||
      s.cols() != static_cast<Eigen::Index>(d_in) * d_in) {
    throw DimensionMismatch("Channel::from_superop: expected " +
                            dims(Eigen::Index(d_out) * d_out, Eigen::Index(d_in) * d_in) +
                            ", got " + dims(s.rows(), s.cols()));
  }
  require_finite(s, "Channel::from_superop");
  return Channel(d_in, d_out, SuperOp{std::move(s)});
}

Channel Channel::from_choi(CMatrix j, int d_in, int d_out) {
  const Eigen::Index n = static_cast<Eigen::Index>(d_in) * d_out;
  if (j.rows() != n || j.cols() != n) {
    throw DimensionMismatch("Channel::from_choi: expected " + dims(n, n) + ", got " +
                            dims(j.rows(), j.cols()));
  }
  require_finite(j, "Channel::from_choi");
  return Channel(d_in, d_out, Choi{std::move(j)});
}

Channel Channel::dephasing(CMatrix factors) {
  if (factors.rows() != factors.cols()) {
    throw DimensionMismatch("Channel::dephasing: factor table must be square");
  }
  require_finite(factors, "Channel::dephasing");
  const int d = static_cast<int>(factors.rows());
  return Channel(d, d, DephasingTable{std::move(factors)});
}

Channel Channel::identity(FockDim d) {
  return dephasing(CMatrix::Ones(d.size(), d.size()));
}

Channel compose(const Channel& second, const Channel& first) {
  if (second.d_in() != first.d_out()) {
    throw DimensionMismatch("compose: output dimension of first stage does not match");
  }
  // Two element-wise tables compose into one.
  const auto* a = first.get_if<DephasingTable>();
  const auto* b = second.get_if<DephasingTable>();
  if (a && b) return Channel::dephasing(a->factors.cwiseProduct(b->factors));

  ChannelSequence seq;
  for (const Channel* c : {&first, &second}) {
    if (const auto* s = c->get_if<ChannelSequence>()) {
      seq.stages.insert(seq.stages.end(), s->stages.begin(), s->stages.end());
    } else {
      seq.stages.push_back(*c);
    }
  }
  return Channel(first.d_in(), second.d_out(), std::move(seq));
}

CMatrix superop_to_choi(const CMatrix& s, int d_in, int d_out) {
  const Eigen::Index di = d_in, dout = d_out;
  if (s.rows() != dout * dout || s.cols() != di * di) {
    throw DimensionMismatch("superop_to_choi: shape mismatch");
  }
  CMatrix j(dout * di, dout * di);
  // J((i, k), (j, l)) = S((i, j), (k, l)) with i, j output and k, l input indices.
  for (Eigen::Index l = 0; l < di; ++l)
    for (Eigen::Index k = 0; k < di; ++k)
      for (Eigen::Index jj = 0; jj < dout; ++jj)
        for (Eigen::Index i = 0; i < dout; ++i)
          j(i + dout * k, jj + dout * l) = s(i + dout * jj, k + di * l);
  return j;
}

CMatrix choi_to_superop(const CMatrix& j, int d_in, int d_out) {
  const Eigen::Index di = d_in, dout = d_out;
  if (j.rows() != dout * di || j.cols() != dout * di) {
    throw DimensionMismatch("choi_to_superop: shape mismatch");
  }
  CMatrix s(dout * dout, di * di);
  for (Eigen::Index l = 0; l < di; ++l)
    for (Eigen::Index k = 0; k < di; ++k)
      for (Eigen::Index jj = 0; jj < dout; ++jj)
        for (Eigen::Index i = 0; i < dout; ++i)
          s(i + dout * jj, k + di * l) = j(i + dout * k, jj + dout * l);
  return s;
}

CMatrix superoperator(const Channel& c) {
  return std::visit(
      [&](const auto& r) -> CMatrix {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, KrausSet>) {
          return kraus_superop(r.ops);
        } else if constexpr (std::is_same_v<T, SuperOp>) {
          return r.mat;
        } else if constexpr (std::is_same_v<T, Choi>) {
          return choi_to_superop(r.mat, c.d_in(), c.d_out());
        } else if constexpr (std::is_same_v<T, DephasingTable>) {
          return vec(r.factors).col(0).asDiagonal();
        } else {
          CMatrix s = superoperator(r.stages.front());
          for (std::size_t i = 1; i < r.stages.size(); ++i) s = superoperator(r.stages[i]) * s;
          return s;
        }
      },
      c.repr());
}

CMatrix choi_matrix(const Channel& c) {
  if (const auto* ch = c.get_if<Choi>()) return ch->mat;
  return superop_to_choi(superoperator(c), c.d_in(), c.d_out());
}

Channel kraus_from_superop(const Channel& c, double cutoff, double cp_tol) {
  return Channel::from_kraus(kraus_from_choi(choi_matrix(c), c.d_in(), c.d_out(), cutoff, cp_tol));
}

Channel to_kraus(const Channel& c, double cutoff, double cp_tol) {
  if (c.get_if<KrausSet>()) return c;
  if (const auto* t = c.get_if<DephasingTable>()) {
    return Channel::from_kraus(kraus_from_dephasing(t->factors, cutoff, cp_tol));
  }
  return kraus_from_superop(c, cutoff, cp_tol);
}

bool is_completely_positive(const Channel& c, double tol) {
  if (const auto* k = c.get_if<KrausSet>()) {
    (void)k;
    return true;
  }
  if (const auto* t = c.get_if<DephasingTable>()) {
    return is_hermitian(t->factors, 1e-12) && hermitian_eigenvalues(t->factors)(0) >= -tol;
  }
  if (const auto* s = c.get_if<ChannelSequence>()) {
    for (const auto& st : s->stages)
      if (!is_completely_positive(st, tol)) return false;
    return true;
  }
  const CMatrix j = choi_matrix(c);
  if (!is_hermitian(j, tol)) return false;
  return hermitian_eigenvalues(0.5 * (j + j.adjoint()))(0) >= -tol;
}

double trace_preservation_error(const Channel& c) {
  // Tr_out J = (sum_k K^dagger K)^T, read straight from the superoperator:
  // (sum K^dagger K)(l, k) = sum_i S((i, i), (k, l)).
  const CMatrix s = superoperator(c);
  const Eigen::Index dout = c.d_out(), din = c.d_in();
  CMatrix e = CMatrix::Zero(din, din);
  for (Eigen::Index l = 0; l < din; ++l)
    for (Eigen::Index k = 0; k < din; ++k)
      for (Eigen::Index i = 0; i < dout; ++i) e(l, k) += s(i + dout * i, k + din * l);
  e -= CMatrix::Identity(din, din);
  return e.cwiseAbs().maxCoeff();
}

CMatrix apply_channel(const Channel& c, const CMatrix& op) {
  if (op.rows() != c.d_in() || op.cols() != c.d_in()) {
    throw DimensionMismatch("apply_channel: operator is " + dims(op.rows(), op.cols()) +
                            ", channel input dimension is " + std::to_string(c.d_in()));
  }
  return std::visit(
      [&](const auto& r) -> CMatrix {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, KrausSet>) {
          CMatrix out = CMatrix::Zero(c.d_out(), c.d_out());
          for (const auto& k : r.ops) out.noalias() += k * op * k.adjoint();
          return out;
        } else if constexpr (std::is_same_v<T, DephasingTable>) {
          return r.factors.cwiseProduct(op);
        } else if constexpr (std::is_same_v<T, ChannelSequence>) {
          CMatrix out = op;
          for (const auto& st : r.stages) out = apply_channel(st, out);
          return out;
        } else {
          const CMatrix s = superoperator(c);
          const CVector v = s * vec(op).col(0);
          return unvec(v, c.d_out(), c.d_out());
        }
      },
      c.repr());
}

DensityMatrix apply_channel(const Channel& c, const DensityMatrix& rho) {
  CMatrix out = apply_channel(c, rho.matrix());
  // Remove rounding-level anti-Hermitian parts.
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix::unchecked(std::move(out));
}

}  // namespace rtnb
