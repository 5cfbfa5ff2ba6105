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

#include "rtnb/qec.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <gsl/gsl_multimin.h>
#include <unsupported/Eigen/KroneckerProduct>

#include "rtnb/nonmarkov.hpp"

namespace rtnb {
namespace {

constexpr double kPi = std::numbers::pi;

// Kraus expansion of a channel; sequences become products of their stages.
std::vector<CMatrix> expand_kraus(const Channel& c) {
  if (const auto* seq = c.get_if<ChannelSequence>()) {
    std::vector<CMatrix> cur{CMatrix::Identity(c.d_in(), c.d_in())};
    for (const auto& st : seq->stages) {
      const auto ks = expand_kraus(st);
      std::vector<CMatrix> next;
      next.reserve(ks.size() * cur.size());
      for (const auto& k : ks)
        for (const auto& p : cur) next.push_back(k * p);
      cur = std::move(next);
    }
    return cur;
  }
  return to_kraus(c).get_if<KrausSet>()->ops;
}

// Kraus stages followed by a trailing element-wise table.
struct SplitNoise {
  std::vector<CMatrix> kraus;
  CMatrix factors;
};

SplitNoise split_noise(const Channel& noise) {
  std::vector<Channel> stages;
  if (const auto* seq = noise.get_if<ChannelSequence>()) {
    stages = seq->stages;
  } else {
    stages.push_back(noise);
  }
  SplitNoise out;
  out.factors = CMatrix::Ones(noise.d_out(), noise.d_out());
  std::size_t tail = stages.size();
  while (tail > 0 && stages[tail - 1].get_if<DephasingTable>()) --tail;
  for (std::size_t s = tail; s < stages.size(); ++s) {
    out.factors = out.factors.cwiseProduct(stages[s].get_if<DephasingTable>()->factors);
  }
  out.kraus = {CMatrix::Identity(noise.d_in(), noise.d_in())};
  for (std::size_t s = 0; s < tail; ++s) {
    const auto ks = expand_kraus(stages[s]);
    std::vector<CMatrix> next;
    for (const auto& k : ks)
      for (const auto& p : out.kraus) {
        CMatrix kp = k * p;
        if (kp.cwiseAbs().maxCoeff() > 0.0) next.push_back(std::move(kp));
      }
    out.kraus = std::move(next);
  }
  return out;
}

const CMatrix& b_or_default(const std::optional<CMatrix>& b, FockDim d, CMatrix& storage) {
  if (b) {
    if (b->rows() != d.size()) {
      throw DimensionMismatch("POVM weight matrix does not match the mode dimension");
    }
    validate_b_matrix(*b);
    return *b;
  }
  storage = canonical_b_matrix(d);
  return storage;
}

CMatrix pauli(int i) {
  CMatrix X(2, 2), Z(2, 2);
  X << 0, 1, 1, 0;
  Z << 1, 0, 0, -1;
  switch (i) {
    case 0: return CMatrix::Identity(2, 2);
    case 1: return X;
    case 2: return Z;
    default: return X * Z;
  }
}

}  // namespace

CVector crot_diagonal(int N, int M, FockDim d_a, FockDim d_b) {
  if (N < 1 || M < 1) throw InvalidArgument("crot: orders must be >= 1");
  CVector diag(d_a.size() * d_b.size());
  for (Eigen::Index m = 0; m < d_a.size(); ++m)
    for (Eigen::Index n = 0; n < d_b.size(); ++n)
      diag(m * d_b.size() + n) = std::polar(1.0, kPi * static_cast<double>(m * n) / (N * M));
  return diag;
}

CMatrix crot(int N, int M, FockDim d_a, FockDim d_b) {
  return crot_diagonal(N, M, d_a, d_b).asDiagonal();
}

CMatrix canonical_b_matrix(FockDim d) { return CMatrix::Ones(d.size(), d.size()); }

void validate_b_matrix(const CMatrix& B) {
  if (B.rows() != B.cols()) throw DimensionMismatch("B matrix must be square");
  if (!is_hermitian(B, 1e-12)) throw InvalidArgument("B matrix must be Hermitian");
  for (Eigen::Index n = 0; n < B.rows(); ++n) {
    if (std::abs(B(n, n) - cplx(1.0)) > 1e-12) {
      throw InvalidArgument("B matrix must have unit diagonal");
    }
  }
  if (B.cwiseAbs().maxCoeff() > 1.0 + 1e-12) {
    throw InvalidArgument("B matrix entries must satisfy |B_mn| <= 1");
  }
  if (hermitian_eigenvalues(B)(0) < -1e-10) {
    throw InvalidArgument("B matrix must be positive semidefinite");
  }
}

CMatrix phase_povm_bin(int bin, int n_bins, const CMatrix& B) {
  if (n_bins < 1 || bin < 0 || bin >= n_bins) {
    throw InvalidArgument("phase_povm_bin: bin " + std::to_string(bin) + " outside 0.." +
                          std::to_string(n_bins - 1));
  }
  validate_b_matrix(B);
  const double dphi = 2.0 * kPi / n_bins;
  const double phi = (bin + 0.5) * dphi;
  CMatrix m(B.rows(), B.cols());
  for (Eigen::Index i = 0; i < B.rows(); ++i)
    for (Eigen::Index j = 0; j < B.cols(); ++j)
      m(i, j) = std::polar(1.0, phi * static_cast<double>(i - j)) * B(i, j);
  return (dphi / (2.0 * kPi)) * m;
}

KnillConfig KnillConfig::uniform(const RSBCode& code, int n_bins) {
  return KnillConfig{code, code, code, n_bins, std::nullopt, std::nullopt};
}

std::vector<double> CijTensor::diagonal_totals() const {
  std::vector<double> tot(4, 0.0);
  for (int b1 = 0; b1 < n_bins_; ++b1)
    for (int b2 = 0; b2 < n_bins_; ++b2)
      for (int i = 0; i < 4; ++i) tot[i] += (*this)(b1, b2, i, i).real();
  return tot;
}

CijTensor cij_tensor(const KnillConfig& cfg, const Channel& noise) {
  const RSBCode& cn = cfg.code_n;
  const RSBCode& cm = cfg.code_m;
  const int nb = cfg.n_phase_bins;
  if (nb < 64) throw InvalidArgument("cij_tensor: n_phase_bins must be >= 64");
  const Eigen::Index d1 = cn.dim().size(), d2 = cm.dim().size();
  if (noise.d_in() != d1 || noise.d_out() != d1) {
    throw DimensionMismatch("cij_tensor: noise channel does not act on the data mode dimension");
  }
  CMatrix b1_store, b2_store;
  const CMatrix& B1 = b_or_default(cfg.b_n, cn.dim(), b1_store);
  const CMatrix& B2 = b_or_default(cfg.b_m, cm.dim(), b2_store);

  const SplitNoise split = split_noise(noise);
  // H(m, m') = B1(m, m') F(m', m): the data-mode POVM weights with the
  // trailing dephasing folded in.
  const CMatrix H = B1.cwiseProduct(split.factors.transpose());

  // Dual product states |i> = |(-)^a>_N |(-)^b>_M as d1 x d2 matrices.
  const CVector duals_n[2] = {cn.plus(), cn.minus()};
  const CVector duals_m[2] = {cm.plus(), cm.minus()};
  CMatrix phase(d1, d2);  // CROT_NM diagonal as a d1 x d2 table
  for (Eigen::Index m = 0; m < d1; ++m)
    for (Eigen::Index n = 0; n < d2; ++n)
      phase(m, n) = std::polar(1.0, kPi * static_cast<double>(m * n) / (cn.order() * cm.order()));

  // w[k][i] = U_c (K_k (x) I) U_c^dag |i>
  std::vector<std::array<CMatrix, 4>> w(split.kraus.size());
  for (std::size_t k = 0; k < split.kraus.size(); ++k) {
    for (int i = 0; i < 4; ++i) {
      const CMatrix v = duals_n[i / 2] * duals_m[i % 2].transpose();
      const CMatrix rotated = phase.conjugate().cwiseProduct(v);
      w[k][i] = phase.cwiseProduct(split.kraus[k] * rotated);
    }
  }

  // S_ij(delta1, delta2) = sum H(m, m') B2(n, n') w_i(m', n') conj(w_j(m, n))
  // over m - m' = delta1, n - n' = delta2.
  const Eigen::Index s1 = 2 * d1 - 1, s2 = 2 * d2 - 1;
  const double dphi = 2.0 * kPi / nb;
  CMatrix E1(nb, s1), E2(nb, s2);
  for (int b = 0; b < nb; ++b) {
    const double phi = (b + 0.5) * dphi;
    for (Eigen::Index t = 0; t < s1; ++t) E1(b, t) = std::polar(1.0, phi * static_cast<double>(t - (d1 - 1)));
    for (Eigen::Index t = 0; t < s2; ++t) E2(b, t) = std::polar(1.0, phi * static_cast<double>(t - (d2 - 1)));
  }

  CijTensor c(nb);
  const double norm = 1.0 / (static_cast<double>(nb) * nb);
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      CMatrix S = CMatrix::Zero(s1, s2);
      for (const auto& wk : w) {
        const CMatrix& Wi = wk[i];
        const CMatrix Wj = wk[j].conjugate();
        for (Eigen::Index m = 0; m < d1; ++m) {
          for (Eigen::Index mp = 0; mp < d1; ++mp) {
            const cplx h = H(m, mp);
            if (h == cplx(0.0)) continue;
            const Eigen::Index r = m - mp + d1 - 1;
            for (Eigen::Index n = 0; n < d2; ++n) {
              const cplx wj = h * Wj(m, n);
              if (wj == cplx(0.0)) continue;
              for (Eigen::Index np = 0; np < d2; ++np) {
                S(r, n - np + d2 - 1) += wj * B2(n, np) * Wi(mp, np);
              }
            }
          }
        }
      }
      const CMatrix vals = norm * (E1 * S * E2.transpose());
      for (int b1 = 0; b1 < nb; ++b1)
        for (int b2 = 0; b2 < nb; ++b2) {
          c(b1, b2, i, j) = vals(b1, b2);
          if (j != i) c(b1, b2, j, i) = std::conj(vals(b1, b2));
        }
    }
  }
  return c;
}

std::vector<int> decode(const CijTensor& c) {
  const int nb = c.n_bins();
  std::vector<int> best(static_cast<std::size_t>(nb) * nb);
  for (int b1 = 0; b1 < nb; ++b1)
    for (int b2 = 0; b2 < nb; ++b2) {
      int arg = 0;
      double top = c(b1, b2, 0, 0).real();
      for (int i = 1; i < 4; ++i) {
        const double v = c(b1, b2, i, i).real();
        if (v > top) {
          top = v;
          arg = i;
        }
      }
      best[static_cast<std::size_t>(b1) * nb + b2] = arg;
    }
  return best;
}

const std::vector<CMatrix>& logical_paulis() {
  static const std::vector<CMatrix> p{pauli(0), pauli(1), pauli(2), pauli(3)};
  return p;
}

CMatrix LogicalChannel::apply(const CMatrix& rho) const {
  if (rho.rows() != 2 || rho.cols() != 2) throw DimensionMismatch("logical channel acts on 2x2");
  const CVector v = superop * Eigen::Map<const CVector>(rho.data(), 4);
  return Eigen::Map<const CMatrix>(v.data(), 2, 2);
}

LogicalChannel decode_and_recover(const CijTensor& c) {
  const int nb = c.n_bins();
  const auto best = decode(c);
  // Accumulate c_ij per selected correction.
  cplx acc[4][4][4] = {};
  for (int b1 = 0; b1 < nb; ++b1)
    for (int b2 = 0; b2 < nb; ++b2) {
      const int s = best[static_cast<std::size_t>(b1) * nb + b2];
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) acc[s][i][j] += c(b1, b2, i, j);
    }
  const auto& P = logical_paulis();
  CMatrix sup = CMatrix::Zero(4, 4);
  for (int s = 0; s < 4; ++s)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        if (acc[s][i][j] == cplx(0.0)) continue;
        const CMatrix A = P[s].adjoint() * P[i];
        const CMatrix B = P[j].adjoint() * P[s];
        sup += 0.25 * acc[s][i][j] * Eigen::kroneckerProduct(B.transpose(), A).eval();
      }
  return LogicalChannel{sup};
}

double average_gate_fidelity(const CMatrix& superop_4x4) {
  if (superop_4x4.rows() != 4 || superop_4x4.cols() != 4) {
    throw DimensionMismatch("average_gate_fidelity: expected a 4x4 superoperator");
  }
  const LogicalChannel ch{superop_4x4};
  const auto& P = logical_paulis();
  const CMatrix ZX = P[2] * P[1];
  const double t = ch.apply(P[0]).trace().real() + (P[1] * ch.apply(P[1])).trace().real() +
                   (P[2] * ch.apply(P[2])).trace().real() + (ZX * ch.apply(P[3])).trace().real();
  return (t + 4.0) / 12.0;
}

double average_gate_fidelity(const LogicalChannel& ch) { return average_gate_fidelity(ch.superop); }

double knill_fidelity(const KnillConfig& cfg, const Channel& noise) {
  return average_gate_fidelity(decode_and_recover(cij_tensor(cfg, noise)));
}

double dual_distinguishability(const RSBCode& code, const CMatrix& dephasing_factors,
                               const CMatrix& B, int nodes) {
  if (nodes < 512) throw InvalidArgument("dual_distinguishability: use at least 512 nodes");
  const Eigen::Index d = code.dim().size();
  if (dephasing_factors.rows() != d || B.rows() != d) {
    throw DimensionMismatch("dual_distinguishability: dimension mismatch");
  }
  const CVector p = code.plus(), q = code.minus();
  const CMatrix diff = dephasing_factors.cwiseProduct(p * p.adjoint() - q * q.adjoint());
  // c_0 - c_1 = (1/2pi) sum_delta e^{i phi delta} s(delta),
  // s(delta) = sum_{m - n = delta} B_mn diff_nm.
  std::vector<cplx> s(2 * d - 1, 0.0);
  for (Eigen::Index m = 0; m < d; ++m)
    for (Eigen::Index n = 0; n < d; ++n) s[m - n + d - 1] += B(m, n) * diff(n, m);
  const double h = 2.0 * kPi / nodes;
  double total = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const double phi = (k + 0.5) * h;
    cplx v = 0.0;
    for (Eigen::Index t = 0; t < 2 * d - 1; ++t) {
      v += std::polar(1.0, phi * static_cast<double>(t - (d - 1))) * s[t];
    }
    total += std::abs(v.real());
  }
  return total * h / (2.0 * kPi);
}

double semi_analytic_fidelity_dephasing(const KnillConfig& cfg, const CMatrix& dephasing_factors,
                                        int nodes) {
  CMatrix b1_store, b2_store;
  const CMatrix& B1 = b_or_default(cfg.b_n, cfg.code_n.dim(), b1_store);
  const CMatrix& B2 = b_or_default(cfg.b_m, cfg.code_m.dim(), b2_store);
  const double an = dual_distinguishability(cfg.code_n, dephasing_factors, B1, nodes);
  const Eigen::Index dm = cfg.code_m.dim().size();
  const double am = dual_distinguishability(cfg.code_m, CMatrix::Ones(dm, dm), B2, nodes);
  return 0.5 + (an + am) / 12.0 + an * am / 24.0;
}

double fidelity_bound(const KnillConfig& cfg, const Channel& noise) {
  const CVector pn = cfg.code_n.plus(), mn = cfg.code_n.minus();
  const CMatrix rp = apply_channel(noise, CMatrix(pn * pn.adjoint()));
  const CMatrix rm = apply_channel(noise, CMatrix(mn * mn.adjoint()));
  const double dn = trace_distance(rp, rm);
  const CVector pm = cfg.code_m.plus(), mm = cfg.code_m.minus();
  const double dm = trace_distance(CMatrix(pm * pm.adjoint()), CMatrix(mm * mm.adjoint()));
  return (2.0 + (1.0 + dn) * (1.0 + dm)) / 6.0;
}

std::vector<CMatrix> projected_kraus(const Channel& noise, const RSBCode& code) {
  if (noise.d_in() != code.dim().value() || noise.d_out() != code.dim().value()) {
    throw DimensionMismatch("projected_kraus: channel and code dimensions differ");
  }
  CMatrix S(code.dim().size(), 2);
  S.col(0) = code.zero();
  S.col(1) = code.one();
  std::vector<CMatrix> out;
  for (const auto& k : expand_kraus(noise)) out.push_back(S.adjoint() * k * S);
  return out;
}

double noise_strength(const Channel& noise, const RSBCode& code) {
  CMatrix sum = CMatrix::Zero(2, 2);
  for (const auto& k : projected_kraus(noise, code)) sum += k.adjoint() * k;
  // Rounding in the codeword normalisation is snapped so that the identity
  // channel gives exactly 0.
  const double ns = 1.0 - hermitian_eigenvalues(sum).maxCoeff();
  return std::abs(ns) < 1e-14 ? 0.0 : ns;
}

namespace {

struct VariationalProblem {
  std::vector<CMatrix> lifted;  // K' (x) I on C^2 (x) C^2
};

double variational_objective(const gsl_vector* x, void* params) {
  const auto* prob = static_cast<const VariationalProblem*>(params);
  CVector psi(4);
  for (int k = 0; k < 4; ++k) psi(k) = cplx(gsl_vector_get(x, 2 * k), gsl_vector_get(x, 2 * k + 1));
  const double nrm = psi.norm();
  if (nrm < 1e-300) return 0.0;
  psi /= nrm;
  const CMatrix rho = psi * psi.adjoint();
  CMatrix out = CMatrix::Zero(4, 4);
  for (const auto& k : prob->lifted) out += k * rho * k.adjoint();
  return -trace_norm(out);
}

}  // namespace

double diamond_norm_variational(const std::vector<CMatrix>& kraus_2x2, int starts, unsigned seed) {
  VariationalProblem prob;
  for (const auto& k : kraus_2x2) {
    if (k.rows() != 2 || k.cols() != 2) throw DimensionMismatch("expected 2x2 Kraus operators");
    prob.lifted.push_back(Eigen::kroneckerProduct(k, CMatrix::Identity(2, 2)).eval());
  }
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  gsl_multimin_function f{&variational_objective, 8, &prob};
  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 8);
  gsl_vector* x = gsl_vector_alloc(8);
  gsl_vector* step = gsl_vector_alloc(8);
  gsl_vector_set_all(step, 0.3);
  double best = 0.0;
  for (int st = 0; st < starts; ++st) {
    for (int k = 0; k < 8; ++k) gsl_vector_set(x, k, gauss(rng));
    gsl_multimin_fminimizer_set(s, &f, x, step);
    for (int it = 0; it < 20000; ++it) {
      if (gsl_multimin_fminimizer_iterate(s) != 0) break;
      if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-10) == GSL_SUCCESS) break;
    }
    best = std::max(best, -s->fval);
  }
  gsl_vector_free(step);
  gsl_vector_free(x);
  gsl_multimin_fminimizer_free(s);
  return best;
}

double break_even_fidelity(const Channel& noise) {
  const Eigen::Index d = noise.d_in();
  if (d < 2 || noise.d_out() != d) throw DimensionMismatch("break_even_fidelity: need a d -> d channel");
  CMatrix S = CMatrix::Zero(d, 2);
  S(0, 0) = 1.0;
  S(1, 1) = 1.0;
  const auto& P = logical_paulis();
  auto E = [&](const CMatrix& sigma) {
    return CMatrix(S.adjoint() * apply_channel(noise, CMatrix(S * sigma * S.adjoint())) * S);
  };
  const CMatrix ZX = P[2] * P[1];
  const double t = E(P[0]).trace().real() + (P[1] * E(P[1])).trace().real() +
                   (P[2] * E(P[2])).trace().real() + (ZX * E(P[3])).trace().real();
  return (t + 4.0) / 12.0;
}

}  // namespace rtnb
