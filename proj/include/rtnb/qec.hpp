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

// Knill (teleportation) error correction for rotation-symmetric codes.
//
// Data mode (order N) -> noise -> CROT_NM with |+>_M -> CROT_ML with |+>_L,
// then phase measurements on modes N and M and a Pauli correction on L. The
// logical channel only depends on the measured pair (N, M):
//
//   E(rho) = 1/4 sum_bins P_{i*}^dag [ sum_ij c_ij P_i rho P_j^dag ] P_{i*},
//   c_ij   = Tr[(M_x1 (x) M_x2) U_c N U_c^dag (|i><j|)],  U_c = CROT_NM,
//
// with |i> = |(-)^a>_N |(-)^b>_M for i = 2a + b and P = {I, X, Z, XZ}.
//
// Two-mode operators use the index m * d_M + n (data mode first).

#include <optional>
#include <vector>

#include "rtnb/fock.hpp"
#include "rtnb/states.hpp"

namespace rtnb {

/// exp(i pi n_a n_b / (N M)) as the diagonal of a (d_a d_b)-dimensional
/// unitary.
CVector crot_diagonal(int N, int M, FockDim d_a, FockDim d_b);
CMatrix crot(int N, int M, FockDim d_a, FockDim d_b);
inline CMatrix crot(int N, int M, FockDim d) { return crot(N, M, d, d); }

/// All-ones weight matrix (canonical phase measurement).
CMatrix canonical_b_matrix(FockDim d);

/// Throws InvalidArgument unless B is Hermitian PSD with unit diagonal and
/// |B_mn| <= 1.
void validate_b_matrix(const CMatrix& B);

/// Delta_phi * M(phi_c) with phi_c the midpoint of bin `bin` and
/// M(phi) = (1/2pi) sum_mn e^{i phi (m - n)} B_mn |m><n|.
CMatrix phase_povm_bin(int bin, int n_bins, const CMatrix& B);

struct KnillConfig {
  RSBCode code_n;  ///< data
  RSBCode code_m;  ///< first auxiliary
  RSBCode code_l;  ///< output
  int n_phase_bins = 256;
  std::optional<CMatrix> b_n;  ///< POVM weights on the data mode
  std::optional<CMatrix> b_m;  ///< POVM weights on the first auxiliary mode

  /// Same code family on all three modes (M = L = N).
  static KnillConfig uniform(const RSBCode& code, int n_bins = 256);
};

/// c_ij for every pair of phase bins.
class CijTensor {
 public:
  CijTensor(int n_bins) : n_bins_(n_bins), data_(static_cast<std::size_t>(n_bins) * n_bins * 16) {}

  int n_bins() const noexcept { return n_bins_; }
  cplx& operator()(int b1, int b2, int i, int j) { return data_[index(b1, b2, i, j)]; }
  const cplx& operator()(int b1, int b2, int i, int j) const { return data_[index(b1, b2, i, j)]; }

  /// Sum over bins of c_ii, for each i.
  std::vector<double> diagonal_totals() const;

 private:
  std::size_t index(int b1, int b2, int i, int j) const {
    return ((static_cast<std::size_t>(b1) * n_bins_ + b2) * 4 + i) * 4 + j;
  }
  int n_bins_;
  std::vector<cplx> data_;
};

/// Evaluates c_ij for a noise channel acting on the data mode. Sequences are
/// split into Kraus stages (commuted through CROT explicitly) and trailing
/// element-wise dephasing tables, which commute with CROT and are applied to
/// the two-mode operator directly.
CijTensor cij_tensor(const KnillConfig& cfg, const Channel& noise);

/// Most-likely Pauli for each bin pair: argmax_i Re c_ii, lowest index on ties.
std::vector<int> decode(const CijTensor& c);

/// 4x4 superoperator (column stacking) on the logical qubit.
struct LogicalChannel {
  CMatrix superop;

  CMatrix apply(const CMatrix& rho) const;
};

LogicalChannel decode_and_recover(const CijTensor& c);

/// Logical Paulis in the order I, X, Z, XZ.
const std::vector<CMatrix>& logical_paulis();

/// (Tr E(I) + Tr X E(X) + Tr Z E(Z) + Tr ZX E(XZ) + 4) / 12.
double average_gate_fidelity(const LogicalChannel& ch);
double average_gate_fidelity(const CMatrix& superop_4x4);

/// F of the full circuit for a noise channel on the data mode.
double knill_fidelity(const KnillConfig& cfg, const Channel& noise);

/// int_0^{2pi} |c_0(phi) - c_1(phi)| dphi with c_a(phi) = Tr[M(phi) E(|(-)^a><(-)^a|)]
/// for an element-wise dephasing table E (all-ones for no noise).
double dual_distinguishability(const RSBCode& code, const CMatrix& dephasing_factors,
                               const CMatrix& B, int nodes = 4096);

/// 1/2 + (A_N + A_M)/12 + A_N A_M / 24 for pure dephasing on the data mode.
double semi_analytic_fidelity_dephasing(const KnillConfig& cfg, const CMatrix& dephasing_factors,
                                        int nodes = 4096);

/// (2 + [1 + D_N][1 + D_M]) / 6 with D the trace distance between the
/// evolved dual codewords of each code (the auxiliary is noiseless).
double fidelity_bound(const KnillConfig& cfg, const Channel& noise);

/// 2 x 2 Kraus operators S^dag K S of the noise projected on the code space.
std::vector<CMatrix> projected_kraus(const Channel& noise, const RSBCode& code);

/// 1 - lambda_max(sum_k K'^dag K') for the projected map.
double noise_strength(const Channel& noise, const RSBCode& code);

/// Independent estimate of the diamond norm of the projected map: Nelder-Mead
/// maximisation of ||(E' (x) I)(psi psi^dag)||_1 over pure psi on C^2 (x) C^2
/// from `starts` random starting points.
double diamond_norm_variational(const std::vector<CMatrix>& kraus_2x2, int starts = 32,
                                unsigned seed = 7);

/// Average gate fidelity of the noise restricted to the Fock qubit {|0>, |1>}
/// without encoding or correction.
double break_even_fidelity(const Channel& noise);

}  // namespace rtnb
