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

#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rtnb/fock.hpp"
#include "rtnb/noise.hpp"
#include "rtnb/states.hpp"

using namespace rtnb;

namespace {

double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Every channel constructor in the library, on a d = 6 space.
std::vector<Channel> channel_zoo() {
  const FockDim d(6);
  std::vector<Channel> out;
  out.push_back(Channel::identity(d));
  out.push_back(rtn_channel({0.1, 1.3}, d));
  out.push_back(rtn_channel({5.0, 0.4}, d));
  out.push_back(gaussian_dephasing_channel({0.3}, d));
  out.push_back(oneoverf_channel({3, 1e-4, 1e4, 0.8, false}, d));
  out.push_back(loss_kraus({0.2, loss_k_max(0.2, d)}, d));
  out.push_back(compose(rtn_channel({0.5, 0.7}, d), loss_kraus({0.1, loss_k_max(0.1, d)}, d)));
  return out;
}

}  // namespace

TEST_CASE("FockDim rejects d < 2") {
  CHECK_THROWS_AS(FockDim(1), InvalidArgument);
  CHECK_THROWS_AS(FockDim(0), InvalidArgument);
  CHECK(FockDim(2).value() == 2);
}

TEST_CASE("mode operators") {
  SUBCASE("d = 2 has a single matrix element") {
    const auto ops = mode_operators(FockDim(2));
    CHECK(ops.annihilation(0, 1) == cplx(1.0));
    CHECK(std::abs(ops.annihilation(0, 0)) == 0.0);
    CHECK(std::abs(ops.annihilation(1, 0)) == 0.0);
    CHECK(std::abs(ops.annihilation(1, 1)) == 0.0);
  }
  SUBCASE("number operator is diag(0..d-1)") {
    const auto ops = mode_operators(FockDim(5));
    CMatrix expect = CMatrix::Zero(5, 5);
    for (int n = 0; n < 5; ++n) expect(n, n) = n;
    CHECK(max_abs(ops.number - expect) == 0.0);
    CHECK(max_abs(ops.creation - ops.annihilation.adjoint()) == 0.0);
  }
  SUBCASE("[a, a^dag] = I except the truncation corner") {
    const auto ops = mode_operators(FockDim(4));
    CMatrix comm = ops.annihilation * ops.creation - ops.creation * ops.annihilation;
    CHECK(std::abs(comm(3, 3) - cplx(-3.0)) < 1e-14);
    comm(3, 3) = 1.0;
    CHECK(max_abs(comm - CMatrix::Identity(4, 4)) < 1e-14);
  }
}

TEST_CASE("rotation operator") {
  CHECK(max_abs(rotation_operator(0.0, FockDim(6)) - CMatrix::Identity(6, 6)) == 0.0);
  const CMatrix R = rotation_operator(0.7, FockDim(6));
  CHECK(max_abs(R.adjoint() * R - CMatrix::Identity(6, 6)) < 1e-14);
  CHECK(std::abs(R(3, 3) - std::polar(1.0, 2.1)) < 1e-14);
}

TEST_CASE("trace norm") {
  CHECK(trace_norm(CMatrix::Identity(3, 3)) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(trace_norm(CMatrix::Zero(4, 4)) == 0.0);
  CMatrix z = CMatrix::Zero(3, 3);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  CHECK(trace_norm(z) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(trace_norm(CMatrix::Zero(2, 3)), DimensionMismatch);

  SUBCASE("non-Hermitian input uses singular values") {
    CMatrix m(2, 2);
    m << 0, 2, 0, 0;
    CHECK(trace_norm(m) == doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("triangle inequality and unitary invariance") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 20; ++k) {
      const CMatrix A = oracle::random_hermitian(8, rng), B = oracle::random_hermitian(8, rng);
      const CMatrix U = oracle::random_unitary(8, rng);
      CHECK(trace_norm(A + B) <= trace_norm(A) + trace_norm(B) + 1e-10);
      CHECK(std::abs(trace_norm(CMatrix(U * A * U.adjoint())) - trace_norm(A)) < 1e-10);
    }
  }
}

TEST_CASE("density matrix validation") {
  CHECK_THROWS_AS(DensityMatrix(CMatrix::Identity(2, 2)), InvalidArgument);  // trace 2
  CMatrix nh = CMatrix::Zero(2, 2);
  nh(0, 0) = 1.0;
  nh(0, 1) = 0.5;
  CHECK_THROWS_AS(DensityMatrix{nh}, InvalidArgument);
  CMatrix neg = CMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix{neg}, InvalidArgument);
  CHECK_THROWS_AS(DensityMatrix::pure(CVector::Ones(3)), InvalidArgument);
  const DensityMatrix v = DensityMatrix::pure(fock_state(0, FockDim(3)));
  CHECK(v.purity() == doctest::Approx(1.0));
}

TEST_CASE("truncation check") {
  CVector psi = CVector::Zero(10);
  psi(0) = 1.0;
  CHECK_NOTHROW(check_truncation(psi));
  psi(8) = 1e-2;
  psi.normalize();
  CHECK_THROWS_AS(check_truncation(psi), TruncationError);
}

TEST_CASE("Choi and superoperator conventions") {
  const FockDim d(3);
  const auto ops = mode_operators(d);
  const CMatrix K = ops.annihilation + 0.3 * ops.number;
  const Channel c = Channel::from_kraus({K});
  std::mt19937_64 rng(3);
  const DensityMatrix rho = oracle::random_density(3, rng);
  const CMatrix direct = K * rho.matrix() * K.adjoint();
  const CMatrix S = superoperator(c);
  const CMatrix vec = Eigen::Map<const CVector>(rho.matrix().data(), 9);
  const CVector out = S * vec;
  CHECK(max_abs(Eigen::Map<const CMatrix>(out.data(), 3, 3) - direct) < 1e-13);
  // J = sum |i><j| (x) E(|i><j|) with the output index fastest.
  const CMatrix J = choi_matrix(c);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CMatrix e = CMatrix::Zero(3, 3);
      e(i, j) = 1.0;
      const CMatrix img = K * e * K.adjoint();
      CHECK(max_abs(J.block(3 * i, 3 * j, 3, 3) - img) < 1e-13);
    }
  CHECK(max_abs(choi_to_superop(superop_to_choi(S, 3, 3), 3, 3) - S) < 1e-14);
}

TEST_CASE("kraus_from_superop") {
  SUBCASE("identity gives one operator proportional to I") {
    const FockDim d(4);
    const Channel k = kraus_from_superop(Channel::from_superop(superoperator(Channel::identity(d)), 4, 4));
    const auto& ops = k.get_if<KrausSet>()->ops;
    REQUIRE(ops.size() == 1);
    const cplx phase = ops[0](0, 0);
    CHECK(std::abs(std::abs(phase) - 1.0) < 1e-12);
    CHECK(max_abs(ops[0] / phase - CMatrix::Identity(4, 4)) < 1e-10);
  }
  SUBCASE("RTN dephasing Kraus set reproduces the element-wise action") {
    const FockDim d(6);
    const Channel deph = rtn_channel({0.3, 1.7}, d);
    const Channel k = kraus_from_superop(Channel::from_superop(superoperator(deph), 6, 6));
    std::mt19937_64 rng(5);
    const DensityMatrix rho = oracle::random_density(6, rng);
    CMatrix expect = rho.matrix();
    for (int m = 0; m < 6; ++m)
      for (int n = 0; n < 6; ++n) expect(m, n) *= rtn_dephasing_factor(m - n, 0.3, 1.7);
    CHECK(max_abs(apply_channel(k, rho.matrix()) - expect) < 1e-8);
  }
  SUBCASE("non-CP input is rejected") {
    // Transpose map: Choi is the swap, with eigenvalue -1.
    CMatrix S = CMatrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) S(j + 2 * i, i + 2 * j) = 1.0;
    CHECK_THROWS_AS(kraus_from_superop(Channel::from_superop(S, 2, 2)), NotCompletelyPositive);
    CHECK_FALSE(is_completely_positive(Channel::from_superop(S, 2, 2)));
  }
}

TEST_CASE("apply_channel") {
  const FockDim d(20);
  const DensityMatrix coh = DensityMatrix::pure(coherent_state(1.5, d));
  CHECK(max_abs(apply_channel(Channel::identity(d), coh).matrix() - coh.matrix()) < 1e-15);
  CHECK(max_abs(apply_channel(rtn_channel({0.5, 0.0}, d), coh).matrix() - coh.matrix()) == 0.0);
  const DensityMatrix lost = apply_channel(loss_kraus({40.0, 19}, d), coh);
  CHECK(std::abs(lost.matrix()(0, 0) - cplx(1.0)) < 1e-6);
  CHECK_THROWS_AS(apply_channel(Channel::identity(FockDim(3)), coh), DimensionMismatch);
}

TEST_CASE("representations agree on every library channel") {
  std::mt19937_64 rng(17);
  for (const Channel& c : channel_zoo()) {
    const Channel k = to_kraus(c);
    const CMatrix S = superoperator(c);
    const Channel viaChoi = Channel::from_choi(choi_matrix(c), c.d_in(), c.d_out());
    CHECK(is_completely_positive(c));
    CHECK(trace_preservation_error(c) < 1e-8);
    for (int t = 0; t < 20; ++t) {
      const DensityMatrix rho = oracle::random_density(c.d_in(), rng);
      const CMatrix a = apply_channel(c, rho.matrix());
      const CVector s = S * Eigen::Map<const CVector>(rho.matrix().data(), rho.matrix().size());
      CHECK(max_abs(apply_channel(k, rho.matrix()) - a) < 1e-8);
      CHECK(max_abs(Eigen::Map<const CMatrix>(s.data(), c.d_out(), c.d_out()) - a) < 1e-8);
      CHECK(max_abs(apply_channel(viaChoi, rho.matrix()) - a) < 1e-8);
      CHECK(hermitian_eigenvalues(apply_channel(c, rho).matrix()).minCoeff() > -1e-8);
    }
  }
}

TEST_CASE("compose merges dephasing tables") {
  const FockDim d(5);
  const Channel a = rtn_channel({0.2, 0.6}, d), b = gaussian_dephasing_channel({0.4}, d);
  const Channel ab = compose(a, b);
  REQUIRE(ab.get_if<DephasingTable>() != nullptr);
  CHECK(max_abs(superoperator(ab) - superoperator(a) * superoperator(b)) < 1e-14);
  const Channel l = loss_kraus({0.3, loss_k_max(0.3, d)}, d);
  CHECK(max_abs(superoperator(compose(a, l)) - superoperator(a) * superoperator(l)) < 1e-13);
}
