// Copyright 2026 The gausskit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "gausskit/cp_map.hpp"
#include "gausskit/entanglement.hpp"
#include "gausskit/errors.hpp"
#include "gausskit/positive_maps.hpp"
#include "test_util.hpp"

namespace gausskit {
namespace {

using cd = std::complex<double>;
using testing::max_abs;

GaussianOperator real_op(const Matrix& g, double c = 0.0) {
  return GaussianOperator(g.cast<cd>(), CVector::Zero(g.rows()), cd(c, 0.0));
}

double min_herm(const CMatrix& h) {
  return Eigen::SelfAdjointEigenSolver<CMatrix>(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly).eigenvalues()(0);
}

GaussianMapMatrix choi_of(const Matrix& m, const Matrix& n, double r = 8.0) {
  return GaussianMapMatrix::from_real(channel_to_choi(ChannelForm(m, n), r));
}

TEST(GaussianOperator, Bounded) {
  EXPECT_TRUE(op_is_bounded(real_op(Matrix::Identity(2, 2))));
  EXPECT_FALSE(op_is_bounded(GaussianOperator(cd(0.0, 0.5) * CMatrix::Identity(2, 2), CVector::Zero(2), 0.0)));
  Matrix g = Matrix::Zero(2, 2);
  g(0, 0) = 2.0;
  g(1, 1) = -1.0;
  EXPECT_FALSE(op_is_bounded(real_op(g)));
}

TEST(GaussianOperator, SelfAdjoint) {
  EXPECT_TRUE(op_is_selfadjoint(real_op(Matrix::Identity(2, 2), 1.0)));
  CVector b = CVector::Zero(2);
  b(0) = cd(0.0, 1.0);
  EXPECT_FALSE(op_is_selfadjoint(GaussianOperator(CMatrix::Identity(2, 2), b, 0.0)));
  EXPECT_TRUE(op_is_selfadjoint(GaussianOperator(CMatrix::Identity(2, 2), CVector::Zero(2), cd(1.0, 1e-15)), 1e-12));
}

TEST(GaussianOperator, PositivityFlipsAtUnitScale) {
  for (double g : {0.9, 0.99, 1.0, 1.01, 1.1}) {
    EXPECT_EQ(op_is_positive(real_op(g * Matrix::Identity(2, 2))), g >= 1.0) << g;
  }
  EXPECT_FALSE(op_is_positive(real_op(0.5 * Matrix::Identity(2, 2))));
  Rng rng(1);
  for (int t = 0; t < 20; ++t) EXPECT_TRUE(op_is_positive(real_op(random_cm(2, 3.0, rng))));
  CVector b = CVector::Zero(2);
  b(1) = cd(0.0, 0.1);
  EXPECT_FALSE(op_is_positive(GaussianOperator(CMatrix::Identity(2, 2), b, 0.0)));
}

TEST(GaussianOperator, Trace) {
  const double pi = std::acos(-1.0);
  EXPECT_NEAR(std::abs(op_trace(real_op(Matrix::Identity(4, 4), 2.0 * std::log(pi))) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(op_trace(real_op(Matrix::Identity(2, 2))).real(), pi, 1e-14);
  Rng rng(2);
  EXPECT_EQ(op_trace(real_op(random_cm(1, 2.0, rng), 0.3)), op_trace(real_op(Matrix::Identity(2, 2), 0.3)));
}

TEST(GaussianOperator, RejectsBadInput) {
  Matrix g = Matrix::Identity(2, 2);
  g(0, 1) = 0.5;
  EXPECT_THROW(real_op(g), DataError);
  EXPECT_THROW(GaussianOperator(CMatrix::Identity(3, 3), CVector::Zero(3), 0.0), DimensionError);
  EXPECT_THROW(GaussianOperator(CMatrix::Identity(2, 2), CVector::Zero(4), 0.0), DimensionError);
  // Complex symmetric (not Hermitian) is accepted.
  CMatrix cs = CMatrix::Identity(2, 2);
  cs(0, 1) = cs(1, 0) = cd(0.0, 0.3);
  EXPECT_NO_THROW(GaussianOperator(cs, CVector::Zero(2), 0.0));
}

TEST(MapMatrix, DecoupledBlocksGiveInputBlock) {
  Rng rng(3);
  const Matrix out = random_cm(1, 2.0, rng);
  const Matrix in = random_cm(2, 2.0, rng);
  const MMatrixResult m = map_m_matrix(GaussianMapMatrix::from_real(GaussianCPMap(1, 2, direct_sum(out, in))));
  EXPECT_LT(max_abs((m.m - (lambda_matrix(2) * in * lambda_matrix(2)).cast<cd>()).cwiseAbs()), 1e-14);
  EXPECT_FALSE(m.used_pseudo_inverse);
}

TEST(MapMatrix, HermitianAndDominatedByValidInputsForCpMaps) {
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    const GaussianCPMap map(1, 1 + t % 2, random_cm(2 + t % 2, 3.0, rng));
    const CMatrix m = map_m_matrix(GaussianMapMatrix::from_real(map)).m;
    EXPECT_LT(max_abs((m - m.adjoint()).cwiseAbs()), 1e-10 * (1.0 + max_abs(m.cwiseAbs())));
    for (int k = 0; k < 5; ++k) {
      const Matrix g = random_cm(map.n_in(), 3.0, rng);
      EXPECT_GE(min_herm(g.cast<cd>() + m), -1e-8);
      EXPECT_TRUE(apply(map, GaussianState(g)).state.is_valid(1e-8));
    }
  }
}

TEST(MapMatrix, WeylCoefficientsAreTildeTransformed) {
  Rng rng(5);
  const GaussianCPMap map(1, 1, random_cm(2, 2.0, rng), testing::random_vector(4, rng));
  const WeylCoefficients w = weyl_action_coefficients(GaussianMapMatrix::from_real(map));
  EXPECT_LT(max_abs((w.gamma - tilde(map.gamma(), 1, 1).cast<cd>()).cwiseAbs()), 1e-15);
  EXPECT_EQ(w.d(3), -map.d()(3));
  EXPECT_EQ(w.d(2), map.d()(2));
  EXPECT_EQ(w.d(0), map.d()(0));
}

TEST(Certificate, CanonicalPairGivesVacuum) {
  CVector z = CVector::Zero(2);
  z(0) = 1.0;
  z(1) = cd(0.0, 1.0);
  const SymplecticCertificate c = positivity_certificate(z);
  ASSERT_TRUE(c.available);
  EXPECT_LT(max_abs(c.cm - Matrix::Identity(2, 2)), 1e-12);
}

TEST(Certificate, RandomVectorsAreSymplecticAndTight) {
  Rng rng(6);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 3;
    const CVector z = testing::random_vector(2 * n, rng).cast<cd>() + cd(0.0, 1.0) * testing::random_vector(2 * n, rng).cast<cd>();
    const SymplecticCertificate c = positivity_certificate(z);
    ASSERT_TRUE(c.available) << c.reason;
    const Matrix j = symplectic_form(n);
    EXPECT_LT(max_abs(c.s.transpose() * j * c.s - j), 1e-10);
    EXPECT_TRUE(is_valid_cm(c.cm));
    const double lhs = (z.adjoint() * c.cm.cast<cd>() * z)(0).real();
    const double rhs = std::abs((z.adjoint() * (cd(0.0, 1.0) * j.cast<cd>()) * z)(0));
    EXPECT_NEAR(lhs, rhs, 1e-9 * (1.0 + rhs));
  }
}

TEST(Certificate, DegenerateVectorUnavailable) {
  CVector z = CVector::Zero(4);
  z(0) = 1.0;
  z(2) = cd(0.0, 1.0);
  const SymplecticCertificate c = positivity_certificate(z);
  EXPECT_FALSE(c.available);
  EXPECT_FALSE(c.reason.empty());
  EXPECT_FALSE(positivity_certificate(CVector::Ones(2)).available);
}

TEST(IsPositiveMap, CompletelyPositiveMaps) {
  Rng rng(7);
  for (int t = 0; t < 10; ++t) {
    const GaussianCPMap map(1 + t % 2, 1, random_cm(2 + t % 2, 3.0, rng));
    PositivityOptions options;
    options.restarts = 16;
    const PositivityVerdict v = is_positive_map(GaussianMapMatrix::from_real(map), options);
    EXPECT_EQ(v.cls, PositivityClass::CompletelyPositive) << v.note;
    EXPECT_GE(v.mu_star, -1e-9);
    EXPECT_LE(v.dual_bound, v.mu_star + 1e-9);
  }
}

TEST(IsPositiveMap, TranspositionIsDecomposable) {
  const GaussianMapMatrix g = choi_of(lambda_matrix(1), Matrix::Zero(2, 2));
  const Matrix gamma = g.gamma.real();
  EXPECT_FALSE(is_valid_cm(gamma));
  EXPECT_TRUE(is_valid_cm(tilde(gamma, 1, 1)));
  const PositivityVerdict v = is_positive_map(g);
  EXPECT_EQ(v.cls, PositivityClass::DecomposablePositive) << v.note;
  EXPECT_FALSE(v.certificate.has_value());
}

TEST(IsPositiveMap, LossWithoutNoiseIsNotPositive) {
  for (double eta : {0.25, 0.5, 0.8}) {
    const GaussianMapMatrix g = choi_of(std::sqrt(eta) * Matrix::Identity(2, 2), Matrix::Zero(2, 2));
    const PositivityVerdict v = is_positive_map(g);
    ASSERT_EQ(v.cls, PositivityClass::NotPositive) << v.note;
    EXPECT_LT(v.mu_star, -1e-9);
    EXPECT_LE(v.dual_bound, v.mu_star + 1e-9);
    ASSERT_TRUE(v.certificate.has_value());
    const SymplecticCertificate& c = *v.certificate;
    EXPECT_TRUE(is_valid_cm(c.cm));
    const GaussianCPMap map(1, 1, g.gamma.real());
    const Matrix out = apply(map, GaussianState(c.cm)).state.cm();
    EXPECT_LT(testing::oracle_min_eig_plus_ij(out), -1e-6);
    EXPECT_NEAR(v.certificate_output_margin, testing::oracle_min_eig_plus_ij(out), 1e-9);
  }
}

TEST(IsPositiveMap, EveryViolationShipsACertificate) {
  Rng rng(9);
  int violations = 0;
  for (int t = 0; t < 15; ++t) {
    const std::size_t n = 1 + t % 2;
    const Matrix m = 0.6 * testing::random_matrix(2 * n, 2 * n, rng);
    const GaussianCPMap map = channel_to_choi(ChannelForm(m, Matrix::Zero(2 * n, 2 * n)), 6.0);
    const PositivityVerdict v = is_positive_map(GaussianMapMatrix::from_real(map));
    if (v.cls != PositivityClass::NotPositive) continue;
    ++violations;
    ASSERT_TRUE(v.certificate.has_value());
    ASSERT_TRUE(v.certificate->available) << v.note;
    EXPECT_TRUE(is_valid_cm(v.certificate->cm));
    EXPECT_LT(testing::oracle_min_eig_plus_ij(apply(map, GaussianState(v.certificate->cm)).state.cm()), -1e-6);
  }
  EXPECT_GT(violations, 5);
}

TEST(IsPositiveMap, NegativeOutputBlockIsNotPositive) {
  Matrix gamma = Matrix::Identity(4, 4);
  gamma.topLeftCorner(2, 2) *= 0.5;
  const PositivityVerdict v = is_positive_map(GaussianMapMatrix::from_real(GaussianCPMap(1, 1, gamma)));
  EXPECT_EQ(v.cls, PositivityClass::NotPositive);
  EXPECT_LT(v.output_block_margin, 0.0);
  ASSERT_TRUE(v.certificate.has_value());
  EXPECT_TRUE(is_valid_cm(v.certificate->cm));
  EXPECT_LT(v.certificate_output_margin, -1e-6);
}

TEST(IsPositiveMap, AmplificationWithoutNoiseIsNotFalsified) {
  // gamma -> g gamma is positive on CMs but neither it nor its transpose
  // composition is completely positive.
  const GaussianMapMatrix g = choi_of(std::sqrt(2.0) * Matrix::Identity(2, 2), Matrix::Zero(2, 2));
  const PositivityVerdict v = is_positive_map(g);
  EXPECT_EQ(v.cls, PositivityClass::PositiveUndetermined) << v.note;
  EXPECT_GE(v.mu_star, -1e-9);
  EXPECT_LE(v.dual_bound, v.mu_star + 1e-9);
}

TEST(IsPositiveMap, PptChoiIsDecomposable) {
  Rng rng(8);
  int ppt = 0;
  int npt = 0;
  for (int t = 0; t < 20; ++t) {
    const Matrix g = random_cm(2, 1.5 + 0.1 * t, rng);
    // The map whose tilde-transformed Choi matrix is the valid CM g.
    const GaussianCPMap map(1, 1, partial_transpose(g, BipartiteSplit({0}, {1})));
    PositivityOptions options;
    options.restarts = 8;
    const PositivityVerdict v = is_positive_map(GaussianMapMatrix::from_real(map), options);
    if (ppt_min_symplectic(g, BipartiteSplit({0}, {1})) >= 1.0 + 1e-9) {
      EXPECT_EQ(v.cls, PositivityClass::CompletelyPositive);
      ++ppt;
    } else {
      EXPECT_EQ(v.cls, PositivityClass::DecomposablePositive);
      ++npt;
    }
  }
  EXPECT_GT(npt, 0);
}

TEST(IsPositiveMap, DeterministicForFixedSeed) {
  const GaussianMapMatrix g = choi_of(0.7 * Matrix::Identity(2, 2), 0.2 * Matrix::Identity(2, 2));
  const PositivityVerdict a = is_positive_map(g);
  const PositivityVerdict b = is_positive_map(g);
  EXPECT_EQ(a.mu_star, b.mu_star);
  EXPECT_EQ(a.cls, b.cls);
  EXPECT_EQ(a.restarts, 64u);
}

TEST(IsPositiveMap, ComplexInputRejected) {
  GaussianMapMatrix g = choi_of(Matrix::Identity(2, 2), Matrix::Zero(2, 2));
  g.gamma(0, 0) += cd(0.0, 0.1);
  EXPECT_THROW(is_positive_map(g), DataError);
}

}  // namespace
}  // namespace gausskit
