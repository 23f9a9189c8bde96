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
#include <limits>

#include "gausskit/errors.hpp"
#include "gausskit/state.hpp"
#include "gausskit/symplectic.hpp"
#include "test_util.hpp"

namespace gausskit {
namespace {

using testing::max_abs;

TEST(SymplecticForm, SingleMode) {
  Matrix expected(2, 2);
  expected << 0, -1, 1, 0;
  EXPECT_EQ(symplectic_form(1), expected);
}

TEST(SymplecticForm, TwoModesIsBlockDiagonal) {
  const Matrix j = symplectic_form(2);
  EXPECT_EQ(j.block(0, 0, 2, 2), symplectic_form(1));
  EXPECT_EQ(j.block(2, 2, 2, 2), symplectic_form(1));
  EXPECT_EQ(max_abs(j.block(0, 2, 2, 2)), 0.0);
  EXPECT_EQ(max_abs(j.block(2, 0, 2, 2)), 0.0);
}

TEST(SymplecticForm, SquaresToMinusIdentity) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const Matrix j = symplectic_form(n);
    EXPECT_EQ(j * j, -Matrix::Identity(2 * n, 2 * n));
    EXPECT_EQ(j.transpose(), -j);
  }
}

TEST(SymplecticForm, ZeroModesRejected) { EXPECT_THROW(symplectic_form(0), DimensionError); }

TEST(LambdaMatrix, Involution) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const Matrix l = lambda_matrix(n);
    EXPECT_EQ(l * l, Matrix::Identity(2 * n, 2 * n));
    EXPECT_EQ(l * symplectic_form(n) * l, -symplectic_form(n));
  }
}

TEST(IsValidCm, Examples) {
  EXPECT_TRUE(is_valid_cm(Matrix::Identity(2, 2)));
  const Matrix half = 0.5 * Matrix::Identity(2, 2);
  EXPECT_FALSE(is_valid_cm(half));
  EXPECT_NEAR(check_cm(half).min_eigenvalue, -0.5, 1e-14);
  EXPECT_NEAR(testing::oracle_min_eig_plus_ij(half), -0.5, 1e-14);
  for (double r : {0.0, 1.0, 3.0}) EXPECT_TRUE(is_valid_cm(testing::tmsv_literal(r))) << r;
}

TEST(IsValidCm, RejectsBadShapesAndValues) {
  EXPECT_THROW(is_valid_cm(Matrix::Identity(3, 3)), DimensionError);
  EXPECT_THROW(is_valid_cm(Matrix::Identity(2, 4)), DimensionError);
  Matrix nan = Matrix::Identity(2, 2);
  nan(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(is_valid_cm(nan), DataError);
}

TEST(IsValidCm, AsymmetryBeyondTolIsInvalid) {
  Matrix g = 2.0 * Matrix::Identity(2, 2);
  g(0, 1) = 1e-6;
  EXPECT_FALSE(check_cm(g).symmetric);
  EXPECT_FALSE(is_valid_cm(g));
  EXPECT_TRUE(is_valid_cm(g, 1e-5));
}

TEST(SymplecticEigenvalues, Examples) {
  for (double v : symplectic_eigenvalues(Matrix::Identity(6, 6))) EXPECT_NEAR(v, 1.0, 1e-14);
  const auto thermal_nu = symplectic_eigenvalues(3.5 * Matrix::Identity(2, 2));
  ASSERT_EQ(thermal_nu.size(), 1u);
  EXPECT_NEAR(thermal_nu[0], 3.5, 1e-13);
  for (double v : symplectic_eigenvalues(testing::tmsv_literal(1.0))) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(SymplecticEigenvalues, MatchNonSymmetricOracle) {
  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 4;
    const Matrix g = random_cm(n, 4.0, rng);
    const auto got = symplectic_eigenvalues(g);
    const auto want = testing::oracle_symplectic_eigenvalues(g);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(got[k], want[k], 1e-8 * want[k]);
    EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
  }
}

TEST(SymplecticEigenvalues, InvariantUnderSymplecticCongruence) {
  Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 3;
    const Matrix g = random_cm(n, 3.0, rng);
    const Matrix s = random_symplectic(n, rng);
    const auto before = symplectic_eigenvalues(g);
    const auto after = symplectic_eigenvalues(s.transpose() * g * s);
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(after[k], before[k], 1e-8 * before[k]);
  }
}

TEST(SymplecticEigenvalues, RejectsIndefiniteInput) {
  Matrix g = Matrix::Identity(2, 2);
  g(1, 1) = -1.0;
  EXPECT_THROW(symplectic_eigenvalues(g), NumericalDomainError);
  EXPECT_THROW(symplectic_eigenvalues(Matrix::Zero(2, 2)), NumericalDomainError);
}

// Both validity criteria agree on 500 random CMs, half of them scaled below
// the physical boundary.
TEST(Validity, EigenvalueAndSymplecticCriteriaAgree) {
  Rng rng(13);
  int invalid = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + t % 3;
    Matrix g = random_cm(n, 3.0, rng);
    if (t % 2 == 1) g *= rng.uniform(0.3, 1.2);
    const double nu_min = symplectic_eigenvalues(g).front();
    if (std::abs(nu_min - 1.0) < 1e-6) continue;
    const bool by_symplectic = nu_min >= 1.0 - kDefaultTol;
    EXPECT_EQ(is_valid_cm(g), by_symplectic) << "trial " << t;
    EXPECT_EQ(testing::oracle_min_eig_plus_ij(g) >= -kDefaultTol, by_symplectic) << "trial " << t;
    invalid += by_symplectic ? 0 : 1;
  }
  EXPECT_GT(invalid, 50);
}

TEST(PartialTranspose, ProductState) {
  const Matrix ga = random_cm(1, 2.0, 1);
  const Matrix gb = random_cm(1, 2.0, 2);
  const BipartiteSplit split({0}, {1});
  const Matrix pt = partial_transpose(direct_sum(ga, gb), split);
  EXPECT_EQ(pt, direct_sum(ga, lambda_matrix(1) * gb * lambda_matrix(1)));
  EXPECT_TRUE(is_valid_cm(pt));
}

TEST(PartialTranspose, InvolutionAndSymmetryAreExact) {
  Rng rng(14);
  for (int t = 0; t < 50; ++t) {
    const Matrix g = random_cm(3, 2.0, rng);
    const BipartiteSplit split({0, 2}, {1});
    const Matrix pt = partial_transpose(g, split);
    EXPECT_EQ(pt, pt.transpose());
    EXPECT_EQ(partial_transpose(pt, split), g);
  }
}

TEST(PartialTranspose, TwoModeSqueezedMinimum) {
  for (double r : {0.3, 1.0, 2.5}) {
    const Matrix pt = partial_transpose(testing::tmsv_literal(r), BipartiteSplit({0}, {1}));
    EXPECT_NEAR(symplectic_eigenvalues(pt).front(), std::exp(-r), 1e-12);
  }
}

TEST(PartialTranspose, BadSplitsRejected) {
  const Matrix g = Matrix::Identity(6, 6);
  EXPECT_THROW(partial_transpose(g, BipartiteSplit({0, 1}, {1, 2})), PartitionError);
  EXPECT_THROW(partial_transpose(g, BipartiteSplit({0}, {1})), PartitionError);
  EXPECT_THROW(partial_transpose(g, BipartiteSplit({0, 1, 2}, {})), PartitionError);
  EXPECT_THROW(partial_transpose(g, BipartiteSplit({0, 1}, {5})), PartitionError);
}

TEST(PseudoInverse, RankOneDiagonal) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 2.0;
  Matrix want = Matrix::Zero(2, 2);
  want(0, 0) = 0.5;
  EXPECT_LT(max_abs(pseudo_inverse(m) - want), 1e-15);
}

TEST(PseudoInverse, FullRankIsInverse) {
  Rng rng(15);
  const Matrix m = testing::random_psd(5, 5, 1.0, rng) + Matrix::Identity(5, 5);
  EXPECT_LT(max_abs(pseudo_inverse(m) - m.inverse()), 1e-12);
}

TEST(PseudoInverse, MoorePenroseIdentities) {
  Rng rng(16);
  for (int t = 0; t < 50; ++t) {
    const Eigen::Index dim = 2 + t % 5;
    const Eigen::Index rank = 1 + t % dim;
    const Matrix m = testing::random_psd(dim, rank, 1.0, rng);
    const Matrix p = pseudo_inverse(m);
    const double scale = std::max(1.0, max_abs(m)) * std::max(1.0, max_abs(p));
    EXPECT_LT(max_abs(m * p * m - m), 1e-8 * scale);
    EXPECT_LT(max_abs(p * m * p - p), 1e-8 * scale);
    EXPECT_LT(max_abs((m * p).transpose() - m * p), 1e-8 * scale);
    EXPECT_LT(max_abs((p * m).transpose() - p * m), 1e-8 * scale);
  }
}

TEST(PseudoInverse, RejectsNonSymmetric) {
  Matrix m(2, 2);
  m << 1, 2, 0, 1;
  EXPECT_THROW(pseudo_inverse(m), DataError);
}

TEST(RandomSymplectic, IsSymplecticAndDeterministic) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t n = 1 + seed % 4;
    const Matrix s = random_symplectic(n, seed);
    const Matrix j = symplectic_form(n);
    EXPECT_LT(max_abs(s.transpose() * j * s - j), 1e-10);
    EXPECT_EQ(s, random_symplectic(n, seed));
  }
  EXPECT_NE(random_symplectic(2, 1), random_symplectic(2, 2));
}

TEST(RandomSymplectic, ZeroGeneratorIsIdentity) {
  EXPECT_LT(max_abs(symplectic_from_generator(Matrix::Zero(4, 4)) - Matrix::Identity(4, 4)), 1e-15);
}

TEST(RandomCm, PureWhenMixednessIsOne) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (double v : symplectic_eigenvalues(random_cm(3, 1.0, seed))) EXPECT_NEAR(v, 1.0, 1e-9);
  }
}

TEST(RandomCm, ValidDeterministicAndBounded) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Matrix g = random_cm(2, 3.0, seed);
    EXPECT_TRUE(is_valid_cm(g));
    EXPECT_EQ(g, random_cm(2, 3.0, seed));
    for (double v : symplectic_eigenvalues(g)) {
      EXPECT_GE(v, 1.0 - 1e-9);
      EXPECT_LE(v, 3.0 + 1e-9);
    }
  }
  EXPECT_THROW(random_cm(1, 0.5, 1), DataError);
}

}  // namespace
}  // namespace gausskit
