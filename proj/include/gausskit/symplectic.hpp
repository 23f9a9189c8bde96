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

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "gausskit/random.hpp"
#include "gausskit/split.hpp"

namespace gausskit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Absolute tolerance on eigenvalues used by every validity predicate.
inline constexpr double kDefaultTol = 1e-9;

/// Quadratures are ordered (X1, P1, X2, P2, ..., Xn, Pn) throughout.
Matrix symplectic_form(std::size_t n);

/// diag(1, -1, 1, -1, ...): flips every momentum quadrature.
Matrix lambda_matrix(std::size_t n);

/// Number of modes of a 2n x 2n matrix; throws DimensionError otherwise.
std::size_t mode_count(const Matrix& m);

Matrix direct_sum(const Matrix& a, const Matrix& b);

/// Quadrature indices (2k, 2k+1) of the listed modes, in order.
std::vector<Eigen::Index> quadrature_indices(const std::vector<std::size_t>& modes);

Matrix submatrix(const Matrix& m, const std::vector<Eigen::Index>& rows,
                 const std::vector<Eigen::Index>& cols);

/// Smallest eigenvalue of a Hermitian matrix.
double min_hermitian_eigenvalue(const CMatrix& h);

struct CmCheck {
  bool valid = false;
  bool symmetric = false;
  /// Smallest eigenvalue of gamma + iJ.
  double min_eigenvalue = 0.0;
};

/// Validity of a correlation matrix: symmetric within `tol` and
/// gamma + iJ >= -tol. Odd or non-square shapes throw DimensionError,
/// non-finite entries throw DataError.
CmCheck check_cm(const Matrix& gamma, double tol = kDefaultTol);
bool is_valid_cm(const Matrix& gamma, double tol = kDefaultTol);

/// Williamson spectrum of a positive definite gamma, ascending.
///
/// The eigenvalues of iJ gamma are obtained from the Hermitian matrix
/// i L^T J L (gamma = L L^T), which is similar to it. They come in pairs
/// +-lambda; pairs that disagree by more than `pairing_tol` throw.
std::vector<double> symplectic_eigenvalues(const Matrix& gamma,
                                           double pairing_tol = 1e-8);

/// Lambda_B gamma Lambda_B: sign flip of the momentum rows/columns of the
/// party-B modes.
Matrix partial_transpose(const Matrix& gamma, const BipartiteSplit& split);

/// Moore-Penrose inverse of a real symmetric matrix. Eigenvalues with
/// magnitude below rel_tol * (largest magnitude) are treated as zero.
Matrix pseudo_inverse(const Matrix& m, double rel_tol = 1e-12);

/// Same for a Hermitian complex matrix.
CMatrix pseudo_inverse(const CMatrix& m, double rel_tol = 1e-12);

/// exp(J h) for real symmetric h; always symplectic.
Matrix symplectic_from_generator(const Matrix& h);

/// Random symplectic matrix exp(J h) with a random symmetric h of spectral
/// norm at most 2.
Matrix random_symplectic(std::size_t n, std::uint64_t seed);
Matrix random_symplectic(std::size_t n, Rng& rng);

/// S^T diag(nu_1, nu_1, ..., nu_n, nu_n) S with nu_k uniform in
/// [1, mixedness] and S random symplectic.
Matrix random_cm(std::size_t n, double mixedness, std::uint64_t seed);
Matrix random_cm(std::size_t n, double mixedness, Rng& rng);

}  // namespace gausskit
