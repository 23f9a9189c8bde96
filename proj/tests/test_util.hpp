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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "gausskit/symplectic.hpp"

namespace gausskit::testing {

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// Smallest real part among the eigenvalues of gamma + iJ, computed with the
/// general complex eigensolver (independent of the Hermitian code path).
inline double oracle_min_eig_plus_ij(const Matrix& gamma) {
  const std::size_t n = static_cast<std::size_t>(gamma.rows() / 2);
  const CMatrix h = gamma.cast<std::complex<double>>() +
                    std::complex<double>(0.0, 1.0) * symplectic_form(n).cast<std::complex<double>>();
  Eigen::ComplexEigenSolver<CMatrix> es(h);
  return es.eigenvalues().real().minCoeff();
}

/// Symplectic eigenvalues from the non-symmetric matrix J gamma: its
/// eigenvalues are +-i nu_k.
inline std::vector<double> oracle_symplectic_eigenvalues(const Matrix& gamma) {
  const std::size_t n = static_cast<std::size_t>(gamma.rows() / 2);
  Eigen::EigenSolver<Matrix> es(symplectic_form(n) * gamma);
  std::vector<double> all;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) all.push_back(std::abs(es.eigenvalues()(k).imag()));
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (std::size_t k = 0; k < all.size(); k += 2) out.push_back(0.5 * (all[k] + all[k + 1]));
  return out;
}

/// Smallest eigenvalue of a real symmetric matrix.
inline double min_sym_eig(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

/// Two-mode squeezed CM written out entry by entry.
inline Matrix tmsv_literal(double r) {
  const double c = std::cosh(r);
  const double s = std::sinh(r);
  Matrix g(4, 4);
  g << c, 0, s, 0,
       0, c, 0, -s,
       s, 0, c, 0,
       0, -s, 0, c;
  return g;
}

/// Random matrix with standard normal entries.
inline Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.normal();
  }
  return m;
}

inline Vector random_vector(Eigen::Index n, Rng& rng) { return random_matrix(n, 1, rng).col(0); }

/// Random positive semidefinite matrix of the given rank.
inline Matrix random_psd(Eigen::Index dim, Eigen::Index rank, double scale, Rng& rng) {
  const Matrix q = random_matrix(rank, dim, rng);
  const Matrix p = scale * q.transpose() * q;
  return 0.5 * (p + p.transpose());
}

/// Werner-Wolf bound entangled CM of 2 x 2 modes: valid, PPT across
/// {0, 1} | {2, 3}, yet not separable.
inline Matrix werner_wolf_cm() {
  Matrix g(8, 8);
  g << 2, 0, 0, 0, 1, 0, 0, 0,
       0, 1, 0, 0, 0, 0, 0, -1,
       0, 0, 2, 0, 0, 0, -1, 0,
       0, 0, 0, 1, 0, -1, 0, 0,
       1, 0, 0, 0, 2, 0, 0, 0,
       0, 0, 0, -1, 0, 4, 0, 0,
       0, 0, -1, 0, 0, 0, 2, 0,
       0, -1, 0, 0, 0, 0, 0, 4;
  return g;
}

}  // namespace gausskit::testing
