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

#include "gausskit/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "gausskit/errors.hpp"

namespace gausskit {

namespace {

using namespace std::complex_literals;

void require_square_even(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0) {
    throw DimensionError(std::string(what) + ": expected an even square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw DataError(std::string(what) + ": non-finite entries");
}

double symmetry_defect(const Matrix& m) {
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace

BipartiteSplit::BipartiteSplit(std::vector<std::size_t> a_modes,
                               std::vector<std::size_t> b_modes)
    : a_(std::move(a_modes)), b_(std::move(b_modes)) {}

BipartiteSplit BipartiteSplit::from_a_modes(std::vector<std::size_t> a_modes,
                                            std::size_t total_modes) {
  std::vector<std::size_t> b;
  for (std::size_t k = 0; k < total_modes; ++k) {
    if (std::find(a_modes.begin(), a_modes.end(), k) == a_modes.end()) b.push_back(k);
  }
  BipartiteSplit split(std::move(a_modes), std::move(b));
  split.validate(total_modes);
  return split;
}

void BipartiteSplit::validate(std::size_t n) const {
  if (a_.empty() || b_.empty()) throw PartitionError("both parties need at least one mode");
  std::vector<int> seen(n, 0);
  for (const auto* list : {&a_, &b_}) {
    for (std::size_t m : *list) {
      if (m >= n) {
        throw PartitionError("mode " + std::to_string(m) + " out of range for " +
                             std::to_string(n) + " modes");
      }
      if (seen[m]++ != 0) throw PartitionError("mode " + std::to_string(m) + " listed twice");
    }
  }
  if (a_.size() + b_.size() != n) throw PartitionError("split does not cover every mode");
}

bool BipartiteSplit::in_a(std::size_t mode) const {
  return std::find(a_.begin(), a_.end(), mode) != a_.end();
}

Matrix symplectic_form(std::size_t n) {
  if (n == 0) throw DimensionError("symplectic_form: mode count must be positive");
  Matrix j = Matrix::Zero(2 * n, 2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    j(2 * k, 2 * k + 1) = -1.0;
    j(2 * k + 1, 2 * k) = 1.0;
  }
  return j;
}

Matrix lambda_matrix(std::size_t n) {
  if (n == 0) throw DimensionError("lambda_matrix: mode count must be positive");
  Vector d(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    d(2 * k) = 1.0;
    d(2 * k + 1) = -1.0;
  }
  return d.asDiagonal();
}

std::size_t mode_count(const Matrix& m) {
  require_square_even(m, "mode_count");
  return static_cast<std::size_t>(m.rows() / 2);
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

std::vector<Eigen::Index> quadrature_indices(const std::vector<std::size_t>& modes) {
  std::vector<Eigen::Index> idx;
  idx.reserve(2 * modes.size());
  for (std::size_t m : modes) {
    idx.push_back(static_cast<Eigen::Index>(2 * m));
    idx.push_back(static_cast<Eigen::Index>(2 * m + 1));
  }
  return idx;
}

Matrix submatrix(const Matrix& m, const std::vector<Eigen::Index>& rows,
                 const std::vector<Eigen::Index>& cols) {
  Matrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  }
  return out;
}

double min_hermitian_eigenvalue(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

CmCheck check_cm(const Matrix& gamma, double tol) {
  require_square_even(gamma, "check_cm");
  require_finite(gamma, "check_cm");
  const std::size_t n = mode_count(gamma);
  CmCheck result;
  result.symmetric = symmetry_defect(gamma) <= tol;
  const Matrix sym = 0.5 * (gamma + gamma.transpose());
  const CMatrix h = sym.cast<std::complex<double>>() + 1i * symplectic_form(n).cast<std::complex<double>>();
  result.min_eigenvalue = min_hermitian_eigenvalue(h);
  result.valid = result.symmetric && result.min_eigenvalue >= -tol;
  return result;
}

bool is_valid_cm(const Matrix& gamma, double tol) { return check_cm(gamma, tol).valid; }

std::vector<double> symplectic_eigenvalues(const Matrix& gamma, double pairing_tol) {
  require_square_even(gamma, "symplectic_eigenvalues");
  require_finite(gamma, "symplectic_eigenvalues");
  const std::size_t n = mode_count(gamma);
  const Matrix sym = 0.5 * (gamma + gamma.transpose());
  Eigen::LLT<Matrix> llt(sym);
  if (llt.info() != Eigen::Success) {
    throw NumericalDomainError("symplectic_eigenvalues: matrix is not positive definite");
  }
  const Matrix l = llt.matrixL();
  const Matrix k = l.transpose() * symplectic_form(n) * l;
  const CMatrix h = 1i * k.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  const Vector& ev = es.eigenvalues();
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double pos = ev(static_cast<Eigen::Index>(n + j));
    const double neg = ev(static_cast<Eigen::Index>(n - 1 - j));
    if (std::abs(pos + neg) > pairing_tol * std::max(1.0, std::abs(pos))) {
      throw NumericalDomainError("symplectic_eigenvalues: spectrum of iJ*gamma is not paired");
    }
    out[j] = 0.5 * (pos - neg);
  }
  return out;
}

Matrix partial_transpose(const Matrix& gamma, const BipartiteSplit& split) {
  const std::size_t n = mode_count(gamma);
  split.validate(n);
  Matrix out = gamma;
  for (std::size_t m : split.b_modes()) {
    const Eigen::Index p = static_cast<Eigen::Index>(2 * m + 1);
    out.row(p) *= -1.0;
    out.col(p) *= -1.0;
  }
  return out;
}

Matrix pseudo_inverse(const Matrix& m, double rel_tol) {
  if (m.rows() != m.cols()) throw DimensionError("pseudo_inverse: matrix is not square");
  require_finite(m, "pseudo_inverse");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (symmetry_defect(m) > 1e-10 * scale) throw DataError("pseudo_inverse: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()));
  const Vector& ev = es.eigenvalues();
  const double cutoff = rel_tol * ev.cwiseAbs().maxCoeff();
  Vector inv = Vector::Zero(ev.size());
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (std::abs(ev(k)) > cutoff) inv(k) = 1.0 / ev(k);
  }
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

CMatrix pseudo_inverse(const CMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) throw DimensionError("pseudo_inverse: matrix is not square");
  if (!m.allFinite()) throw DataError("pseudo_inverse: non-finite entries");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw DataError("pseudo_inverse: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
  const Vector& ev = es.eigenvalues();
  const double cutoff = rel_tol * ev.cwiseAbs().maxCoeff();
  Vector inv = Vector::Zero(ev.size());
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (std::abs(ev(k)) > cutoff) inv(k) = 1.0 / ev(k);
  }
  return es.eigenvectors() * inv.cast<std::complex<double>>().asDiagonal() *
         es.eigenvectors().adjoint();
}

Matrix symplectic_from_generator(const Matrix& h) {
  const std::size_t n = mode_count(h);
  const Matrix generator = symplectic_form(n) * (0.5 * (h + h.transpose()));
  return generator.exp();
}

Matrix random_symplectic(std::size_t n, Rng& rng) {
  if (n == 0) throw DimensionError("random_symplectic: mode count must be positive");
  const Eigen::Index dim = static_cast<Eigen::Index>(2 * n);
  Matrix h(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) h(i, j) = h(j, i) = rng.normal();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
  const double target = 2.0 * rng.uniform();
  if (norm > 0.0) h *= target / norm;
  return symplectic_from_generator(h);
}

Matrix random_symplectic(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return random_symplectic(n, rng);
}

Matrix random_cm(std::size_t n, double mixedness, Rng& rng) {
  if (!(mixedness >= 1.0)) throw DataError("random_cm: mixedness must be >= 1");
  const Matrix s = random_symplectic(n, rng);
  Vector d(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    const double nu = mixedness == 1.0 ? 1.0 : rng.uniform(1.0, mixedness);
    d(2 * k) = d(2 * k + 1) = nu;
  }
  const Matrix gamma = s.transpose() * d.asDiagonal() * s;
  return 0.5 * (gamma + gamma.transpose());
}

Matrix random_cm(std::size_t n, double mixedness, std::uint64_t seed) {
  Rng rng(seed);
  return random_cm(n, mixedness, rng);
}

}  // namespace gausskit
