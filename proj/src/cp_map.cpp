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

#include "gausskit/cp_map.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "gausskit/errors.hpp"

namespace gausskit {

namespace {

using namespace std::complex_literals;

constexpr double kSingularRelTol = 1e-12;

/// Inverse of a symmetric matrix, falling back to the pseudo-inverse when
/// it is singular at `kSingularRelTol`.
Matrix symmetric_inverse(const Matrix& m, bool& used_pinv) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()));
  const Vector& ev = es.eigenvalues();
  const double cutoff = kSingularRelTol * ev.cwiseAbs().maxCoeff();
  Vector inv(ev.size());
  used_pinv = false;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (std::abs(ev(k)) > cutoff) {
      inv(k) = 1.0 / ev(k);
    } else {
      inv(k) = 0.0;
      used_pinv = true;
    }
  }
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

std::vector<std::size_t> complement(const std::vector<std::size_t>& modes, std::size_t n) {
  std::vector<int> seen(n, 0);
  for (std::size_t m : modes) {
    if (m >= n) throw DimensionError("mode " + std::to_string(m) + " out of range");
    if (seen[m]++ != 0) throw DimensionError("mode " + std::to_string(m) + " listed twice");
  }
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < n; ++k) {
    if (seen[k] == 0) rest.push_back(k);
  }
  return rest;
}

Vector subvector(const Vector& v, const std::vector<Eigen::Index>& idx) {
  Vector out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out(i) = v(idx[i]);
  return out;
}

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

struct TildeBlocks {
  Matrix g1, g2, g12;
};

TildeBlocks tilde_blocks(const GaussianCPMap& map) {
  const Matrix t = tilde(map.gamma(), map.n_out(), map.n_in());
  const Eigen::Index o = static_cast<Eigen::Index>(2 * map.n_out());
  const Eigen::Index i = static_cast<Eigen::Index>(2 * map.n_in());
  return {t.topLeftCorner(o, o), t.bottomRightCorner(i, i), t.topRightCorner(o, i)};
}

}  // namespace

GaussianCPMap::GaussianCPMap(std::size_t n_out, std::size_t n_in, Matrix gamma, Vector d)
    : n_out_(n_out), n_in_(n_in), gamma_(std::move(gamma)), d_(std::move(d)) {
  if (n_out == 0 || n_in == 0) throw DimensionError("GaussianCPMap: mode counts must be positive");
  const Eigen::Index dim = static_cast<Eigen::Index>(2 * (n_out + n_in));
  if (gamma_.rows() != dim || gamma_.cols() != dim) {
    throw DimensionError("GaussianCPMap: Gamma must be " + std::to_string(dim) + "x" +
                         std::to_string(dim));
  }
  if (d_.size() != dim) throw DimensionError("GaussianCPMap: D must have length " + std::to_string(dim));
  if (!gamma_.allFinite() || !d_.allFinite()) throw DataError("GaussianCPMap: non-finite entries");
}

GaussianCPMap::GaussianCPMap(std::size_t n_out, std::size_t n_in, Matrix gamma)
    : GaussianCPMap(n_out, n_in, std::move(gamma), Vector::Zero(2 * (n_out + n_in))) {}

Matrix tilde(const Matrix& gamma, std::size_t n_out, std::size_t n_in) {
  const Eigen::Index dim = static_cast<Eigen::Index>(2 * (n_out + n_in));
  if (gamma.rows() != dim || gamma.cols() != dim) throw DimensionError("tilde: size mismatch");
  Matrix out = gamma;
  for (std::size_t k = 0; k < n_in; ++k) {
    const Eigen::Index p = static_cast<Eigen::Index>(2 * (n_out + k) + 1);
    out.row(p) *= -1.0;
    out.col(p) *= -1.0;
  }
  return out;
}

MapOutput apply(const GaussianCPMap& map, const GaussianState& s) {
  if (s.modes() != map.n_in()) {
    throw DimensionError("apply: map expects " + std::to_string(map.n_in()) + " input modes, state has " +
                         std::to_string(s.modes()));
  }
  const TildeBlocks g = tilde_blocks(map);
  const Eigen::Index o = static_cast<Eigen::Index>(2 * map.n_out());
  const Eigen::Index i = static_cast<Eigen::Index>(2 * map.n_in());
  bool used_pinv = false;
  const Matrix inv = symmetric_inverse(g.g2 + s.cm(), used_pinv);
  const Matrix gain = g.g12 * inv;
  const Matrix cm = symmetrized(g.g1 - gain * g.g12.transpose());
  const Vector disp = map.d().head(o) + gain * (map.d().tail(i) + s.disp());
  if (!cm.allFinite() || !disp.allFinite()) throw NumericalDomainError("apply: non-finite result");
  return {GaussianState(cm, disp), used_pinv};
}

ChannelForm::ChannelForm(Matrix m, Matrix n) : m_(std::move(m)), n_(std::move(n)) {
  mode_count(m_);
  if (m_.rows() == 0 || n_.rows() != m_.rows() || n_.cols() != m_.cols()) {
    throw DimensionError("ChannelForm: M and N must be equal-size even square matrices");
  }
  if (!m_.allFinite() || !n_.allFinite()) throw DataError("ChannelForm: non-finite entries");
  if ((n_ - n_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, n_.cwiseAbs().maxCoeff())) {
    throw DataError("ChannelForm: N must be symmetric");
  }
}

double ChannelForm::cp_margin() const {
  const Matrix j = symplectic_form(modes());
  const Matrix k = j - m_.transpose() * j * m_;
  const CMatrix h = symmetrized(n_).cast<std::complex<double>>() + 1i * k.cast<std::complex<double>>();
  return min_hermitian_eigenvalue(h);
}

GaussianState channel_apply(const ChannelForm& ch, const GaussianState& s) {
  if (s.modes() != ch.modes()) throw DimensionError("channel_apply: mode count mismatch");
  const Matrix cm = symmetrized(ch.m().transpose() * s.cm() * ch.m() + ch.n());
  return GaussianState(cm, ch.m().transpose() * s.disp());
}

GaussianCPMap channel_to_choi(const ChannelForm& ch, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DataError("channel_to_choi: r must be positive");
  const std::size_t n = ch.modes();
  const Eigen::Index d = static_cast<Eigen::Index>(2 * n);
  const Matrix a = std::cosh(r) * Matrix::Identity(d, d);
  const Matrix c = std::sinh(r) * lambda_matrix(n);
  Matrix gamma(2 * d, 2 * d);
  gamma << ch.m().transpose() * a * ch.m() + ch.n(), ch.m().transpose() * c,
      c * ch.m(), a;
  return GaussianCPMap(n, n, symmetrized(gamma));
}

PureGaussianPOVMElement::PureGaussianPOVMElement(Matrix gamma_p, Vector d_p, double purity_tol)
    : gamma_(std::move(gamma_p)), d_(std::move(d_p)) {
  mode_count(gamma_);
  if (gamma_.rows() == 0 || d_.size() != gamma_.rows()) {
    throw DimensionError("PureGaussianPOVMElement: displacement length mismatch");
  }
  if (!is_valid_cm(gamma_)) throw DataError("PureGaussianPOVMElement: gamma_p is not a valid CM");
  for (double nu : symplectic_eigenvalues(gamma_)) {
    if (std::abs(nu - 1.0) > purity_tol) {
      throw DataError("PureGaussianPOVMElement: gamma_p is not pure (symplectic eigenvalue " +
                      std::to_string(nu) + ")");
    }
  }
}

MapOutput measure_pure_gaussian(const GaussianState& s, const std::vector<std::size_t>& measured,
                                const PureGaussianPOVMElement& povm) {
  if (measured.size() != povm.modes()) {
    throw DimensionError("measure_pure_gaussian: POVM has " + std::to_string(povm.modes()) +
                         " modes, " + std::to_string(measured.size()) + " measured");
  }
  const auto kept = complement(measured, s.modes());
  if (kept.empty()) throw DimensionError("measure_pure_gaussian: no modes left after measurement");
  const auto ki = quadrature_indices(kept);
  const auto mi = quadrature_indices(measured);
  const Matrix a = submatrix(s.cm(), ki, ki);
  const Matrix b = submatrix(s.cm(), mi, mi);
  const Matrix c = submatrix(s.cm(), ki, mi);
  bool used_pinv = false;
  const Matrix gain = c * symmetric_inverse(b + povm.gamma(), used_pinv);
  const Matrix cm = symmetrized(a - gain * c.transpose());
  const Vector disp = subvector(s.disp(), ki) + gain * (povm.disp() - subvector(s.disp(), mi));
  return {GaussianState(cm, disp), used_pinv};
}

MapOutput homodyne(const GaussianState& s, const std::vector<std::size_t>& measured,
                   const std::vector<Quadrature>& quadratures, const Vector& outcome) {
  if (quadratures.size() != measured.size() ||
      outcome.size() != static_cast<Eigen::Index>(measured.size())) {
    throw DimensionError("homodyne: need one quadrature and one outcome per measured mode");
  }
  const auto kept = complement(measured, s.modes());
  if (kept.empty()) throw DimensionError("homodyne: no modes left after measurement");
  const auto ki = quadrature_indices(kept);
  const auto mi = quadrature_indices(measured);
  const Eigen::Index m2 = static_cast<Eigen::Index>(mi.size());
  Matrix proj = Matrix::Zero(m2, m2);
  Vector y = Vector::Zero(m2);
  for (std::size_t k = 0; k < measured.size(); ++k) {
    const Eigen::Index q = static_cast<Eigen::Index>(2 * k + (quadratures[k] == Quadrature::P ? 1 : 0));
    proj(q, q) = 1.0;
    y(q) = outcome(static_cast<Eigen::Index>(k));
  }
  const Matrix a = submatrix(s.cm(), ki, ki);
  const Matrix b = submatrix(s.cm(), mi, mi);
  const Matrix c = submatrix(s.cm(), ki, mi);
  const Matrix gain = c * pseudo_inverse(symmetrized(proj * b * proj), kSingularRelTol);
  const Matrix cm = symmetrized(a - gain * c.transpose());
  const Vector disp = subvector(s.disp(), ki) + gain * proj * (y - subvector(s.disp(), mi));
  return {GaussianState(cm, disp), true};
}

GaussianState DeterministicTransform::operator()(const Vector& input_disp) const {
  if (input_disp.size() != displacement_gain.cols()) {
    throw DimensionError("DeterministicTransform: displacement length mismatch");
  }
  return GaussianState(output_cm, displacement_gain * input_disp);
}

DeterministicTransform determinize(const GaussianCPMap& map, const Matrix& input_cm) {
  if (input_cm.rows() != static_cast<Eigen::Index>(2 * map.n_in()) || input_cm.cols() != input_cm.rows()) {
    throw DimensionError("determinize: input CM does not match the map's input modes");
  }
  const TildeBlocks g = tilde_blocks(map);
  DeterministicTransform t;
  const Matrix inv = symmetric_inverse(g.g2 + input_cm, t.used_pseudo_inverse);
  t.displacement_gain = g.g12 * inv;
  t.output_cm = symmetrized(g.g1 - t.displacement_gain * g.g12.transpose());
  return t;
}

GaussianCPMap add_noise(const GaussianCPMap& map, const Matrix& p, double tol) {
  if (p.rows() != map.gamma().rows() || p.cols() != map.gamma().cols()) {
    throw DimensionError("add_noise: P must match Gamma");
  }
  if (!p.allFinite()) throw DataError("add_noise: non-finite entries in P");
  if ((p - p.transpose()).cwiseAbs().maxCoeff() > tol) throw DataError("add_noise: P is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(p), Eigen::EigenvaluesOnly);
  if (es.eigenvalues()(0) < -tol) throw DataError("add_noise: P is not positive semidefinite");
  return GaussianCPMap(map.n_out(), map.n_in(), map.gamma() + symmetrized(p), map.d());
}

}  // namespace gausskit
