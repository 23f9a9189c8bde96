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

#include "gausskit/positive_maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gausskit/errors.hpp"
#include "gausskit/random.hpp"

namespace gausskit {

namespace {

using namespace std::complex_literals;
using cd = std::complex<double>;

CMatrix complex_tilde(const CMatrix& gamma, std::size_t n_out, std::size_t n_in) {
  CMatrix out = gamma;
  for (std::size_t k = 0; k < n_in; ++k) {
    const Eigen::Index p = static_cast<Eigen::Index>(2 * (n_out + k) + 1);
    out.row(p) *= -1.0;
    out.col(p) *= -1.0;
  }
  return out;
}

CMatrix i_j(std::size_t n) { return 1i * symplectic_form(n).cast<cd>(); }

double hermitian_form(const CMatrix& h, const CVector& z) { return std::real(z.dot(h * z)); }

/// Objective max{z^dag (M + K) z, z^dag (M - K) z} = z^dag M z + |z^dag K z|.
struct MinMaxObjective {
  const CMatrix& m;
  const CMatrix& k;

  double value(const CVector& z) const { return hermitian_form(m, z) + std::abs(hermitian_form(k, z)); }
  double smoothed(const CVector& z, double eps) const {
    const double qk = hermitian_form(k, z);
    return hermitian_form(m, z) + std::sqrt(qk * qk + eps * eps);
  }
  /// Complex gradient (d/dRe + i d/dIm) of the smoothed objective.
  CVector gradient(const CVector& z, double eps) const {
    const double qk = hermitian_form(k, z);
    const double w = qk / std::sqrt(qk * qk + eps * eps);
    return 2.0 * (m * z) + (2.0 * w) * (k * z);
  }
};

/// Riemannian gradient descent on the unit sphere with a continuation on the
/// smoothing parameter. Returns the final point.
CVector descend(const MinMaxObjective& f, CVector z, std::size_t max_steps) {
  z.normalize();
  for (double eps : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10}) {
    double step = 0.5;
    double current = f.smoothed(z, eps);
    for (std::size_t it = 0; it < max_steps; ++it) {
      CVector g = f.gradient(z, eps);
      g -= std::real(z.dot(g)) * z;
      const double gnorm2 = g.squaredNorm();
      if (gnorm2 < 1e-24) break;
      bool moved = false;
      for (int ls = 0; ls < 50; ++ls) {
        CVector trial = (z - step * g).normalized();
        const double v = f.smoothed(trial, eps);
        if (v <= current - 1e-4 * step * gnorm2) {
          z = std::move(trial);
          current = v;
          moved = true;
          step *= 2.0;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
  }
  return z;
}

CVector random_unit(std::size_t dim, Rng& rng) {
  CVector z(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = cd(rng.normal(), rng.normal());
  return z.normalized();
}

/// max over s in [-1, 1] of lambda_min(M + s K); concave in s.
double dual_lower_bound(const CMatrix& m, const CMatrix& k) {
  auto h = [&](double s) { return min_hermitian_eigenvalue(m + s * k); };
  double lo = -1.0;
  double hi = 1.0;
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = h(x1);
  double f2 = h(x2);
  while (hi - lo > 1e-12) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = h(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = h(x1);
    }
  }
  return std::max({f1, f2, h(-1.0), h(1.0)});
}

double output_margin(const Matrix& cm) { return check_cm(cm, std::numeric_limits<double>::infinity()).min_eigenvalue; }

}  // namespace

GaussianOperator::GaussianOperator(CMatrix gamma, CVector b, std::complex<double> c)
    : gamma_(std::move(gamma)), b_(std::move(b)), c_(c) {
  if (gamma_.rows() != gamma_.cols() || gamma_.rows() == 0 || gamma_.rows() % 2 != 0) {
    throw DimensionError("GaussianOperator: gamma must be a non-empty even square matrix");
  }
  if (b_.size() != gamma_.rows()) throw DimensionError("GaussianOperator: b has the wrong length");
  if (!gamma_.allFinite() || !b_.allFinite() || !std::isfinite(c_.real()) || !std::isfinite(c_.imag())) {
    throw DataError("GaussianOperator: non-finite parameters");
  }
  const double scale = std::max(1.0, gamma_.cwiseAbs().maxCoeff());
  if ((gamma_ - gamma_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DataError("GaussianOperator: gamma must be symmetric");
  }
}

bool op_is_bounded(const GaussianOperator& a, double tol) {
  const Matrix re = a.gamma().real();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (re + re.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0) > tol;
}

bool op_is_selfadjoint(const GaussianOperator& a, double tol) {
  return a.gamma().imag().cwiseAbs().maxCoeff() <= tol && a.b().imag().cwiseAbs().maxCoeff() <= tol &&
         std::abs(a.c().imag()) <= tol;
}

bool op_is_positive(const GaussianOperator& a, double tol) {
  return op_is_selfadjoint(a) && is_valid_cm(a.gamma().real(), tol);
}

std::complex<double> op_trace(const GaussianOperator& a) {
  return std::pow(std::numbers::pi, static_cast<double>(a.modes())) * std::exp(-a.c());
}

GaussianMapMatrix GaussianMapMatrix::from_real(const GaussianCPMap& map) {
  GaussianMapMatrix g;
  g.n_out = map.n_out();
  g.n_in = map.n_in();
  g.gamma = map.gamma().cast<cd>();
  g.d = map.d().cast<cd>();
  return g;
}

void GaussianMapMatrix::validate() const {
  if (n_out == 0 || n_in == 0) throw DimensionError("GaussianMapMatrix: mode counts must be positive");
  const Eigen::Index dim = static_cast<Eigen::Index>(2 * (n_out + n_in));
  if (gamma.rows() != dim || gamma.cols() != dim || d.size() != dim) {
    throw DimensionError("GaussianMapMatrix: block dimensions do not match the mode counts");
  }
  if (!gamma.allFinite() || !d.allFinite()) throw DataError("GaussianMapMatrix: non-finite entries");
}

bool GaussianMapMatrix::is_real(double tol) const {
  return gamma.imag().cwiseAbs().maxCoeff() <= tol && d.imag().cwiseAbs().maxCoeff() <= tol &&
         std::abs(c.imag()) <= tol;
}

MMatrixResult map_m_matrix(const GaussianMapMatrix& g) {
  g.validate();
  const CMatrix t = complex_tilde(g.gamma, g.n_out, g.n_in);
  const Eigen::Index o = static_cast<Eigen::Index>(2 * g.n_out);
  const Eigen::Index i = static_cast<Eigen::Index>(2 * g.n_in);
  const CMatrix g1 = t.topLeftCorner(o, o);
  const CMatrix g2 = t.bottomRightCorner(i, i);
  const CMatrix g12 = t.topRightCorner(o, i);
  const CMatrix shifted = g1 - i_j(g.n_out);
  MMatrixResult out;
  Eigen::FullPivLU<CMatrix> lu(shifted);
  lu.setThreshold(1e-12);
  CMatrix solved;
  if (lu.isInvertible()) {
    solved = lu.solve(g12);
  } else {
    out.used_pseudo_inverse = true;
    solved = shifted.completeOrthogonalDecomposition().pseudoInverse() * g12;
  }
  out.m = g2 - g12.transpose() * solved;
  return out;
}

WeylCoefficients weyl_action_coefficients(const GaussianMapMatrix& g) {
  g.validate();
  CVector d = g.d;
  for (std::size_t k = 0; k < g.n_in; ++k) d(static_cast<Eigen::Index>(2 * (g.n_out + k) + 1)) *= -1.0;
  return {complex_tilde(g.gamma, g.n_out, g.n_in), d, g.c};
}

SymplecticCertificate positivity_certificate(const CVector& z, double tol) {
  SymplecticCertificate cert;
  if (z.size() == 0 || z.size() % 2 != 0) throw DimensionError("positivity_certificate: odd length");
  const std::size_t n = static_cast<std::size_t>(z.size() / 2);
  const Matrix j = symplectic_form(n);
  const Vector zr = z.real();
  const Vector zi = z.imag();
  const double w = zr.dot(j * zi);
  if (2.0 * std::abs(w) <= tol * z.squaredNorm()) {
    cert.reason = "Re z and Im z are J-orthogonal; no tight pure CM";
    return cert;
  }
  const double c = std::sqrt(2.0 * std::abs(w));
  Vector a = std::sqrt(2.0) * zr / c;
  Vector b = std::sqrt(2.0) * zi / c;
  // omega(x, y) = -x^T J y, normalised so that omega(X_k, P_k) = 1.
  auto omega = [&](const Vector& x, const Vector& y) { return -x.dot(j * y); };
  if (omega(a, b) < 0.0) std::swap(a, b);

  const Eigen::Index dim = static_cast<Eigen::Index>(2 * n);
  Matrix t(dim, dim);
  t.col(0) = a;
  t.col(1) = b;
  for (std::size_t pair = 1; pair < n; ++pair) {
    std::vector<Vector> cands;
    for (Eigen::Index e = 0; e < dim; ++e) {
      Vector v = Vector::Unit(dim, e);
      for (std::size_t k = 0; k < pair; ++k) {
        const Vector x = t.col(static_cast<Eigen::Index>(2 * k));
        const Vector p = t.col(static_cast<Eigen::Index>(2 * k + 1));
        v = v - omega(v, p) * x + omega(v, x) * p;
      }
      cands.push_back(std::move(v));
    }
    std::size_t xi = 0;
    for (std::size_t k = 1; k < cands.size(); ++k) {
      if (cands[k].norm() > cands[xi].norm()) xi = k;
    }
    std::size_t yi = 0;
    double best = -1.0;
    for (std::size_t k = 0; k < cands.size(); ++k) {
      const double o = std::abs(omega(cands[xi], cands[k]));
      if (o > best) {
        best = o;
        yi = k;
      }
    }
    const Vector x = cands[xi] / cands[xi].norm();
    const Vector y = cands[yi] / omega(x, cands[yi]);
    t.col(static_cast<Eigen::Index>(2 * pair)) = x;
    t.col(static_cast<Eigen::Index>(2 * pair + 1)) = y;
  }
  cert.s = t.inverse();
  cert.cm = cert.s.transpose() * cert.s;
  cert.cm = 0.5 * (cert.cm + cert.cm.transpose());
  cert.available = cert.s.allFinite();
  if (!cert.available) cert.reason = "symplectic basis extension failed";
  return cert;
}

const char* to_string(PositivityClass c) {
  switch (c) {
    case PositivityClass::CompletelyPositive: return "CompletelyPositive";
    case PositivityClass::DecomposablePositive: return "DecomposablePositive";
    case PositivityClass::PositiveUndetermined: return "PositiveUndetermined";
    case PositivityClass::NotPositive: return "NotPositive";
  }
  return "?";
}

PositivityVerdict is_positive_map(const GaussianMapMatrix& g, const PositivityOptions& options) {
  g.validate();
  if (!g.is_real()) throw DataError("is_positive_map: only self-adjoint (real) maps are supported");
  const Matrix gamma = g.gamma.real();
  const GaussianCPMap real_map(g.n_out, g.n_in, 0.5 * (gamma + gamma.transpose()), g.d.real());
  const Eigen::Index o = static_cast<Eigen::Index>(2 * g.n_out);
  const Matrix tl = tilde(real_map.gamma(), g.n_out, g.n_in);

  PositivityVerdict v;
  v.output_block_margin = check_cm(tl.topLeftCorner(o, o), std::numeric_limits<double>::infinity()).min_eigenvalue;
  if (v.output_block_margin < -options.tol) {
    // Very large inputs are mapped close to the output block itself.
    v.cls = PositivityClass::NotPositive;
    v.note = "tilde output block is not a valid CM";
    for (double kappa = 1.0; kappa <= 1e12; kappa *= 10.0) {
      const Matrix cm = kappa * Matrix::Identity(2 * g.n_in, 2 * g.n_in);
      const double margin = output_margin(apply(real_map, GaussianState(cm)).state.cm());
      if (margin < -1e-6 || kappa >= 1e12) {
        SymplecticCertificate cert;
        cert.available = true;
        cert.cm = cm;
        cert.reason = "scaled identity input";
        v.certificate = cert;
        v.certificate_output_margin = margin;
        break;
      }
    }
    return v;
  }

  const MMatrixResult mres = map_m_matrix(g);
  v.used_pseudo_inverse = mres.used_pseudo_inverse;
  const CMatrix m = 0.5 * (mres.m + mres.m.adjoint());
  const CMatrix k = i_j(g.n_in);
  const MinMaxObjective f{m, k};
  v.dual_bound = dual_lower_bound(m, k);

  std::vector<CVector> starts;
  for (const CMatrix& h : {CMatrix(m + k), CMatrix(m - k)}) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    for (Eigen::Index c = 0; c < es.eigenvectors().cols(); ++c) starts.push_back(es.eigenvectors().col(c));
  }
  std::vector<double> finals;
  v.mu_star = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < options.restarts; ++r) {
    CVector z0;
    if (r < starts.size()) {
      z0 = starts[r];
    } else {
      Rng rng(mix_seed(options.seed, r));
      z0 = random_unit(static_cast<std::size_t>(m.rows()), rng);
    }
    const CVector z = descend(f, z0, options.max_steps);
    const double val = f.value(z);
    finals.push_back(val);
    if (val < v.mu_star) {
      v.mu_star = val;
      v.witness = z;
    }
  }
  v.restarts = finals.size();
  v.restarts_agreeing =
      static_cast<std::size_t>(std::count_if(finals.begin(), finals.end(), [&](double x) { return x - v.mu_star <= 1e-6; }));
  v.restarts_agreed = v.restarts_agreeing >= std::max<std::size_t>(2, v.restarts / 4);

  if (v.mu_star < -options.tol) {
    v.cls = PositivityClass::NotPositive;
    // A witness with J-orthogonal real and imaginary parts is only approached
    // by ever more squeezed inputs, so nearby non-degenerate vectors (on which
    // the objective stays negative) are tried as well.
    const std::size_t n_in = g.n_in;
    const Matrix j = symplectic_form(n_in);
    const Vector x = v.witness.real();
    const Vector y = v.witness.imag();
    std::vector<CVector> candidates = {v.witness};
    for (double eps = 1e-1; eps >= 1e-6; eps /= std::sqrt(10.0)) {
      for (double sign : {1.0, -1.0}) {
        const Vector y2 = y + sign * eps * j.transpose() * x;
        const Vector x2 = x + sign * eps * j * y;
        candidates.push_back(x.cast<cd>() + cd(0.0, 1.0) * y2.cast<cd>());
        candidates.push_back(x2.cast<cd>() + cd(0.0, 1.0) * y.cast<cd>());
      }
    }
    SymplecticCertificate best;
    best.reason = "no certificate could be built from the witness";
    double best_margin = std::numeric_limits<double>::infinity();
    for (const CVector& z : candidates) {
      if (f.value(z / z.norm()) >= 0.0) continue;
      SymplecticCertificate cert = positivity_certificate(z);
      if (!cert.available) {
        if (!best.available) best.reason = cert.reason;
        continue;
      }
      if (!is_valid_cm(cert.cm)) continue;
      const double margin = output_margin(apply(real_map, GaussianState(cert.cm)).state.cm());
      if (margin < best_margin) {
        best_margin = margin;
        best = cert;
      }
    }
    if (best.available) {
      v.certificate_output_margin = best_margin;
    } else {
      v.note = best.reason;
    }
    v.certificate = best;
    return v;
  }
  if (real_map.is_completely_positive(options.tol)) {
    v.cls = PositivityClass::CompletelyPositive;
  } else if (is_valid_cm(tl, options.tol)) {
    v.cls = PositivityClass::DecomposablePositive;
  } else {
    v.cls = PositivityClass::PositiveUndetermined;
    v.note = "no violation found";
  }
  return v;
}

}  // namespace gausskit
