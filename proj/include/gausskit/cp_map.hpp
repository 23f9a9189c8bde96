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
#include <vector>

#include "gausskit/state.hpp"
#include "gausskit/symplectic.hpp"

namespace gausskit {

/// Gaussian map given by the correlation matrix Gamma of its isomorphic
/// operator (output modes first, then input modes) and displacement D.
///
/// Complete positivity is exactly Gamma >= iJ; the constructor does not
/// enforce it so that the same action formulas can be evaluated on maps that
/// are only positive (see positive_maps.hpp).
class GaussianCPMap {
 public:
  GaussianCPMap(std::size_t n_out, std::size_t n_in, Matrix gamma, Vector d);
  GaussianCPMap(std::size_t n_out, std::size_t n_in, Matrix gamma);

  std::size_t n_out() const { return n_out_; }
  std::size_t n_in() const { return n_in_; }
  const Matrix& gamma() const { return gamma_; }
  const Vector& d() const { return d_; }

  bool is_completely_positive(double tol = kDefaultTol) const { return is_valid_cm(gamma_, tol); }

 private:
  std::size_t n_out_;
  std::size_t n_in_;
  Matrix gamma_;
  Vector d_;
};

/// (1 + Lambda) Gamma (1 + Lambda): Lambda acts on the input block only.
Matrix tilde(const Matrix& gamma, std::size_t n_out, std::size_t n_in);

/// Result of a CM-level transformation. `used_pseudo_inverse` records that
/// the matrix to be inverted was singular and its Moore-Penrose inverse was
/// used instead.
struct MapOutput {
  GaussianState state;
  bool used_pseudo_inverse = false;
};

/// Action of the map on a state, up to normalization:
///   cm'   = G1 - G12 (G2 + cm)^-1 G12^T
///   disp' = D1 + G12 (G2 + cm)^-1 (D2 + disp)
/// with G = tilde(Gamma).
MapOutput apply(const GaussianCPMap& map, const GaussianState& s);

/// Trace-preserving channel cm -> M^T cm M + N, disp -> M^T disp.
class ChannelForm {
 public:
  ChannelForm(Matrix m, Matrix n);

  const Matrix& m() const { return m_; }
  const Matrix& n() const { return n_; }
  std::size_t modes() const { return static_cast<std::size_t>(m_.rows() / 2); }

  /// Smallest eigenvalue of N + i(J - M^T J M).
  double cp_margin() const;
  bool is_completely_positive(double tol = kDefaultTol) const { return cp_margin() >= -tol; }

 private:
  Matrix m_;
  Matrix n_;
};

GaussianState channel_apply(const ChannelForm& ch, const GaussianState& s);

/// Finite-squeezing isomorphic CM
///   [[M^T A_r M + N, M^T C_r], [C_r M, A_r]]
/// with A_r = cosh r I and C_r = sinh r Lambda. D = 0.
GaussianCPMap channel_to_choi(const ChannelForm& ch, double r);

/// Projection onto a pure Gaussian state of the measured modes.
class PureGaussianPOVMElement {
 public:
  /// Throws DataError unless gamma_p is a valid CM with every symplectic
  /// eigenvalue within `purity_tol` of 1.
  PureGaussianPOVMElement(Matrix gamma_p, Vector d_p, double purity_tol = 1e-6);

  const Matrix& gamma() const { return gamma_; }
  const Vector& disp() const { return d_; }
  std::size_t modes() const { return static_cast<std::size_t>(gamma_.rows() / 2); }

 private:
  Matrix gamma_;
  Vector d_;
};

/// Conditional state after projecting `measured` onto the POVM element.
/// With cm = [[A, C], [C^T, B]] over (kept, measured):
///   cm'   = A - C (B + gamma_p)^-1 C^T
///   disp' = d_kept + C (B + gamma_p)^-1 (d_p - d_measured)
/// Kept modes appear in ascending order.
MapOutput measure_pure_gaussian(const GaussianState& s, const std::vector<std::size_t>& measured,
                                const PureGaussianPOVMElement& povm);

enum class Quadrature { X, P };

/// Ideal homodyne detection of one quadrature per measured mode, with
/// `outcome` holding one value per measured mode. This is the infinite
/// squeezing limit of `measure_pure_gaussian`; the inverse becomes the
/// pseudo-inverse of B restricted to the measured quadratures.
MapOutput homodyne(const GaussianState& s, const std::vector<std::size_t>& measured,
                   const std::vector<Quadrature>& quadratures, const Vector& outcome);

/// Trace-preserving version of a map for a known input CM: the output CM of
/// `apply` together with the linear displacement law d -> gain * d.
struct DeterministicTransform {
  Matrix output_cm;
  Matrix displacement_gain;
  bool used_pseudo_inverse = false;

  GaussianState operator()(const Vector& input_disp) const;
};

DeterministicTransform determinize(const GaussianCPMap& map, const Matrix& input_cm);

/// Gamma + P for symmetric positive semidefinite P. D is left untouched.
GaussianCPMap add_noise(const GaussianCPMap& map, const Matrix& p, double tol = kDefaultTol);

}  // namespace gausskit
