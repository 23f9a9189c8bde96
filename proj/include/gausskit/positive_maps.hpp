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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "gausskit/cp_map.hpp"
#include "gausskit/symplectic.hpp"

namespace gausskit {

/// Gaussian operator with complex parameters, integral of
/// exp(-x^T gamma x / 4 + i b^T x - c) W(x). gamma is complex symmetric
/// (plain transpose, not Hermitian).
class GaussianOperator {
 public:
  GaussianOperator(CMatrix gamma, CVector b, std::complex<double> c);

  const CMatrix& gamma() const { return gamma_; }
  const CVector& b() const { return b_; }
  std::complex<double> c() const { return c_; }
  std::size_t modes() const { return static_cast<std::size_t>(gamma_.rows() / 2); }

 private:
  CMatrix gamma_;
  CVector b_;
  std::complex<double> c_;
};

/// Bounded iff Re(gamma) > 0.
bool op_is_bounded(const GaussianOperator& a, double tol = kDefaultTol);
/// Self-adjoint iff gamma, b and c are real.
bool op_is_selfadjoint(const GaussianOperator& a, double tol = 1e-12);
/// Positive iff self-adjoint and Re(gamma) >= iJ.
bool op_is_positive(const GaussianOperator& a, double tol = kDefaultTol);
/// pi^n exp(-c).
std::complex<double> op_trace(const GaussianOperator& a);

/// General Gaussian map: the operator parameters (Gamma, D, C) of its
/// isomorphic operator on (output, input) modes. C is stored as given.
struct GaussianMapMatrix {
  std::size_t n_out = 0;
  std::size_t n_in = 0;
  CMatrix gamma;
  CVector d;
  std::complex<double> c{0.0, 0.0};

  static GaussianMapMatrix from_real(const GaussianCPMap& map);
  void validate() const;
  bool is_real(double tol = 1e-12) const;
};

struct MMatrixResult {
  CMatrix m;
  bool used_pseudo_inverse = false;
};

/// M = G2 - G12^T (G1 - iJ)^-1 G12 with G = tilde(Gamma), on the input
/// modes. A map is positive iff G1 >= iJ and gamma + M >= 0 for every valid
/// input gamma.
MMatrixResult map_m_matrix(const GaussianMapMatrix& g);

/// Coefficients of the Weyl-operator action: tilde(Gamma), tilde(D), C.
struct WeylCoefficients {
  CMatrix gamma;
  CVector d;
  std::complex<double> c;
};

WeylCoefficients weyl_action_coefficients(const GaussianMapMatrix& g);

struct SymplecticCertificate {
  bool available = false;
  /// S with S^T J S = J.
  Matrix s;
  /// S^T S: a pure CM with z^dagger cm z = |z^dagger iJ z|.
  Matrix cm;
  std::string reason;
};

/// Pure CM that is tight for z in min over valid gamma of z^dagger gamma z.
/// Unavailable when Re z and Im z are (numerically) J-orthogonal.
SymplecticCertificate positivity_certificate(const CVector& z, double tol = 1e-12);

enum class PositivityClass { CompletelyPositive, DecomposablePositive, PositiveUndetermined, NotPositive };

const char* to_string(PositivityClass c);

struct PositivityOptions {
  std::size_t restarts = 64;
  double tol = kDefaultTol;
  std::uint64_t seed = 7;
  std::size_t max_steps = 400;
};

struct PositivityVerdict {
  PositivityClass cls = PositivityClass::PositiveUndetermined;
  /// Smallest eigenvalue of G1 - iJ (tilde output block).
  double output_block_margin = 0.0;
  /// Best value of min_z max{z^dag (M + iJ) z, z^dag (M - iJ) z} over unit z.
  double mu_star = 0.0;
  CVector witness;
  /// max over s in [-1, 1] of lambda_min(M + s iJ): a lower bound on mu_star.
  double dual_bound = 0.0;
  std::size_t restarts = 0;
  /// Restarts that finished within 1e-6 of the best value.
  std::size_t restarts_agreeing = 0;
  bool restarts_agreed = false;
  bool used_pseudo_inverse = false;
  /// Present for NotPositive: a valid input CM whose image is not valid.
  std::optional<SymplecticCertificate> certificate;
  /// Smallest eigenvalue of (image of the certificate) + iJ.
  double certificate_output_margin = 0.0;
  std::string note;
};

/// Positivity of a self-adjoint (real) Gaussian map. Complex Gamma throws
/// DataError.
PositivityVerdict is_positive_map(const GaussianMapMatrix& g, const PositivityOptions& options = {});

}  // namespace gausskit
