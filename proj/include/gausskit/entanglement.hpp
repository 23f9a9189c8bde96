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
#include <string>

#include "gausskit/cp_map.hpp"
#include "gausskit/split.hpp"
#include "gausskit/state.hpp"
#include "gausskit/symplectic.hpp"

namespace gausskit {

/// Smallest symplectic eigenvalue of the partially transposed CM. Values
/// below 1 mean the state has a non-positive partial transpose.
double ppt_min_symplectic(const Matrix& gamma, const BipartiteSplit& split);

enum class FeasibilityStatus { Feasible, Infeasible, Indeterminate };

const char* to_string(FeasibilityStatus s);

struct FeasibilityOptions {
  /// Newton-step budget of the barrier solver.
  std::size_t max_iter = 500;
  /// `Feasible` means the witness satisfies every inequality up to -tol.
  double tol = kDefaultTol;
  /// The solve stops once the certified bracket on the margin is this narrow.
  double stagnation = 1e-10;
};

/// Outcome of the separability test "gamma / p >= gamma_A + gamma_B for some
/// valid gamma_A, gamma_B".
///
/// The test maximizes the margin t with gamma/p - X_A + X_B >= t,
/// X_A - iJ >= t and X_B - iJ >= t. [margin_lower, margin_upper] brackets the
/// optimal t: margin_lower is attained by the returned witness,
/// margin_upper comes from the duality gap. A negative upper bound is the
/// infeasibility certificate.
struct FeasibilityResult {
  FeasibilityStatus status = FeasibilityStatus::Indeterminate;
  Matrix gamma_a;
  Matrix gamma_b;
  double margin_lower = 0.0;
  double margin_upper = 0.0;
  std::size_t iterations = 0;
  std::string note;
};

FeasibilityResult feasibility(const Matrix& gamma, const BipartiteSplit& split, double p,
                              const FeasibilityOptions& options = {});

enum class VMethod {
  /// Block decomposition; 1xN blocks in closed form, the rest by the
  /// direct semidefinite program.
  Auto,
  /// Bisection on p with the feasibility oracle on the whole matrix.
  Bisection,
  /// One semidefinite program maximizing p on the whole matrix.
  Direct,
};

struct VOptions {
  VMethod method = VMethod::Auto;
  /// Width of the certified bracket on V below which the value counts as
  /// determinate. The barrier solver reaches about 1e-9 reliably.
  double tol = 1e-8;
  std::size_t bisection_iterations = 40;
  FeasibilityOptions feasibility;
};

/// V(gamma): the largest p <= 1 with gamma >= p (gamma_A + gamma_B) for
/// some valid local CMs. `lower`/`upper` bracket the true value.
struct VResult {
  double value = 1.0;
  double lower = 1.0;
  double upper = 1.0;
  bool indeterminate = false;
  std::string method;
  std::size_t oracle_calls = 0;
};

VResult v_measure(const Matrix& gamma, const BipartiteSplit& split, const VOptions& options = {});

/// Closed form min{ppt_min_symplectic, 1}. Only exact when one party holds a
/// single mode; throws PartitionError otherwise.
double v_closed_form(const Matrix& gamma, const BipartiteSplit& split);

/// Groups of modes coupled by non-zero off-diagonal CM blocks.
std::vector<std::vector<std::size_t>> coupled_components(const Matrix& gamma);

enum class LocalityClass { SeparableLocc, PptPreserving, Nonlocal, PptUndecided };

const char* to_string(LocalityClass c);

struct LocalityReport {
  LocalityClass cls = LocalityClass::PptUndecided;
  /// Smallest eigenvalue of PT(Gamma) + iJ.
  double ppt_margin = 0.0;
  /// Eigenvector for `ppt_margin` (the violating direction when Nonlocal).
  CVector violating_vector;
  FeasibilityResult separability;
};

/// Locality class of a map. `split` partitions the n_out + n_in modes of
/// Gamma (output modes first) between the two parties.
LocalityReport classify_map(const GaussianCPMap& map, const BipartiteSplit& split,
                            const FeasibilityOptions& options = {});

/// Separable map Gamma = Gamma_AA' + Gamma_BB' + P.
///
/// gamma_aa acts on party A's modes ordered (A outputs, A inputs), likewise
/// gamma_bb. `noise` is on the full map, ordered (A outputs, B outputs,
/// A inputs, B inputs).
struct SeparableMapDecomposition {
  std::size_t a_out = 0;
  std::size_t a_in = 0;
  std::size_t b_out = 0;
  std::size_t b_in = 0;
  Matrix gamma_aa;
  Matrix gamma_bb;
  Matrix noise;

  /// Throws unless the blocks are valid CMs of the right size and the noise
  /// is positive semidefinite.
  void validate(double tol = kDefaultTol) const;
  GaussianCPMap to_map() const;
};

SeparableMapDecomposition random_separable_map(std::size_t a_out, std::size_t a_in, std::size_t b_out,
                                               std::size_t b_in, double mixedness, double noise_scale,
                                               Rng& rng);

struct SeparableMapOutput {
  GaussianState state;
  /// Output parties: A holds the first a_out modes.
  BipartiteSplit split;
  bool used_pseudo_inverse = false;
};

/// Applies the separable map to a state whose party A modes are
/// `split.a_modes()` (in that order) and party B modes `split.b_modes()`.
SeparableMapOutput apply_separable_map(const SeparableMapDecomposition& dec, const GaussianState& s,
                                       const BipartiteSplit& split);

}  // namespace gausskit
