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

#include "gausskit/symplectic.hpp"

namespace gausskit {

/// Gaussian state given by its correlation matrix and displacement.
///
/// The constructor checks shapes and finiteness only; quantum validity of
/// the correlation matrix is a separate question (`is_valid`), since parsed
/// documents and intermediate results may legitimately violate it.
class GaussianState {
 public:
  GaussianState(Matrix cm, Vector disp);
  explicit GaussianState(Matrix cm);

  std::size_t modes() const { return static_cast<std::size_t>(cm_.rows() / 2); }
  const Matrix& cm() const { return cm_; }
  const Vector& disp() const { return disp_; }

  bool is_valid(double tol = kDefaultTol) const { return is_valid_cm(cm_, tol); }

 private:
  Matrix cm_;
  Vector disp_;
};

GaussianState vacuum(std::size_t n);

/// Coherent state |alpha>: identity CM, displacement (Re alpha, Im alpha).
GaussianState coherent(double alpha_re, double alpha_im);

/// Single-mode thermal state nu * I.
GaussianState thermal(double nu);

/// `pairs` two-mode squeezed pairs with squeezing r >= 0.
///
/// Modes are grouped by party: A_1..A_pairs first, then B_1..B_pairs, so the
/// CM is [[cosh r I, sinh r Lambda], [sinh r Lambda, cosh r I]]. Use
/// `interleave_pairs` for the (A_1, B_1, A_2, B_2, ...) layout.
GaussianState two_mode_squeezed(double r, std::size_t pairs = 1);

GaussianState tensor(const GaussianState& s1, const GaussianState& s2);

/// Reduction to the modes in `keep`, in the given order.
GaussianState partial_trace(const GaussianState& s, const std::vector<std::size_t>& keep);

GaussianState displace(const GaussianState& s, const Vector& x);

/// Reorders modes so that new mode k is old mode order[k]. `order` must be a
/// permutation.
GaussianState permute_modes(const GaussianState& s, const std::vector<std::size_t>& order);

/// Party-grouped (A_1..A_p, B_1..B_p) to pair-interleaved (A_1, B_1, ...).
GaussianState interleave_pairs(const GaussianState& s, std::size_t pairs);

}  // namespace gausskit
