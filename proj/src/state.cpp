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

#include "gausskit/state.hpp"

#include <cmath>
#include <string>

#include "gausskit/errors.hpp"

namespace gausskit {

GaussianState::GaussianState(Matrix cm, Vector disp) : cm_(std::move(cm)), disp_(std::move(disp)) {
  mode_count(cm_);
  if (cm_.rows() == 0) throw DimensionError("GaussianState: at least one mode required");
  if (disp_.size() != cm_.rows()) {
    throw DimensionError("GaussianState: displacement has length " + std::to_string(disp_.size()) +
                         ", expected " + std::to_string(cm_.rows()));
  }
  if (!cm_.allFinite() || !disp_.allFinite()) throw DataError("GaussianState: non-finite entries");
}

GaussianState::GaussianState(Matrix cm) : GaussianState(cm, Vector::Zero(cm.rows())) {}

GaussianState vacuum(std::size_t n) {
  if (n == 0) throw DimensionError("vacuum: mode count must be positive");
  return GaussianState(Matrix::Identity(2 * n, 2 * n));
}

GaussianState coherent(double alpha_re, double alpha_im) {
  return GaussianState(Matrix::Identity(2, 2), Eigen::Vector2d(alpha_re, alpha_im));
}

GaussianState thermal(double nu) { return GaussianState(nu * Matrix::Identity(2, 2)); }

GaussianState two_mode_squeezed(double r, std::size_t pairs) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw DataError("two_mode_squeezed: r must be finite and >= 0");
  if (pairs == 0) throw DimensionError("two_mode_squeezed: need at least one pair");
  const Eigen::Index half = static_cast<Eigen::Index>(2 * pairs);
  Matrix cm(2 * half, 2 * half);
  const Matrix a = std::cosh(r) * Matrix::Identity(half, half);
  const Matrix c = std::sinh(r) * lambda_matrix(pairs);
  cm << a, c, c, a;
  return GaussianState(cm);
}

GaussianState tensor(const GaussianState& s1, const GaussianState& s2) {
  Vector d(s1.disp().size() + s2.disp().size());
  d << s1.disp(), s2.disp();
  return GaussianState(direct_sum(s1.cm(), s2.cm()), d);
}

GaussianState partial_trace(const GaussianState& s, const std::vector<std::size_t>& keep) {
  if (keep.empty()) throw DimensionError("partial_trace: keep list is empty");
  std::vector<int> seen(s.modes(), 0);
  for (std::size_t m : keep) {
    if (m >= s.modes()) {
      throw DimensionError("partial_trace: mode " + std::to_string(m) + " out of range");
    }
    if (seen[m]++ != 0) throw DimensionError("partial_trace: mode " + std::to_string(m) + " repeated");
  }
  const auto idx = quadrature_indices(keep);
  Vector d(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) d(i) = s.disp()(idx[i]);
  return GaussianState(submatrix(s.cm(), idx, idx), d);
}

GaussianState displace(const GaussianState& s, const Vector& x) {
  if (x.size() != s.disp().size()) throw DimensionError("displace: length mismatch");
  return GaussianState(s.cm(), s.disp() + x);
}

GaussianState permute_modes(const GaussianState& s, const std::vector<std::size_t>& order) {
  if (order.size() != s.modes()) throw DimensionError("permute_modes: order is not a permutation");
  return partial_trace(s, order);
}

GaussianState interleave_pairs(const GaussianState& s, std::size_t pairs) {
  if (s.modes() != 2 * pairs) throw DimensionError("interleave_pairs: expected 2*pairs modes");
  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < pairs; ++k) {
    order.push_back(k);
    order.push_back(pairs + k);
  }
  return permute_modes(s, order);
}

}  // namespace gausskit
