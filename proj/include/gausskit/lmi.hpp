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
#include <functional>
#include <vector>

#include "gausskit/symplectic.hpp"

namespace gausskit {

/// One linear matrix inequality F0 + sum_i x_i F_i >= 0 over Hermitian
/// matrices. `coeffs` is sparse in the variable index: only the variables
/// that enter this block are listed.
struct LmiBlock {
  CMatrix constant;
  std::vector<std::pair<std::size_t, CMatrix>> coeffs;
};

/// maximize objective^T x subject to every block being positive semidefinite.
struct LmiProblem {
  std::size_t num_vars = 0;
  Vector objective;
  std::vector<LmiBlock> blocks;

  std::vector<CMatrix> evaluate(const Vector& x) const;
  /// Total matrix dimension of all blocks (the barrier parameter).
  double barrier_degree() const;
};

struct LmiOptions {
  double initial_weight = 1.0;
  double weight_growth = 8.0;
  /// Stop once the duality gap bound drops below this value.
  double gap_tol = 1e-10;
  std::size_t max_newton_steps = 500;
  /// Called after every centering with (lower, upper) bounds on the optimum;
  /// returning true stops the solve early.
  std::function<bool(double, double)> decided;
  /// Optional upper bound on the optimum from the slack matrices at the
  /// current point (for instance a dual certificate). Replaces the
  /// central-path gap estimate, which loses accuracy at large weights.
  std::function<double(const std::vector<CMatrix>&)> upper_bound;
};

enum class LmiStatus { Converged, Decided, BudgetExhausted, Stalled };

struct LmiResult {
  LmiStatus status = LmiStatus::Stalled;
  Vector x;
  /// Objective at x, which is strictly feasible: a lower bound on the optimum.
  double lower = 0.0;
  /// Upper bound on the optimum.
  double upper = 0.0;
  std::size_t newton_steps = 0;
};

/// Log-det barrier path-following method. `x0` must be strictly feasible;
/// throws NumericalDomainError otherwise.
LmiResult solve_lmi(const LmiProblem& problem, const Vector& x0, const LmiOptions& options = {});

}  // namespace gausskit
