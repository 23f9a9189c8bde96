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

#include "gausskit/lmi.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "gausskit/errors.hpp"

namespace gausskit {

namespace {

struct BarrierEval {
  double value = 0.0;
  Vector gradient;
  Matrix hessian;
};

/// Cholesky factor of every block, or nothing if some block is not positive
/// definite.
std::optional<std::vector<Eigen::LLT<CMatrix>>> factor_blocks(const LmiProblem& p, const Vector& x) {
  std::vector<Eigen::LLT<CMatrix>> out;
  out.reserve(p.blocks.size());
  for (const CMatrix& s : p.evaluate(x)) {
    out.emplace_back(s);
    if (out.back().info() != Eigen::Success) return std::nullopt;
    const auto& l = out.back().matrixLLT();
    for (Eigen::Index k = 0; k < l.rows(); ++k) {
      if (!(std::real(l(k, k)) > 0.0) || !std::isfinite(std::real(l(k, k)))) return std::nullopt;
    }
  }
  return out;
}

double log_det(const Eigen::LLT<CMatrix>& llt) {
  double sum = 0.0;
  const auto& l = llt.matrixLLT();
  for (Eigen::Index k = 0; k < l.rows(); ++k) sum += std::log(std::real(l(k, k)));
  return 2.0 * sum;
}

BarrierEval barrier_eval(const LmiProblem& p, const std::vector<Eigen::LLT<CMatrix>>& factors,
                         const Vector& x, double weight) {
  const Eigen::Index nv = static_cast<Eigen::Index>(p.num_vars);
  BarrierEval e;
  e.gradient = -weight * p.objective;
  e.hessian = Matrix::Zero(nv, nv);
  e.value = -weight * p.objective.dot(x);
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    const auto& block = p.blocks[b];
    const auto& llt = factors[b];
    e.value -= log_det(llt);
    std::vector<CMatrix> w;
    w.reserve(block.coeffs.size());
    for (const auto& [var, f] : block.coeffs) {
      w.push_back(llt.solve(f));
      e.gradient(static_cast<Eigen::Index>(var)) -= std::real(w.back().trace());
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
      const Eigen::Index vi = static_cast<Eigen::Index>(block.coeffs[i].first);
      for (std::size_t j = 0; j <= i; ++j) {
        const Eigen::Index vj = static_cast<Eigen::Index>(block.coeffs[j].first);
        const double h = std::real((w[i].array() * w[j].transpose().array()).sum());
        e.hessian(vi, vj) += h;
        if (i != j) e.hessian(vj, vi) += h;
      }
    }
  }
  return e;
}

}  // namespace

std::vector<CMatrix> LmiProblem::evaluate(const Vector& x) const {
  std::vector<CMatrix> out;
  out.reserve(blocks.size());
  for (const auto& block : blocks) {
    CMatrix s = block.constant;
    for (const auto& [var, f] : block.coeffs) s += x(static_cast<Eigen::Index>(var)) * f;
    out.push_back(std::move(s));
  }
  return out;
}

double LmiProblem::barrier_degree() const {
  double m = 0.0;
  for (const auto& block : blocks) m += static_cast<double>(block.constant.rows());
  return m;
}

LmiResult solve_lmi(const LmiProblem& problem, const Vector& x0, const LmiOptions& options) {
  if (x0.size() != static_cast<Eigen::Index>(problem.num_vars) ||
      problem.objective.size() != x0.size()) {
    throw DimensionError("solve_lmi: variable count mismatch");
  }
  if (!factor_blocks(problem, x0)) throw NumericalDomainError("solve_lmi: start point is not strictly feasible");

  const double degree = problem.barrier_degree();
  LmiResult result;
  result.x = x0;
  result.upper = std::numeric_limits<double>::infinity();
  double weight = options.initial_weight;
  constexpr double kCenteringTol = 1e-14;

  while (true) {
    // Centering by damped Newton. The log-det barrier is self-concordant, so
    // the step 1 / (1 + lambda) decreases it and stays inside the domain
    // without comparing function values, which lose all precision at large
    // weights.
    double decrement = std::numeric_limits<double>::infinity();
    double best_decrement = decrement;
    int stagnant = 0;
    bool stalled = false;
    while (result.newton_steps < options.max_newton_steps) {
      const auto factors = factor_blocks(problem, result.x);
      const BarrierEval e = barrier_eval(problem, *factors, result.x, weight);
      Eigen::LDLT<Matrix> ldlt(e.hessian);
      Vector step = ldlt.solve(-e.gradient);
      if (!step.allFinite()) {
        stalled = true;
        break;
      }
      decrement = std::max(-e.gradient.dot(step), 0.0);
      ++result.newton_steps;
      if (decrement < kCenteringTol) break;
      // Rounding puts a floor under the decrement; stop once it no longer
      // improves.
      if (decrement < 0.5 * best_decrement) {
        best_decrement = decrement;
        stagnant = 0;
      } else if (decrement < 1e-6 && ++stagnant >= 3) {
        break;
      }
      const double lambda = std::sqrt(decrement);
      double alpha = lambda > 0.25 ? 1.0 / (1.0 + lambda) : 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls) {
        const Vector trial = result.x + alpha * step;
        if (factor_blocks(problem, trial)) {
          result.x = trial;
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!moved) {
        stalled = true;
        break;
      }
    }
    result.lower = problem.objective.dot(result.x);
    // Duality gap of an approximately centered point: with Newton decrement
    // lambda < 1, weight * gap <= m + (lambda + sqrt(m)) lambda / (1 - lambda).
    const double lambda = std::sqrt(decrement);
    const double gap = lambda < 1.0
                           ? (degree + (lambda + std::sqrt(degree)) * lambda / (1.0 - lambda)) / weight
                           : std::numeric_limits<double>::infinity();
    if (options.upper_bound) {
      // Every certificate is valid; keep the best one seen.
      result.upper = std::min(result.upper, options.upper_bound(problem.evaluate(result.x)));
    } else {
      result.upper = result.lower + gap;
    }

    if (options.decided && options.decided(result.lower, result.upper)) {
      result.status = LmiStatus::Decided;
      return result;
    }
    if (result.upper - result.lower < options.gap_tol) {
      result.status = LmiStatus::Converged;
      return result;
    }
    if (stalled) {
      result.status = LmiStatus::Stalled;
      return result;
    }
    if (result.newton_steps >= options.max_newton_steps) {
      result.status = LmiStatus::BudgetExhausted;
      return result;
    }
    // Beyond this the Hessian is too ill-conditioned for further progress.
    if (weight > 1e13) {
      result.status = LmiStatus::Stalled;
      return result;
    }
    weight *= options.weight_growth;
  }
}

}  // namespace gausskit
