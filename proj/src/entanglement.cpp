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

#include "gausskit/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "gausskit/errors.hpp"
#include "gausskit/lmi.hpp"

namespace gausskit {

namespace {

using namespace std::complex_literals;
using cd = std::complex<double>;

/// Couplings below this fraction of the largest entry count as zero when
/// looking for block structure.
constexpr double kCouplingRelTol = 1e-14;

/// Basis of real symmetric k x k matrices, embedded at `idx` in a
/// dim x dim matrix.
std::vector<CMatrix> symmetric_basis(Eigen::Index k, const std::vector<Eigen::Index>& idx, Eigen::Index dim) {
  std::vector<CMatrix> basis;
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i; j < k; ++j) {
      CMatrix e = CMatrix::Zero(dim, dim);
      e(idx[i], idx[j]) = 1.0;
      e(idx[j], idx[i]) = 1.0;
      basis.push_back(std::move(e));
    }
  }
  return basis;
}

std::vector<Eigen::Index> iota(Eigen::Index k) {
  std::vector<Eigen::Index> v(k);
  for (Eigen::Index i = 0; i < k; ++i) v[i] = i;
  return v;
}

Matrix symmetric_from_coords(const Vector& x, Eigen::Index offset, Eigen::Index k) {
  Matrix m(k, k);
  Eigen::Index c = offset;
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i; j < k; ++j) m(i, j) = m(j, i) = x(c++);
  }
  return m;
}

/// Variable layout shared by the feasibility and V programs: X_A, X_B, then
/// one scalar.
struct LocalVariables {
  Eigen::Index ka, kb, dim;
  std::vector<Eigen::Index> qa, qb;
  std::size_t na, nb;

  LocalVariables(const Matrix& gamma, const BipartiteSplit& split)
      : ka(static_cast<Eigen::Index>(2 * split.a_modes().size())),
        kb(static_cast<Eigen::Index>(2 * split.b_modes().size())),
        dim(gamma.rows()),
        qa(quadrature_indices(split.a_modes())),
        qb(quadrature_indices(split.b_modes())),
        na(static_cast<std::size_t>(ka * (ka + 1) / 2)),
        nb(static_cast<std::size_t>(kb * (kb + 1) / 2)) {}

  std::size_t scalar() const { return na + nb; }
  std::size_t count() const { return na + nb + 1; }
};

double max_coupling(const Matrix& gamma, const BipartiteSplit& split) {
  const auto qa = quadrature_indices(split.a_modes());
  const auto qb = quadrature_indices(split.b_modes());
  return submatrix(gamma, qa, qb).cwiseAbs().maxCoeff();
}

bool is_product(const Matrix& gamma, const BipartiteSplit& split) {
  return max_coupling(gamma, split) <= kCouplingRelTol * gamma.cwiseAbs().maxCoeff();
}

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

/// Dual quantities of the separability programs for any Hermitian Y >= 0,
/// here the inverse joint slack. With R_k = Re(Y_kk), every valid X_k has
/// tr(R_k X_k) >= 2 sum nu(R_k), so q = 2 sum_k sum nu(R_k) bounds the
/// local terms and tr(Y gamma) >= p q for every feasible (p, X_A, X_B).
struct DualTerms {
  double y_gamma = 0.0;
  double q = 0.0;
  double trace_y = 0.0;
};

DualTerms dual_terms(const CMatrix& joint_slack, const Matrix& gamma, const LocalVariables& v) {
  const CMatrix inv = joint_slack.llt().solve(CMatrix::Identity(joint_slack.rows(), joint_slack.cols()));
  const Matrix y = symmetrized(inv.real());
  DualTerms d;
  d.y_gamma = (y.cwiseProduct(gamma)).sum();
  for (const auto* q : {&v.qa, &v.qb}) {
    for (double nu : symplectic_eigenvalues(submatrix(y, *q, *q))) d.q += 2.0 * nu;
  }
  d.trace_y = y.trace();
  return d;
}

VResult v_direct(const Matrix& gamma, const BipartiteSplit& split, const VOptions& options) {
  const LocalVariables v(gamma, split);
  const Eigen::Index dim = v.dim;
  LmiProblem problem;
  problem.num_vars = v.count();
  problem.objective = Vector::Zero(static_cast<Eigen::Index>(v.count()));
  problem.objective(static_cast<Eigen::Index>(v.scalar())) = 1.0;

  LmiBlock joint{gamma.cast<cd>(), {}};
  LmiBlock local_a{CMatrix::Zero(v.ka, v.ka), {}};
  LmiBlock local_b{CMatrix::Zero(v.kb, v.kb), {}};
  const auto basis_a = symmetric_basis(v.ka, v.qa, dim);
  const auto basis_a_local = symmetric_basis(v.ka, iota(v.ka), v.ka);
  for (std::size_t i = 0; i < v.na; ++i) {
    joint.coeffs.emplace_back(i, -basis_a[i]);
    local_a.coeffs.emplace_back(i, basis_a_local[i]);
  }
  const auto basis_b = symmetric_basis(v.kb, v.qb, dim);
  const auto basis_b_local = symmetric_basis(v.kb, iota(v.kb), v.kb);
  for (std::size_t i = 0; i < v.nb; ++i) {
    joint.coeffs.emplace_back(v.na + i, -basis_b[i]);
    local_b.coeffs.emplace_back(v.na + i, basis_b_local[i]);
  }
  local_a.coeffs.emplace_back(v.scalar(), -1i * symplectic_form(split.a_modes().size()).cast<cd>());
  local_b.coeffs.emplace_back(v.scalar(), -1i * symplectic_form(split.b_modes().size()).cast<cd>());
  LmiBlock cap{CMatrix::Ones(1, 1), {{v.scalar(), -CMatrix::Ones(1, 1)}}};
  problem.blocks = {joint, local_a, local_b, cap};

  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(gamma), Eigen::EigenvaluesOnly);
  const double eps = 0.5 * es.eigenvalues()(0);
  if (!(eps > 0.0)) throw NumericalDomainError("v_measure: CM is not positive definite");
  Vector x0 = Vector::Zero(static_cast<Eigen::Index>(v.count()));
  Eigen::Index c = 0;
  for (Eigen::Index i = 0; i < v.ka; ++i) {
    for (Eigen::Index j = i; j < v.ka; ++j, ++c) x0(c) = (i == j) ? eps : 0.0;
  }
  for (Eigen::Index i = 0; i < v.kb; ++i) {
    for (Eigen::Index j = i; j < v.kb; ++j, ++c) x0(c) = (i == j) ? eps : 0.0;
  }
  x0(static_cast<Eigen::Index>(v.scalar())) = std::min(0.5 * eps, 0.5);

  LmiOptions lo;
  lo.gap_tol = options.tol;
  lo.max_newton_steps = options.feasibility.max_iter;
  // p q <= tr(Y gamma) for every feasible p >= 0.
  lo.upper_bound = [&](const std::vector<CMatrix>& slacks) {
    const DualTerms d = dual_terms(slacks[0], gamma, v);
    return d.q > 0.0 ? std::min(1.0, d.y_gamma / d.q) : 1.0;
  };
  const LmiResult r = solve_lmi(problem, x0, lo);
  VResult out;
  out.method = "direct-sdp";
  out.oracle_calls = 1;
  out.lower = r.lower;
  out.upper = r.upper;
  out.value = r.lower;
  out.indeterminate = (r.status != LmiStatus::Converged) && (out.upper - out.lower > options.tol);
  return out;
}

VResult v_bisection(const Matrix& gamma, const BipartiteSplit& split, const VOptions& options) {
  FeasibilityOptions fo = options.feasibility;
  fo.tol = 0.0;
  fo.stagnation = std::min(fo.stagnation, options.tol);
  VResult out;
  out.method = "bisection";
  auto boundary_or_indeterminate = [&](const FeasibilityResult& f, double p, double lo, double hi) {
    // The oracle only fails to decide when the optimal margin is within its
    // resolution of zero, i.e. p sits on the boundary. Anything wider is a
    // genuine failure.
    out.value = p;
    out.lower = lo;
    out.upper = hi;
    out.indeterminate = (f.margin_upper - f.margin_lower) > 100.0 * fo.stagnation;
    if (!out.indeterminate) out.lower = out.upper = p;
    return out;
  };

  FeasibilityResult f = feasibility(gamma, split, 1.0, fo);
  ++out.oracle_calls;
  if (f.status == FeasibilityStatus::Feasible) {
    out.value = out.lower = out.upper = 1.0;
    return out;
  }
  if (f.status == FeasibilityStatus::Indeterminate) return boundary_or_indeterminate(f, 1.0, 0.0, 1.0);

  double lo = 0.0;
  double hi = 1.0;
  for (std::size_t k = 0; k < options.bisection_iterations && hi - lo > options.tol; ++k) {
    const double mid = 0.5 * (lo + hi);
    f = feasibility(gamma, split, mid, fo);
    ++out.oracle_calls;
    if (f.status == FeasibilityStatus::Feasible) {
      lo = mid;
    } else if (f.status == FeasibilityStatus::Infeasible) {
      hi = mid;
    } else {
      return boundary_or_indeterminate(f, mid, lo, hi);
    }
  }
  out.lower = lo;
  out.upper = hi;
  out.value = 0.5 * (lo + hi);
  return out;
}

}  // namespace

const char* to_string(FeasibilityStatus s) {
  switch (s) {
    case FeasibilityStatus::Feasible: return "feasible";
    case FeasibilityStatus::Infeasible: return "infeasible";
    case FeasibilityStatus::Indeterminate: return "indeterminate";
  }
  return "?";
}

const char* to_string(LocalityClass c) {
  switch (c) {
    case LocalityClass::SeparableLocc: return "Separable-LOCC";
    case LocalityClass::PptPreserving: return "PPT-preserving";
    case LocalityClass::Nonlocal: return "Nonlocal";
    case LocalityClass::PptUndecided: return "PPT-or-separable-undecided";
  }
  return "?";
}

double ppt_min_symplectic(const Matrix& gamma, const BipartiteSplit& split) {
  return symplectic_eigenvalues(partial_transpose(gamma, split)).front();
}

FeasibilityResult feasibility(const Matrix& gamma, const BipartiteSplit& split, double p,
                              const FeasibilityOptions& options) {
  const std::size_t n = mode_count(gamma);
  split.validate(n);
  if (!(p > 0.0 && p <= 1.0)) throw DataError("feasibility: p must lie in (0, 1]");
  const Matrix scaled = symmetrized(gamma) / p;
  const LocalVariables v(scaled, split);
  FeasibilityResult out;

  // Necessary condition: each reduced block of gamma/p dominates a valid CM.
  const Matrix red_a = submatrix(scaled, v.qa, v.qa);
  const Matrix red_b = submatrix(scaled, v.qb, v.qb);
  const double red_margin = std::min(check_cm(red_a, 0.0).min_eigenvalue, check_cm(red_b, 0.0).min_eigenvalue);
  if (red_margin < -options.tol) {
    out.status = FeasibilityStatus::Infeasible;
    out.margin_lower = out.margin_upper = red_margin;
    out.note = "reduced block of gamma/p is not a valid CM";
    return out;
  }
  if (is_product(scaled, split)) {
    out.status = FeasibilityStatus::Feasible;
    out.gamma_a = red_a;
    out.gamma_b = red_b;
    out.margin_lower = out.margin_upper = red_margin;
    out.note = "product CM; witness is its own reduced blocks";
    return out;
  }

  const Eigen::Index dim = v.dim;
  LmiProblem problem;
  problem.num_vars = v.count();
  problem.objective = Vector::Zero(static_cast<Eigen::Index>(v.count()));
  problem.objective(static_cast<Eigen::Index>(v.scalar())) = 1.0;
  LmiBlock joint{scaled.cast<cd>(), {}};
  LmiBlock local_a{-1i * symplectic_form(split.a_modes().size()).cast<cd>(), {}};
  LmiBlock local_b{-1i * symplectic_form(split.b_modes().size()).cast<cd>(), {}};
  const auto basis_a = symmetric_basis(v.ka, v.qa, dim);
  const auto basis_a_local = symmetric_basis(v.ka, iota(v.ka), v.ka);
  for (std::size_t i = 0; i < v.na; ++i) {
    joint.coeffs.emplace_back(i, -basis_a[i]);
    local_a.coeffs.emplace_back(i, basis_a_local[i]);
  }
  const auto basis_b = symmetric_basis(v.kb, v.qb, dim);
  const auto basis_b_local = symmetric_basis(v.kb, iota(v.kb), v.kb);
  for (std::size_t i = 0; i < v.nb; ++i) {
    joint.coeffs.emplace_back(v.na + i, -basis_b[i]);
    local_b.coeffs.emplace_back(v.na + i, basis_b_local[i]);
  }
  joint.coeffs.emplace_back(v.scalar(), -CMatrix::Identity(dim, dim));
  local_a.coeffs.emplace_back(v.scalar(), -CMatrix::Identity(v.ka, v.ka));
  local_b.coeffs.emplace_back(v.scalar(), -CMatrix::Identity(v.kb, v.kb));
  problem.blocks = {joint, local_a, local_b};

  Vector x0 = Vector::Zero(static_cast<Eigen::Index>(v.count()));
  x0(static_cast<Eigen::Index>(v.scalar())) = -2.0;

  LmiOptions lo;
  lo.gap_tol = options.stagnation;
  lo.max_newton_steps = options.max_iter;
  const double tol = options.tol;
  lo.decided = [tol](double lower, double upper) { return lower >= -tol || upper < -tol; };
  // 2 t tr(Y) <= tr(Y gamma / p) - q for every feasible t.
  lo.upper_bound = [&](const std::vector<CMatrix>& slacks) {
    const DualTerms d = dual_terms(slacks[0], scaled, v);
    return (d.y_gamma - d.q) / (2.0 * d.trace_y);
  };
  const LmiResult r = solve_lmi(problem, x0, lo);

  out.margin_lower = r.lower;
  out.margin_upper = r.upper;
  out.iterations = r.newton_steps;
  out.gamma_a = symmetric_from_coords(r.x, 0, v.ka);
  out.gamma_b = symmetric_from_coords(r.x, static_cast<Eigen::Index>(v.na), v.kb);
  if (r.lower >= -tol) {
    out.status = FeasibilityStatus::Feasible;
  } else if (r.upper < -tol) {
    out.status = FeasibilityStatus::Infeasible;
    out.note = "dual certificate bounds the margin below zero";
  } else {
    out.status = FeasibilityStatus::Indeterminate;
    out.note = r.status == LmiStatus::BudgetExhausted ? "iteration budget exhausted"
                                                      : "margin within solver resolution of zero";
  }
  return out;
}

double v_closed_form(const Matrix& gamma, const BipartiteSplit& split) {
  split.validate(mode_count(gamma));
  if (split.a_modes().size() != 1 && split.b_modes().size() != 1) {
    throw PartitionError("v_closed_form: needs a 1xN split");
  }
  return std::min(ppt_min_symplectic(gamma, split), 1.0);
}

std::vector<std::vector<std::size_t>> coupled_components(const Matrix& gamma) {
  const std::size_t n = mode_count(gamma);
  const double cutoff = kCouplingRelTol * gamma.cwiseAbs().maxCoeff();
  std::vector<std::size_t> parent(n);
  for (std::size_t k = 0; k < n; ++k) parent[k] = k;
  auto find = [&](std::size_t k) {
    while (parent[k] != k) k = parent[k] = parent[parent[k]];
    return k;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double c = gamma.block(2 * i, 2 * j, 2, 2).cwiseAbs().maxCoeff();
      if (c > cutoff) parent[find(i)] = find(j);
    }
  }
  std::vector<std::vector<std::size_t>> groups;
  std::vector<long> slot(n, -1);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t root = find(k);
    if (slot[root] < 0) {
      slot[root] = static_cast<long>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[root])].push_back(k);
  }
  return groups;
}

VResult v_measure(const Matrix& gamma, const BipartiteSplit& split, const VOptions& options) {
  split.validate(mode_count(gamma));
  if (!gamma.allFinite()) throw DataError("v_measure: non-finite entries");
  if (options.method == VMethod::Bisection) return v_bisection(gamma, split, options);
  if (options.method == VMethod::Direct) return v_direct(gamma, split, options);

  VResult out;
  out.method = "product";
  std::vector<std::string> methods;
  for (const auto& group : coupled_components(gamma)) {
    std::vector<std::size_t> a, b;
    for (std::size_t k = 0; k < group.size(); ++k) {
      (split.in_a(group[k]) ? a : b).push_back(k);
    }
    if (a.empty() || b.empty()) continue;
    const auto q = quadrature_indices(group);
    const Matrix sub = submatrix(gamma, q, q);
    const BipartiteSplit sub_split(a, b);
    VResult part;
    if (a.size() == 1 || b.size() == 1) {
      part.value = part.lower = part.upper = v_closed_form(sub, sub_split);
      part.method = "closed-form";
    } else {
      part = v_direct(sub, sub_split, options);
    }
    out.oracle_calls += part.oracle_calls;
    out.indeterminate = out.indeterminate || part.indeterminate;
    out.value = std::min(out.value, part.value);
    out.lower = std::min(out.lower, part.lower);
    out.upper = std::min(out.upper, part.upper);
    if (std::find(methods.begin(), methods.end(), part.method) == methods.end()) methods.push_back(part.method);
  }
  if (!methods.empty()) {
    out.method = methods.front();
    for (std::size_t k = 1; k < methods.size(); ++k) out.method += "+" + methods[k];
  }
  return out;
}

LocalityReport classify_map(const GaussianCPMap& map, const BipartiteSplit& split,
                            const FeasibilityOptions& options) {
  const Matrix& gamma = map.gamma();
  const std::size_t n = mode_count(gamma);
  split.validate(n);
  LocalityReport report;
  const Matrix pt = symmetrized(partial_transpose(gamma, split));
  const CMatrix h = pt.cast<cd>() + 1i * symplectic_form(n).cast<cd>();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  report.ppt_margin = es.eigenvalues()(0);
  report.violating_vector = es.eigenvectors().col(0);
  if (report.ppt_margin < -options.tol) {
    report.cls = LocalityClass::Nonlocal;
    return report;
  }
  report.separability = feasibility(gamma, split, 1.0, options);
  switch (report.separability.status) {
    case FeasibilityStatus::Feasible: report.cls = LocalityClass::SeparableLocc; break;
    case FeasibilityStatus::Infeasible: report.cls = LocalityClass::PptPreserving; break;
    case FeasibilityStatus::Indeterminate: report.cls = LocalityClass::PptUndecided; break;
  }
  return report;
}

void SeparableMapDecomposition::validate(double tol) const {
  if (a_out == 0 || a_in == 0 || b_out == 0 || b_in == 0) {
    throw DimensionError("SeparableMapDecomposition: every party needs input and output modes");
  }
  if (gamma_aa.rows() != static_cast<Eigen::Index>(2 * (a_out + a_in)) || gamma_aa.cols() != gamma_aa.rows() ||
      gamma_bb.rows() != static_cast<Eigen::Index>(2 * (b_out + b_in)) || gamma_bb.cols() != gamma_bb.rows()) {
    throw DimensionError("SeparableMapDecomposition: local block sizes do not match mode counts");
  }
  const Eigen::Index full = static_cast<Eigen::Index>(2 * (a_out + a_in + b_out + b_in));
  if (noise.rows() != full || noise.cols() != full) {
    throw DimensionError("SeparableMapDecomposition: noise matrix has the wrong size");
  }
  if (!is_valid_cm(gamma_aa, tol) || !is_valid_cm(gamma_bb, tol)) {
    throw DataError("SeparableMapDecomposition: local blocks must be valid CMs");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(noise), Eigen::EigenvaluesOnly);
  if (es.eigenvalues()(0) < -tol) throw DataError("SeparableMapDecomposition: noise is not PSD");
}

GaussianCPMap SeparableMapDecomposition::to_map() const {
  const std::size_t n_out = a_out + b_out;
  const std::size_t n_in = a_in + b_in;
  std::vector<std::size_t> a_pos, b_pos;
  for (std::size_t k = 0; k < a_out; ++k) a_pos.push_back(k);
  for (std::size_t k = 0; k < a_in; ++k) a_pos.push_back(n_out + k);
  for (std::size_t k = 0; k < b_out; ++k) b_pos.push_back(a_out + k);
  for (std::size_t k = 0; k < b_in; ++k) b_pos.push_back(n_out + a_in + k);
  const auto qa = quadrature_indices(a_pos);
  const auto qb = quadrature_indices(b_pos);
  Matrix gamma = noise;
  for (std::size_t i = 0; i < qa.size(); ++i) {
    for (std::size_t j = 0; j < qa.size(); ++j) gamma(qa[i], qa[j]) += gamma_aa(i, j);
  }
  for (std::size_t i = 0; i < qb.size(); ++i) {
    for (std::size_t j = 0; j < qb.size(); ++j) gamma(qb[i], qb[j]) += gamma_bb(i, j);
  }
  return GaussianCPMap(n_out, n_in, symmetrized(gamma));
}

SeparableMapDecomposition random_separable_map(std::size_t a_out, std::size_t a_in, std::size_t b_out,
                                               std::size_t b_in, double mixedness, double noise_scale,
                                               Rng& rng) {
  SeparableMapDecomposition dec;
  dec.a_out = a_out;
  dec.a_in = a_in;
  dec.b_out = b_out;
  dec.b_in = b_in;
  dec.gamma_aa = random_cm(a_out + a_in, mixedness, rng);
  dec.gamma_bb = random_cm(b_out + b_in, mixedness, rng);
  const Eigen::Index full = static_cast<Eigen::Index>(2 * (a_out + a_in + b_out + b_in));
  Matrix q(full, full);
  for (Eigen::Index i = 0; i < full; ++i) {
    for (Eigen::Index j = 0; j < full; ++j) q(i, j) = rng.normal();
  }
  const double scale = noise_scale * rng.uniform() / std::sqrt(static_cast<double>(full));
  q *= scale;
  dec.noise = symmetrized(q.transpose() * q);
  return dec;
}

SeparableMapOutput apply_separable_map(const SeparableMapDecomposition& dec, const GaussianState& s,
                                       const BipartiteSplit& split) {
  dec.validate();
  split.validate(s.modes());
  if (split.a_modes().size() != dec.a_in || split.b_modes().size() != dec.b_in) {
    throw DimensionError("apply_separable_map: split does not match the map's input modes");
  }
  std::vector<std::size_t> order = split.a_modes();
  order.insert(order.end(), split.b_modes().begin(), split.b_modes().end());
  const MapOutput out = apply(dec.to_map(), permute_modes(s, order));
  std::vector<std::size_t> a_out;
  for (std::size_t k = 0; k < dec.a_out; ++k) a_out.push_back(k);
  return {out.state, BipartiteSplit::from_a_modes(a_out, dec.a_out + dec.b_out), out.used_pseudo_inverse};
}

}  // namespace gausskit
