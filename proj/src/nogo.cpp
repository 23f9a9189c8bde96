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

#include "gausskit/nogo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "gausskit/errors.hpp"

namespace gausskit {

namespace {

Matrix random_psd(Eigen::Index dim, double scale, Rng& rng) {
  Matrix q(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) q(i, j) = rng.normal();
  }
  const Matrix p = (scale * scale / static_cast<double>(dim)) * q.transpose() * q;
  return 0.5 * (p + p.transpose());
}

Matrix local_symplectic(std::size_t a, std::size_t b, Rng& rng) {
  return direct_sum(random_symplectic(a, rng), random_symplectic(b, rng));
}

/// Local symplectic channels through their finite-squeezing isomorphic CM,
/// plus weak correlated noise. These maps change V very little.
SeparableMapDecomposition near_unitary_map(std::size_t a, std::size_t b, Rng& rng) {
  SeparableMapDecomposition dec;
  dec.a_out = dec.a_in = a;
  dec.b_out = dec.b_in = b;
  const double r = rng.uniform(2.0, 4.0);
  dec.gamma_aa = channel_to_choi(ChannelForm(random_symplectic(a, rng), Matrix::Zero(2 * a, 2 * a)), r).gamma();
  dec.gamma_bb = channel_to_choi(ChannelForm(random_symplectic(b, rng), Matrix::Zero(2 * b, 2 * b)), r).gamma();
  dec.noise = random_psd(static_cast<Eigen::Index>(4 * (a + b)), 1e-3 * rng.uniform(), rng);
  return dec;
}

std::vector<HistogramBin> empty_histogram(double tol) {
  const double inf = std::numeric_limits<double>::infinity();
  return {
      {"violation (< -tol)", -inf, -tol},
      {"[-tol, 1e-12)", -tol, 1e-12},
      {"[1e-12, 1e-6)", 1e-12, 1e-6},
      {"[1e-6, 1e-3)", 1e-6, 1e-3},
      {"[1e-3, 1e-2)", 1e-3, 1e-2},
      {"[1e-2, 1e-1)", 1e-2, 1e-1},
      {"[1e-1, inf)", 1e-1, inf},
  };
}

}  // namespace

GaussianState random_entangled_pair(double mixedness, Rng& rng) {
  const BipartiteSplit split({0}, {1});
  for (int attempt = 0; attempt < 100; ++attempt) {
    const double r = rng.uniform(0.05, 1.5);
    const double noise = rng.uniform(0.0, std::max(0.0, mixedness - 1.0)) * 0.5;
    Matrix cm = two_mode_squeezed(r).cm() + random_psd(4, std::sqrt(noise), rng);
    const Matrix s = local_symplectic(1, 1, rng);
    cm = s.transpose() * cm * s;
    cm = 0.5 * (cm + cm.transpose());
    if (ppt_min_symplectic(cm, split) < 1.0 - 1e-6) return GaussianState(cm);
  }
  throw NumericalDomainError("random_entangled_pair: could not sample an entangled state");
}

GaussianState random_entangled_state(std::size_t a, std::size_t b, double mixedness, Rng& rng) {
  if (a == 0 || b == 0) throw DimensionError("random_entangled_state: both parties need modes");
  const std::size_t pairs = std::min(a, b);
  std::vector<std::size_t> a_modes, b_modes;
  for (std::size_t k = 0; k < a; ++k) a_modes.push_back(k);
  for (std::size_t k = 0; k < b; ++k) b_modes.push_back(a + k);
  const BipartiteSplit split(a_modes, b_modes);
  for (int attempt = 0; attempt < 100; ++attempt) {
    // Party-grouped squeezed pairs, padded with vacuum on the larger side.
    const GaussianState tms = two_mode_squeezed(rng.uniform(0.05, 1.5), pairs);
    Matrix cm = Matrix::Identity(2 * (a + b), 2 * (a + b));
    std::vector<std::size_t> place;
    for (std::size_t k = 0; k < pairs; ++k) place.push_back(k);
    for (std::size_t k = 0; k < pairs; ++k) place.push_back(a + k);
    const auto q = quadrature_indices(place);
    for (std::size_t i = 0; i < q.size(); ++i) {
      for (std::size_t j = 0; j < q.size(); ++j) cm(q[i], q[j]) = tms.cm()(i, j);
    }
    const double noise = rng.uniform(0.0, std::max(0.0, mixedness - 1.0)) * 0.5;
    cm += random_psd(cm.rows(), std::sqrt(noise), rng);
    const Matrix s = local_symplectic(a, b, rng);
    cm = s.transpose() * cm * s;
    cm = 0.5 * (cm + cm.transpose());
    if (ppt_min_symplectic(cm, split) < 1.0 - 1e-6) return GaussianState(cm);
  }
  throw NumericalDomainError("random_entangled_state: could not sample an entangled state");
}

NogoTrial run_nogo_trial(const NogoConfig& config, std::size_t index) {
  Rng rng(mix_seed(config.seed, index));
  NogoTrial trial;
  trial.index = index;
  trial.in_a = config.modes_a;
  trial.in_b = config.modes_b;

  const bool copies = config.modes_a == config.modes_b && config.modes_a % 2 == 0 && index % 2 == 0;
  GaussianState input = vacuum(1);
  BipartiteSplit split;
  if (copies) {
    // k copies of one pair state; copy j occupies modes (2j, 2j+1).
    const std::size_t k = config.modes_a;
    const GaussianState pair = random_entangled_pair(config.mixedness, rng);
    input = pair;
    for (std::size_t j = 1; j < k; ++j) input = tensor(input, pair);
    std::vector<std::size_t> a, b;
    for (std::size_t j = 0; j < k; ++j) {
      a.push_back(2 * j);
      b.push_back(2 * j + 1);
    }
    split = BipartiteSplit(a, b);
    trial.input_kind = std::to_string(k) + "-copy";
  } else if (config.modes_a == 1 && config.modes_b == 1) {
    input = random_entangled_pair(config.mixedness, rng);
    split = BipartiteSplit({0}, {1});
    trial.input_kind = "pair";
  } else {
    input = random_entangled_state(config.modes_a, config.modes_b, config.mixedness, rng);
    split = BipartiteSplit::from_a_modes([&] {
      std::vector<std::size_t> a;
      for (std::size_t k = 0; k < config.modes_a; ++k) a.push_back(k);
      return a;
    }(), config.modes_a + config.modes_b);
    trial.input_kind = "general";
  }

  SeparableMapDecomposition dec;
  if (index % 4 == 1) {
    dec = near_unitary_map(config.modes_a, config.modes_b, rng);
    trial.map_kind = "near-unitary";
  } else {
    const std::size_t out_a = 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(config.modes_a));
    const std::size_t out_b = 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(config.modes_b));
    dec = random_separable_map(std::min(out_a, config.modes_a), config.modes_a, std::min(out_b, config.modes_b),
                               config.modes_b, config.mixedness, config.noise_scale, rng);
    trial.map_kind = "random";
  }
  trial.out_a = dec.a_out;
  trial.out_b = dec.b_out;

  const VResult before = v_measure(input.cm(), split, config.v);
  const SeparableMapOutput out = apply_separable_map(dec, input, split);
  const VResult after = v_measure(out.state.cm(), out.split, config.v);
  trial.v_before = before.value;
  trial.v_after = after.value;
  trial.margin = after.value - before.value;
  trial.indeterminate = before.indeterminate || after.indeterminate;
  trial.method_before = before.method;
  trial.method_after = after.method;
  return trial;
}

NogoReport nogo_montecarlo(const NogoConfig& config) {
  if (config.trials == 0) throw DataError("nogo_montecarlo: trials must be >= 1");
  NogoReport report;
  report.config = config;
  report.trials.resize(config.trials);

  std::size_t threads = config.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, config.trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < config.trials && !failed;) {
      try {
        report.trials[k] = run_nogo_trial(config, k);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  report.histogram = empty_histogram(config.tol);
  report.min_margin = std::numeric_limits<double>::infinity();
  for (const NogoTrial& t : report.trials) {
    if (t.indeterminate) {
      ++report.indeterminate;
      continue;
    }
    report.min_margin = std::min(report.min_margin, t.margin);
    if (t.margin < -config.tol) ++report.violations;
    for (auto& bin : report.histogram) {
      if (t.margin >= bin.lo && t.margin < bin.hi) {
        ++bin.count;
        break;
      }
    }
  }
  report.pass = report.violations == 0 && report.indeterminate < report.trials.size();
  return report;
}

}  // namespace gausskit
