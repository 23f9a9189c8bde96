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
#include <cstdint>
#include <string>
#include <vector>

#include "gausskit/entanglement.hpp"

namespace gausskit {

/// Monte-Carlo check that random separable Gaussian maps never decrease V.
struct NogoConfig {
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  /// Input modes per party. With 2 x 2 (or any even equal split) half of
  /// the trials use two copies of a 1 x 1 state.
  std::size_t modes_a = 1;
  std::size_t modes_b = 1;
  /// Upper bound on the symplectic eigenvalues of the random local maps.
  double mixedness = 2.0;
  double noise_scale = 1.0;
  /// Worker threads; 0 picks the hardware concurrency.
  std::size_t threads = 0;
  /// A trial violates the monotonicity claim when V_after - V_before < -tol.
  double tol = 1e-8;
  VOptions v;
};

struct NogoTrial {
  std::size_t index = 0;
  std::string input_kind;
  /// "random" (noisy local maps) or "near-unitary" (every fourth trial).
  std::string map_kind;
  std::size_t in_a = 0, in_b = 0, out_a = 0, out_b = 0;
  double v_before = 0.0;
  double v_after = 0.0;
  double margin = 0.0;
  bool indeterminate = false;
  std::string method_before;
  std::string method_after;
};

struct HistogramBin {
  std::string label;
  double lo;
  double hi;
  std::size_t count = 0;
};

struct NogoReport {
  NogoConfig config;
  std::vector<NogoTrial> trials;
  /// Minimum margin over determinate trials.
  double min_margin = 0.0;
  std::size_t violations = 0;
  std::size_t indeterminate = 0;
  std::vector<HistogramBin> histogram;
  bool pass = false;
};

/// Random entangled 1 x 1 input: a two-mode squeezed state with added noise
/// and local symplectic transformations, resampled until it is NPT.
GaussianState random_entangled_pair(double mixedness, Rng& rng);

/// Random entangled input with `a` modes on A (modes 0..a-1) and `b` on B.
GaussianState random_entangled_state(std::size_t a, std::size_t b, double mixedness, Rng& rng);

/// Runs one trial; depends only on (config, index).
NogoTrial run_nogo_trial(const NogoConfig& config, std::size_t index);

NogoReport nogo_montecarlo(const NogoConfig& config);

}  // namespace gausskit
