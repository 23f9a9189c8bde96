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

namespace gausskit {

/// Partition of mode indices into the two parties A and B.
///
/// Indices are zero-based mode numbers (not quadrature numbers). The order
/// inside each list is preserved wherever a party's modes are extracted.
class BipartiteSplit {
 public:
  BipartiteSplit() = default;
  BipartiteSplit(std::vector<std::size_t> a_modes,
                 std::vector<std::size_t> b_modes);

  /// Party A gets `a_modes`, party B every remaining mode in ascending order.
  static BipartiteSplit from_a_modes(std::vector<std::size_t> a_modes,
                                     std::size_t total_modes);

  const std::vector<std::size_t>& a_modes() const { return a_; }
  const std::vector<std::size_t>& b_modes() const { return b_; }
  std::size_t total_modes() const { return a_.size() + b_.size(); }

  /// Throws PartitionError unless the lists are disjoint, non-empty and
  /// cover exactly the modes 0..n-1.
  void validate(std::size_t n) const;

  bool in_a(std::size_t mode) const;

 private:
  std::vector<std::size_t> a_;
  std::vector<std::size_t> b_;
};

}  // namespace gausskit
