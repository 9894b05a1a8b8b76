// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MCOSS_SUBMODULAR_HPP_
#define MCOSS_SUBMODULAR_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "mcoss/instance.hpp"

namespace mcoss {

// Set objective over candidate subsets S of the new frames:
//   f(S) = sum_i min( min_{j in old} Q_old[i][j], min_{j in S} Q_new[i][j] )
// Empty inner minima are +inf; if both the old set and S are empty the
// value is undefined and eval_f throws.
double eval_f(std::span<const Index> selected, const QMatrices& q);

// Incremental state for greedy rounds: selected set plus per-row minima,
// so a marginal evaluation is O(m) instead of O(m * |S|).
class SubsetState {
 public:
  static SubsetState initial(const QMatrices& q);

  void insert(Index x, const QMatrices& q);

  const std::vector<Index>& selected() const { return selected_; }
  const Vector& cached_row_min() const { return cached_row_min_; }

  // f(selected); throws when undefined (no old set and nothing selected).
  double f_value() const;
  // f(selected + {x}) without mutating.
  double f_with(Index x, const QMatrices& q) const;

 private:
  std::vector<Index> selected_;
  Vector cached_row_min_;
  bool defined_ = false;  // false while every row minimum is empty
};

// Randomized greedy: k rounds; each round scores every remaining
// candidate, keeps the min(k, #candidates) with the lowest resulting f
// and adds one of them uniformly at random (counter RNG on rng_seed).
// Fixed seed + fixed q = identical output. Throws when k < 1 or k > m.
std::vector<Index> greedy_select(const QMatrices& q, Index k,
                                 std::uint64_t rng_seed);

struct SubmodularityReport {
  int trials = 0;
  int dr_violations = 0;            // diminishing-returns failures
  int monotonicity_violations = 0;  // f(S + {x}) > f(S) failures
  int total() const { return dr_violations + monotonicity_violations; }
};

// Samples (S subset-of T, x not in T) triples and checks
//   f(S) - f(S+{x}) >= f(T) - f(T+{x}) - 1e-9
// plus the monotone non-increase side condition. Expected violation
// count is zero; the check exists to catch implementation bugs.
SubmodularityReport check_submodularity(const QMatrices& q, int trials,
                                        std::uint64_t rng_seed);

}  // namespace mcoss

#endif  // MCOSS_SUBMODULAR_HPP_
