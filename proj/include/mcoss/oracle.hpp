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

#ifndef MCOSS_ORACLE_HPP_
#define MCOSS_ORACLE_HPP_

#include <cstdint>
#include <vector>

#include "mcoss/instance.hpp"
#include "mcoss/mcoss_solver.hpp"

namespace mcoss {

enum class Formulation { mcoss, threshmcoss };

std::string_view to_string(Formulation f);

// Exact integral optimum by exhaustive enumeration of all (r+m)^m maps
// from incoming frames to single representatives. For the thresholded
// formulation the credit S_j is the 0/1 indicator of column use (the
// integral limit) and assignments violating the cardinality budget are
// skipped. Ties break toward the lexicographically first assignment.
struct OracleResult {
  Assignment best_assignment;
  double best_objective = 0.0;
  Formulation formulation = Formulation::mcoss;
  std::int64_t enumerated_count = 0;
};

// Guard: throws when (r+m)^m exceeds 10^6 or no assignment is feasible.
OracleResult brute_force_optimum(const SelectionInstance& instance,
                                 const SelectionConfig& config,
                                 Formulation formulation);

// Per-column outcome of the baseline formulation's representative
// conditions. Condition 1: some incoming frame ranks column j strictly
// best among new columns. Condition 2: some incoming frame's cumulative
// dissimilarity to j is below the stated ratio against the best old
// column k (evaluated literally with the +lambda norm term as printed).
struct TheoremColumnReport {
  Index j = 0;
  Verdict cond1 = Verdict::not_applicable;
  Verdict cond2 = Verdict::not_applicable;
};

std::vector<TheoremColumnReport> check_theorem1(const Assignment& assignment,
                                                const SelectionInstance& instance,
                                                const SelectionConfig& config);

// Loss-only specialization at rho = 0 (throws otherwise). Condition 2
// uses the -lambda norm term exactly as printed in the corollary, which
// differs in sign from the theorem; both literal forms stay available
// side by side. Also checks the global claim that at most one new column
// is selected when losses are strictly distinct.
struct Corollary1Report {
  std::vector<TheoremColumnReport> columns;
  int selected_count = 0;
  Verdict count_claim = Verdict::not_applicable;  // inconclusive on tied losses
};

Corollary1Report check_corollary1(const Assignment& assignment,
                                  const SelectionInstance& instance,
                                  const SelectionConfig& config);

// Sensitivity pair for column j against the best old column k:
//   delta_d = ||z_new col j||_1 * d_new[i][j] - sum_i' z_old[i'][k]*d_old[i'][k]
//   delta_l = ||z_new col j||_1 * loss_new[j] - sum_i' z_old[i'][k]*loss_old[k]
// The predicate delta_d < -delta_l flags columns that stop being
// representatives as rho grows. Requires r >= 1 (k undefined otherwise).
struct DeltaPair {
  double delta_d = 0.0;
  double delta_l = 0.0;
  Index i = 0;
  Index j = 0;
};

DeltaPair compute_corollary2_deltas(const Assignment& assignment,
                                    const SelectionInstance& instance,
                                    const SelectionConfig& config, Index i,
                                    Index j);

}  // namespace mcoss

#endif  // MCOSS_ORACLE_HPP_
