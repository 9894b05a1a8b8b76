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

#ifndef MCOSS_MCOSS_SOLVER_HPP_
#define MCOSS_MCOSS_SOLVER_HPP_

#include <vector>

#include "mcoss/instance.hpp"
#include "mcoss/lp.hpp"

namespace mcoss {

// Relaxed assignment: row i of [z_old | z_new] sums to 1 (every incoming
// frame has exactly one representative, fractionally).
struct Assignment {
  Matrix z_old;  // m x r, entries in [0,1]
  Matrix z_new;  // m x m, entries in [0,1]
};

struct RepresentativeReport {
  std::vector<Index> selected_new;  // columns whose mass reaches the threshold
  Vector column_mass;               // sum_i z_new[i][j]
  double objective_value = 0.0;
  LpStatus status = LpStatus::optimal;
  int iterations = 0;
};

// Column-mass rounding shared by all solvers. A column is selected when
// its representativeness reaches the threshold; a tolerance band admits
// masses that sit exactly at the threshold up to solver noise, which is
// where LP vertices routinely land (see the thresh solver's saturation
// structure).
std::vector<Index> select_columns(const Vector& column_mass, double threshold);

struct McossResult {
  Assignment assignment;
  RepresentativeReport report;
};

// Baseline multi-criteria selection: minimize
//   sum z_old.Q_old + sum z_new.Q_new + lambda * sum_j ||z_new col j||_p
// over row-stochastic z in [0,1]. Both supported norms linearize exactly
// (p=1 folds lambda into the cost; p=inf adds one bounded auxiliary per
// column). Valid instances are always feasible; an infeasible LP status
// is an internal error.
McossResult solve_mcoss(const SelectionInstance& instance,
                        const SelectionConfig& config);

// Objective of the baseline formulation at an arbitrary assignment; the
// norm term is recomputed from z_new, not taken from LP auxiliaries.
double eval_mcoss_objective(const Assignment& assignment,
                            const SelectionInstance& instance,
                            const SelectionConfig& config);

}  // namespace mcoss

#endif  // MCOSS_MCOSS_SOLVER_HPP_
