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

#ifndef MCOSS_THRESH_SOLVER_HPP_
#define MCOSS_THRESH_SOLVER_HPP_

#include <vector>

#include "mcoss/instance.hpp"
#include "mcoss/mcoss_solver.hpp"

namespace mcoss {

// Thresholded credit of a column: min(epsilon, column_mass) / epsilon.
// Concave in the mass, saturating at 1, so a representative contributes
// at most one copy of its own pointwise score.
double compute_s(double column_mass, double epsilon);

struct ThreshSolution {
  Assignment assignment;
  Vector s_old;  // r, in [0,1]
  Vector s_new;  // m, in [0,1]
  double objective_value = 0.0;
  double budget_usage = 0.0;  // sum_j ||z_new col j||_p at the solve's p
};

struct ThreshResult {
  ThreshSolution solution;
  RepresentativeReport report;
};

struct ThreshOptions {
  // When positive, restrict each row's new-frame candidates to its best
  // `max_candidates_per_row` columns by cumulative dissimilarity (the
  // row's own column is always kept) and solve the LP on that support.
  // The result is feasible for the full problem and typically optimal or
  // near it; intended for large instances where the p=inf reduction's
  // m^2 epigraph rows would not fit a dense tableau. 0 = full LP.
  Index max_candidates_per_row = 0;
};

// Thresholded convex formulation: minimize
//   rho*(sum z_old.d_old + sum z_new.d_new)
//     - (1-rho)*(sum_j s_old[j]*loss_old[j] + sum_j s_new[j]*loss_new[j])
// subject to row-stochastic z in [0,1] and
//   sum_j ||z_new col j||_p <= frac * m.
//
// Each credit s_j enters the LP as an auxiliary with s_j <= 1 and
// epsilon*s_j <= column mass; because its objective coefficient
// -(1-rho)*L_j is nonpositive (losses are nonnegative), the optimum
// pushes every s_j onto its upper envelope min(epsilon, mass)/epsilon,
// making the linearization exact.
//
// Throws std::invalid_argument naming the minimum feasible frac when the
// budget is below the mass an empty old set forces into z_new (r = 0
// forces sum_j ||col j||_p >= m for p=1 and >= 1 for p=inf).
ThreshResult solve_threshmcoss(const SelectionInstance& instance,
                               const SelectionConfig& config,
                               const ThreshOptions& options = {});

// Objective G at an arbitrary assignment; credits are recomputed from
// column masses, never read from stored s vectors.
double eval_thresh_objective(const Assignment& assignment,
                             const SelectionInstance& instance,
                             const SelectionConfig& config);

// Condition report for one selected column under the thresholded
// formulation's representative conditions: (a) column mass reaches
// epsilon; (b) the cost comparison against the best old representative.
// The comparison's deviation term varies with the incoming frame index
// and its intended quantifier is not fixed, so (b) is reported per row.
struct ThreshConditionReport {
  Index j = 0;
  Verdict mass_condition = Verdict::not_applicable;
  std::vector<Verdict> cost_condition_per_row;  // length m; empty if r == 0
  Index best_old = -1;                          // k, -1 when r == 0
};

std::vector<ThreshConditionReport> check_supp_theorem_conditions(
    const ThreshResult& result, const SelectionInstance& instance,
    const SelectionConfig& config);

}  // namespace mcoss

#endif  // MCOSS_THRESH_SOLVER_HPP_
