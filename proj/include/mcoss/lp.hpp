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

#ifndef MCOSS_LP_HPP_
#define MCOSS_LP_HPP_

#include <iosfwd>
#include <limits>

#include "mcoss/common.hpp"

namespace mcoss {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense linear program
//
//   minimize    c'x
//   subject to  a_eq x  = b_eq
//               a_ub x <= b_ub
//               lower <= x <= upper   (entries may be +-inf)
//
// Either constraint block may be empty (0 rows).
struct LpProblem {
  Vector c;
  Matrix a_eq;
  Vector b_eq;
  Matrix a_ub;
  Vector b_ub;
  Vector lower;
  Vector upper;

  Index num_vars() const { return c.size(); }

  // Sized, unconstrained-by-default problem (bounds [0, +inf)).
  static LpProblem sized(Index n, Index eq_rows, Index ub_rows);

  void validate() const;  // dimension agreement; throws
};

enum class LpStatus { optimal, infeasible, unbounded };

std::string_view to_string(LpStatus s);

struct LpSolution {
  Vector x;
  double objective_value = 0.0;
  LpStatus status = LpStatus::optimal;
  int iterations = 0;
};

// Two-phase primal simplex on a dense tableau with explicit variable
// bounds (nonbasic variables rest at either bound; bound flips do not
// change the basis). Pivoting is deterministic: Dantzig pricing with
// lowest-index tie breaks, falling back to Bland's rule whenever a run
// of degenerate steps is detected, which also guarantees termination.
// The basis inverse is maintained in product form and refactorized
// periodically.
//
// status = optimal guarantees x is a basic (vertex) solution with
// ||a_eq x - b_eq||_inf <= feasibility_tol, a_ub x <= b_ub + tol and
// bounds respected within tol.
LpSolution solve_lp(const LpProblem& problem, double feasibility_tol = 1e-8);

// Debug dump of the problem as CSV (objective row, then constraint rows
// with their right-hand sides and senses).
void dump_lp_csv(const LpProblem& problem, std::ostream& out);

}  // namespace mcoss

#endif  // MCOSS_LP_HPP_
