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

#ifndef MCOSS_SOLVER_DETAIL_HPP_
#define MCOSS_SOLVER_DETAIL_HPP_

#include <vector>

#include "mcoss/instance.hpp"
#include "mcoss/lp.hpp"
#include "mcoss/thresh_solver.hpp"

namespace mcoss::detail {

// Scale of the deterministic degeneracy tie break added to new-block
// assignment costs. Keeps the optimal face selection reproducible and
// shifts any objective by at most 3 * scale * m, far inside the 1e-6
// tolerances the contracts use.
inline constexpr double kTieBreakScale = 1e-9;

double tie_break_cost(Index i, Index j, Index m);

// LP reductions, exposed for the CLI's debug dump.
LpProblem build_mcoss_lp(const SelectionInstance& instance,
                         const SelectionConfig& config);
LpProblem build_thresh_lp(const SelectionInstance& instance,
                          const SelectionConfig& config,
                          const ThreshOptions& options,
                          std::vector<std::vector<Index>>* candidates_out);

}  // namespace mcoss::detail

#endif  // MCOSS_SOLVER_DETAIL_HPP_
