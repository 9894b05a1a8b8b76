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

#include "mcoss/mcoss_solver.hpp"

#include <cmath>
#include <stdexcept>

#include "mcoss/solver_detail.hpp"

namespace mcoss {

std::vector<Index> select_columns(const Vector& column_mass, double threshold) {
  std::vector<Index> selected;
  for (Index j = 0; j < column_mass.size(); ++j)
    if (column_mass(j) > threshold - kTieMargin) selected.push_back(j);
  return selected;
}

namespace detail {

double tie_break_cost(Index i, Index j, Index m) {
  // Deterministic degeneracy resolution, small enough to stay inside
  // every stated tolerance: existing representatives win exact ties
  // against new columns, and within the new block a frame prefers its
  // own column, with a position ramp separating the rest.
  const double ramp = static_cast<double>(i * m + j) / static_cast<double>(m * m + 1);
  return i == j ? kTieBreakScale : kTieBreakScale * (2.0 + ramp);
}

LpProblem build_mcoss_lp(const SelectionInstance& instance,
                         const SelectionConfig& config) {
  const Index m = instance.m();
  const Index r = instance.r();
  const Index n_z = m * r + m * m;
  const Index n = n_z + (config.p == NormP::linf ? m : 0);
  const Index link_rows = config.p == NormP::linf ? m * m : 0;

  if (static_cast<long>(m + link_rows) * n > 40'000'000L)
    throw std::invalid_argument(
        "mcoss: p=inf reduction too large for the dense solver at m=" +
        std::to_string(m) + "; use p=1");

  LpProblem lp = LpProblem::sized(n, m, link_rows);
  const QMatrices q = build_q(instance, config.rho);

  auto z_old_var = [&](Index i, Index j) { return i * r + j; };
  auto z_new_var = [&](Index i, Index j) { return m * r + i * m + j; };
  auto t_var = [&](Index j) { return n_z + j; };

  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < r; ++j) {
      const Index v = z_old_var(i, j);
      lp.c(v) = q.q_old(i, j);
      lp.upper(v) = 1.0;
      lp.a_eq(i, v) = 1.0;
    }
    for (Index j = 0; j < m; ++j) {
      const Index v = z_new_var(i, j);
      lp.c(v) = q.q_new(i, j) + tie_break_cost(i, j, m);
      if (config.p == NormP::l1) lp.c(v) += config.lambda;
      lp.upper(v) = 1.0;
      lp.a_eq(i, v) = 1.0;
    }
    lp.b_eq(i) = 1.0;
  }

  if (config.p == NormP::linf) {
    for (Index j = 0; j < m; ++j) {
      lp.c(t_var(j)) = config.lambda;
      lp.upper(t_var(j)) = 1.0;
    }
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < m; ++j) {
        const Index row = i * m + j;
        lp.a_ub(row, z_new_var(i, j)) = 1.0;
        lp.a_ub(row, t_var(j)) = -1.0;
        lp.b_ub(row) = 0.0;
      }
  }
  return lp;
}

}  // namespace detail

McossResult solve_mcoss(const SelectionInstance& instance,
                        const SelectionConfig& config) {
  config.validate();
  {
    auto violations = validate(instance);
    if (!violations.empty())
      throw std::invalid_argument("solve_mcoss: invalid instance: " +
                                  violations.front().message);
  }
  const Index m = instance.m();
  const Index r = instance.r();

  const LpProblem lp = detail::build_mcoss_lp(instance, config);
  const LpSolution sol = solve_lp(lp, config.feasibility_tol);
  if (sol.status != LpStatus::optimal)
    throw std::runtime_error(
        std::string("solve_mcoss: unexpected LP status '") +
        std::string(to_string(sol.status)) + "' on a valid instance");

  McossResult result;
  result.assignment.z_old.resize(m, r);
  result.assignment.z_new.resize(m, m);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < r; ++j)
      result.assignment.z_old(i, j) = sol.x(i * r + j);
    for (Index j = 0; j < m; ++j)
      result.assignment.z_new(i, j) = sol.x(m * r + i * m + j);
  }

  result.report.column_mass = result.assignment.z_new.colwise().sum();
  result.report.selected_new =
      select_columns(result.report.column_mass, config.rounding());
  result.report.objective_value =
      eval_mcoss_objective(result.assignment, instance, config);
  result.report.status = sol.status;
  result.report.iterations = sol.iterations;
  return result;
}

double eval_mcoss_objective(const Assignment& assignment,
                            const SelectionInstance& instance,
                            const SelectionConfig& config) {
  if (assignment.z_old.rows() != instance.m() ||
      assignment.z_old.cols() != instance.r() ||
      assignment.z_new.rows() != instance.m() ||
      assignment.z_new.cols() != instance.m())
    throw std::invalid_argument("eval_mcoss_objective: dimension mismatch");

  const QMatrices q = build_q(instance, config.rho);
  double value = (assignment.z_old.array() * q.q_old.array()).sum() +
                 (assignment.z_new.array() * q.q_new.array()).sum();
  for (Index j = 0; j < instance.m(); ++j) {
    const auto col = assignment.z_new.col(j);
    value += config.lambda * (config.p == NormP::l1 ? col.cwiseAbs().sum()
                                                    : col.cwiseAbs().maxCoeff());
  }
  return value;
}

}  // namespace mcoss
