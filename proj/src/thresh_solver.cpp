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

#include "mcoss/thresh_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mcoss/solver_detail.hpp"

namespace mcoss {

double compute_s(double column_mass, double epsilon) {
  if (!(column_mass >= 0.0))
    throw std::invalid_argument("compute_s: column mass must be nonnegative");
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("compute_s: epsilon must lie in (0,1]");
  return std::min(epsilon, column_mass) / epsilon;
}

namespace detail {

namespace {

// Per-row candidate columns; every row keeps its own column. Ranking is
// by cumulative dissimilarity (rho*d - (1-rho)*L), lowest first.
std::vector<std::vector<Index>> candidate_columns(const SelectionInstance& instance,
                                                  const SelectionConfig& config,
                                                  Index per_row) {
  const Index m = instance.m();
  std::vector<std::vector<Index>> candidates(static_cast<size_t>(m));
  if (per_row <= 0 || per_row >= m) {
    for (Index i = 0; i < m; ++i) {
      candidates[i].resize(static_cast<size_t>(m));
      std::iota(candidates[i].begin(), candidates[i].end(), Index{0});
    }
    return candidates;
  }
  for (Index i = 0; i < m; ++i) {
    std::vector<Index> order(static_cast<size_t>(m));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
      const double qa = config.rho * instance.d_new(i, a) -
                        (1.0 - config.rho) * instance.loss_new(a);
      const double qb = config.rho * instance.d_new(i, b) -
                        (1.0 - config.rho) * instance.loss_new(b);
      return qa < qb || (qa == qb && a < b);
    });
    order.resize(static_cast<size_t>(per_row));
    if (std::find(order.begin(), order.end(), i) == order.end()) order.back() = i;
    std::sort(order.begin(), order.end());
    candidates[i] = std::move(order);
  }
  return candidates;
}

}  // namespace

LpProblem build_thresh_lp(const SelectionInstance& instance,
                          const SelectionConfig& config,
                          const ThreshOptions& options,
                          std::vector<std::vector<Index>>* candidates_out) {
  const Index m = instance.m();
  const Index r = instance.r();

  if (r == 0) {
    // With no old set, row stochasticity pins the total new mass to m,
    // which lower-bounds the budget norm sum regardless of z.
    if (config.p == NormP::l1 && config.frac < 1.0 - 1e-12)
      throw std::invalid_argument(
          "threshmcoss: infeasible configuration; with r=0 and p=1 the budget "
          "term equals m, so the minimum feasible frac is 1 (got frac=" +
          format_double(config.frac) + ")");
    if (config.p == NormP::linf && config.frac * static_cast<double>(m) < 1.0 - 1e-9)
      throw std::invalid_argument(
          "threshmcoss: infeasible configuration; with r=0 and p=inf the budget "
          "term is at least 1, so the minimum feasible frac is 1/m = " +
          format_double(1.0 / static_cast<double>(m)) + " (got frac=" +
          format_double(config.frac) + ")");
  }

  auto candidates = candidate_columns(instance, config, options.max_candidates_per_row);
  std::vector<Index> offsets(static_cast<size_t>(m) + 1, 0);
  for (Index i = 0; i < m; ++i)
    offsets[i + 1] = offsets[i] + static_cast<Index>(candidates[i].size());
  const Index n_z_new = offsets[static_cast<size_t>(m)];

  const bool linf = config.p == NormP::linf;
  const Index n_z_old = m * r;
  const Index base_s_old = n_z_old + n_z_new;
  const Index base_s_new = base_s_old + r;
  const Index base_t = base_s_new + m;
  const Index n = base_t + (linf ? m : 0);

  const Index slink_rows = r + m;
  const Index budget_rows = 1;
  const Index link_rows = linf ? n_z_new : 0;
  const Index ub_rows = slink_rows + link_rows + budget_rows;

  if (static_cast<long>(m + ub_rows) * n > 40'000'000L)
    throw std::invalid_argument(
        "threshmcoss: p=inf reduction too large for the dense solver at m=" +
        std::to_string(m) + "; use p=1 or set max_candidates_per_row");

  LpProblem lp = LpProblem::sized(n, m, ub_rows);

  auto z_old_var = [&](Index i, Index j) { return i * r + j; };
  auto z_new_var = [&](Index i, Index pos) { return n_z_old + offsets[i] + pos; };

  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < r; ++j) {
      const Index v = z_old_var(i, j);
      lp.c(v) = config.rho * instance.d_old(i, j);
      lp.upper(v) = 1.0;
      lp.a_eq(i, v) = 1.0;
    }
    for (size_t pos = 0; pos < candidates[i].size(); ++pos) {
      const Index j = candidates[i][pos];
      const Index v = z_new_var(i, static_cast<Index>(pos));
      lp.c(v) = config.rho * instance.d_new(i, j) + tie_break_cost(i, j, m);
      lp.upper(v) = 1.0;
      lp.a_eq(i, v) = 1.0;
    }
    lp.b_eq(i) = 1.0;
  }
  for (Index j = 0; j < r; ++j) {
    lp.c(base_s_old + j) = -(1.0 - config.rho) * instance.loss_old(j);
    lp.upper(base_s_old + j) = 1.0;
  }
  for (Index j = 0; j < m; ++j) {
    lp.c(base_s_new + j) = -(1.0 - config.rho) * instance.loss_new(j);
    lp.upper(base_s_new + j) = 1.0;
  }

  // Credit envelopes: epsilon * s_j <= column mass.
  Index row = 0;
  for (Index j = 0; j < r; ++j, ++row) {
    lp.a_ub(row, base_s_old + j) = config.epsilon;
    for (Index i = 0; i < m; ++i) lp.a_ub(row, z_old_var(i, j)) = -1.0;
    lp.b_ub(row) = 0.0;
  }
  for (Index j = 0; j < m; ++j, ++row) lp.a_ub(row, base_s_new + j) = config.epsilon;
  for (Index i = 0; i < m; ++i)
    for (size_t pos = 0; pos < candidates[i].size(); ++pos)
      lp.a_ub(slink_rows - m + candidates[i][pos], z_new_var(i, static_cast<Index>(pos))) = -1.0;

  // Cardinality budget.
  if (linf) {
    for (Index j = 0; j < m; ++j) lp.upper(base_t + j) = 1.0;
    Index link = slink_rows;
    for (Index i = 0; i < m; ++i)
      for (size_t pos = 0; pos < candidates[i].size(); ++pos, ++link) {
        lp.a_ub(link, z_new_var(i, static_cast<Index>(pos))) = 1.0;
        lp.a_ub(link, base_t + candidates[i][pos]) = -1.0;
        lp.b_ub(link) = 0.0;
      }
    const Index budget_row = slink_rows + link_rows;
    for (Index j = 0; j < m; ++j) lp.a_ub(budget_row, base_t + j) = 1.0;
    lp.b_ub(budget_row) = config.frac * static_cast<double>(m);
  } else {
    const Index budget_row = slink_rows;
    for (Index i = 0; i < m; ++i)
      for (size_t pos = 0; pos < candidates[i].size(); ++pos)
        lp.a_ub(budget_row, z_new_var(i, static_cast<Index>(pos))) = 1.0;
    lp.b_ub(budget_row) = config.frac * static_cast<double>(m);
  }

  if (candidates_out) *candidates_out = std::move(candidates);
  return lp;
}

}  // namespace detail

ThreshResult solve_threshmcoss(const SelectionInstance& instance,
                               const SelectionConfig& config,
                               const ThreshOptions& options) {
  config.validate();
  {
    auto violations = validate(instance);
    if (!violations.empty())
      throw std::invalid_argument("solve_threshmcoss: invalid instance: " +
                                  violations.front().message);
  }
  const Index m = instance.m();
  const Index r = instance.r();

  std::vector<std::vector<Index>> candidates;
  const LpProblem lp = detail::build_thresh_lp(instance, config, options, &candidates);
  const LpSolution sol = solve_lp(lp, config.feasibility_tol);
  if (sol.status != LpStatus::optimal)
    throw std::runtime_error(
        std::string("solve_threshmcoss: unexpected LP status '") +
        std::string(to_string(sol.status)) + "'");

  std::vector<Index> offsets(static_cast<size_t>(m) + 1, 0);
  for (Index i = 0; i < m; ++i)
    offsets[i + 1] = offsets[i] + static_cast<Index>(candidates[i].size());
  const Index n_z_old = m * r;

  ThreshResult result;
  Assignment& z = result.solution.assignment;
  z.z_old.setZero(m, r);
  z.z_new.setZero(m, m);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < r; ++j) z.z_old(i, j) = sol.x(i * r + j);
    for (size_t pos = 0; pos < candidates[i].size(); ++pos)
      z.z_new(i, candidates[i][pos]) = sol.x(n_z_old + offsets[i] + static_cast<Index>(pos));
  }

  // Credits are pinned to their envelopes; the LP can leave an s below
  // the envelope only where its cost coefficient is exactly zero, and
  // the envelope value is always feasible and never worse.
  const Vector mass_old = z.z_old.colwise().sum();
  const Vector mass_new = z.z_new.colwise().sum();
  result.solution.s_old.resize(r);
  for (Index j = 0; j < r; ++j)
    result.solution.s_old(j) = compute_s(std::max(0.0, mass_old(j)), config.epsilon);
  result.solution.s_new.resize(m);
  for (Index j = 0; j < m; ++j)
    result.solution.s_new(j) = compute_s(std::max(0.0, mass_new(j)), config.epsilon);

  double budget = 0.0;
  for (Index j = 0; j < m; ++j) {
    const auto col = z.z_new.col(j);
    budget += config.p == NormP::l1 ? col.cwiseAbs().sum() : col.cwiseAbs().maxCoeff();
  }
  result.solution.budget_usage = budget;
  result.solution.objective_value = eval_thresh_objective(z, instance, config);

  result.report.column_mass = mass_new;
  result.report.selected_new = select_columns(mass_new, config.rounding());
  result.report.objective_value = result.solution.objective_value;
  result.report.status = sol.status;
  result.report.iterations = sol.iterations;
  return result;
}

double eval_thresh_objective(const Assignment& assignment,
                             const SelectionInstance& instance,
                             const SelectionConfig& config) {
  if (assignment.z_old.rows() != instance.m() ||
      assignment.z_old.cols() != instance.r() ||
      assignment.z_new.rows() != instance.m() ||
      assignment.z_new.cols() != instance.m())
    throw std::invalid_argument("eval_thresh_objective: dimension mismatch");

  double pairwise = (assignment.z_old.array() * instance.d_old.array()).sum() +
                    (assignment.z_new.array() * instance.d_new.array()).sum();
  double credit = 0.0;
  for (Index j = 0; j < instance.r(); ++j)
    credit += compute_s(std::max(0.0, assignment.z_old.col(j).sum()), config.epsilon) *
              instance.loss_old(j);
  for (Index j = 0; j < instance.m(); ++j)
    credit += compute_s(std::max(0.0, assignment.z_new.col(j).sum()), config.epsilon) *
              instance.loss_new(j);
  return config.rho * pairwise - (1.0 - config.rho) * credit;
}

std::vector<ThreshConditionReport> check_supp_theorem_conditions(
    const ThreshResult& result, const SelectionInstance& instance,
    const SelectionConfig& config) {
  const Index m = instance.m();
  const Index r = instance.r();
  const Assignment& z = result.solution.assignment;

  // Best existing representative by thresholded cost.
  Index k = -1;
  if (r > 0) {
    double best = kInf;
    for (Index j = 0; j < r; ++j) {
      const double cost =
          config.rho * (z.z_old.col(j).array() * instance.d_old.col(j).array()).sum() -
          (1.0 - config.rho) * result.solution.s_old(j) * instance.loss_old(j);
      if (cost < best) {
        best = cost;
        k = j;
      }
    }
  }

  std::vector<ThreshConditionReport> reports;
  for (Index j : result.report.selected_new) {
    ThreshConditionReport rep;
    rep.j = j;
    rep.best_old = k;

    const double mass = result.report.column_mass(j);
    rep.mass_condition = mass >= config.epsilon - kTieMargin ? Verdict::pass : Verdict::fail;

    if (r > 0) {
      const double lhs =
          config.rho * (z.z_new.col(j).array() * instance.d_new.col(j).array()).sum() -
          (1.0 - config.rho) * result.solution.s_new(j) * instance.loss_new(j);
      const double old_cost =
          config.rho * (z.z_old.col(k).array() * instance.d_old.col(k).array()).sum() -
          (1.0 - config.rho) * result.solution.s_old(k) * instance.loss_old(k);
      rep.cost_condition_per_row.resize(static_cast<size_t>(m));
      for (Index i = 0; i < m; ++i) {
        const double deviation = std::max(
            std::abs(instance.d_old(i, k) - instance.d_new(i, j)),
            std::abs(instance.loss_old(k) - instance.loss_new(j)));
        const double diff = old_cost + deviation - lhs;
        rep.cost_condition_per_row[static_cast<size_t>(i)] =
            diff > kTieMargin ? Verdict::pass
                              : (diff < -kTieMargin ? Verdict::fail : Verdict::inconclusive);
      }
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

}  // namespace mcoss
