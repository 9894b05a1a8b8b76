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

#include "mcoss/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "mcoss/lp.hpp"

namespace mcoss {

std::string_view to_string(Formulation f) {
  return f == Formulation::mcoss ? "mcoss" : "threshmcoss";
}

namespace {

// Best old column under the baseline cost, k = argmin_j sum_i z_old*Q_old.
Index best_old_column(const Assignment& assignment, const QMatrices& q) {
  Index k = -1;
  double best = kInf;
  for (Index j = 0; j < q.q_old.cols(); ++j) {
    const double cost = (assignment.z_old.col(j).array() * q.q_old.col(j).array()).sum();
    if (cost < best) {
      best = cost;
      k = j;
    }
  }
  return k;
}

Verdict strict_verdict(double margin_value) {
  if (margin_value > kTieMargin) return Verdict::pass;
  if (margin_value < -kTieMargin) return Verdict::fail;
  return Verdict::inconclusive;
}

}  // namespace

OracleResult brute_force_optimum(const SelectionInstance& instance,
                                 const SelectionConfig& config,
                                 Formulation formulation) {
  config.validate();
  const Index m = instance.m();
  const Index r = instance.r();
  const Index choices = r + m;

  double total = 1.0;
  for (Index i = 0; i < m; ++i) total *= static_cast<double>(choices);
  if (total > 1e6)
    throw std::invalid_argument("brute_force_optimum: (r+m)^m exceeds the 1e6 guard");
  const std::int64_t count = static_cast<std::int64_t>(total);

  const QMatrices q = build_q(instance, config.rho);
  const double budget = config.frac * static_cast<double>(m);

  std::vector<Index> pick(static_cast<size_t>(m), 0);
  std::vector<Index> best_pick;
  double best = kInf;
  std::vector<int> new_use(static_cast<size_t>(m), 0);
  std::vector<bool> old_use(static_cast<size_t>(r), false);

  for (std::int64_t it = 0; it < count; ++it) {
    std::fill(new_use.begin(), new_use.end(), 0);
    std::fill(old_use.begin(), old_use.end(), false);
    double pair_cost = 0.0;
    double q_cost = 0.0;
    Index new_assignments = 0;
    for (Index i = 0; i < m; ++i) {
      const Index c = pick[static_cast<size_t>(i)];
      if (c < r) {
        old_use[static_cast<size_t>(c)] = true;
        pair_cost += instance.d_old(i, c);
        q_cost += q.q_old(i, c);
      } else {
        const Index j = c - r;
        ++new_use[static_cast<size_t>(j)];
        ++new_assignments;
        pair_cost += instance.d_new(i, j);
        q_cost += q.q_new(i, j);
      }
    }
    Index used_new_columns = 0;
    for (Index j = 0; j < m; ++j)
      if (new_use[static_cast<size_t>(j)] > 0) ++used_new_columns;

    double objective;
    bool feasible = true;
    if (formulation == Formulation::mcoss) {
      const double norm_sum = config.p == NormP::l1
                                  ? static_cast<double>(new_assignments)
                                  : static_cast<double>(used_new_columns);
      objective = q_cost + config.lambda * norm_sum;
    } else {
      const double norm_sum = config.p == NormP::l1
                                  ? static_cast<double>(new_assignments)
                                  : static_cast<double>(used_new_columns);
      feasible = norm_sum <= budget + 1e-12;
      double credit = 0.0;
      for (Index j = 0; j < r; ++j)
        if (old_use[static_cast<size_t>(j)]) credit += instance.loss_old(j);
      for (Index j = 0; j < m; ++j)
        if (new_use[static_cast<size_t>(j)] > 0) credit += instance.loss_new(j);
      objective = config.rho * pair_cost - (1.0 - config.rho) * credit;
    }

    if (feasible && objective < best) {
      best = objective;
      best_pick = pick;
    }

    // Advance the lexicographic counter (last index fastest).
    for (Index i = m - 1; i >= 0; --i) {
      if (++pick[static_cast<size_t>(i)] < choices) break;
      pick[static_cast<size_t>(i)] = 0;
    }
  }

  if (best_pick.empty())
    throw std::invalid_argument(
        "brute_force_optimum: no feasible integral assignment under the budget");

  OracleResult result;
  result.formulation = formulation;
  result.enumerated_count = count;
  result.best_objective = best;
  result.best_assignment.z_old = Matrix::Zero(m, r);
  result.best_assignment.z_new = Matrix::Zero(m, m);
  for (Index i = 0; i < m; ++i) {
    const Index c = best_pick[static_cast<size_t>(i)];
    if (c < r)
      result.best_assignment.z_old(i, c) = 1.0;
    else
      result.best_assignment.z_new(i, c - r) = 1.0;
  }
  return result;
}

std::vector<TheoremColumnReport> check_theorem1(const Assignment& assignment,
                                                const SelectionInstance& instance,
                                                const SelectionConfig& config) {
  config.validate();
  const Index m = instance.m();
  const Index r = instance.r();
  const QMatrices q = build_q(instance, config.rho);
  const Index k = best_old_column(assignment, q);

  std::vector<TheoremColumnReport> reports;
  for (Index j = 0; j < m; ++j) {
    const double mass = assignment.z_new.col(j).sum();
    if (mass <= kTieMargin) continue;  // zero-mass columns are excluded
    TheoremColumnReport rep;
    rep.j = j;

    // Condition 1: some row ranks j strictly below every other new column.
    double best_gap = -kInf;
    for (Index i = 0; i < m; ++i) {
      double runner_up = kInf;
      for (Index jp = 0; jp < m; ++jp)
        if (jp != j) runner_up = std::min(runner_up, q.q_new(i, jp));
      best_gap = std::max(best_gap, runner_up - q.q_new(i, j));
    }
    rep.cond1 = strict_verdict(best_gap);

    // Condition 2: some row's Q lies below the old-cost ratio, with the
    // +lambda norm term exactly as printed in the theorem.
    if (r == 0) {
      rep.cond2 = Verdict::not_applicable;
    } else {
      const double old_cost =
          (assignment.z_old.col(k).array() * q.q_old.col(k).array()).sum();
      const double norm = config.p == NormP::l1
                              ? assignment.z_new.col(j).cwiseAbs().sum()
                              : assignment.z_new.col(j).cwiseAbs().maxCoeff();
      const double ratio = (old_cost + config.lambda * norm) / mass;
      const double lhs = q.q_new.col(j).minCoeff();
      rep.cond2 = strict_verdict(ratio - lhs);
    }
    reports.push_back(rep);
  }
  return reports;
}

Corollary1Report check_corollary1(const Assignment& assignment,
                                  const SelectionInstance& instance,
                                  const SelectionConfig& config) {
  if (config.rho != 0.0)
    throw std::invalid_argument("check_corollary1: requires rho = 0");
  const Index m = instance.m();
  const Index r = instance.r();
  const QMatrices q = build_q(instance, config.rho);
  const Index k = best_old_column(assignment, q);

  Corollary1Report report;
  for (Index j = 0; j < m; ++j) {
    const double mass = assignment.z_new.col(j).sum();
    if (mass <= kTieMargin) continue;
    ++report.selected_count;
    TheoremColumnReport rep;
    rep.j = j;

    double runner_up = -kInf;
    for (Index jp = 0; jp < m; ++jp)
      if (jp != j) runner_up = std::max(runner_up, instance.loss_new(jp));
    rep.cond1 = strict_verdict(instance.loss_new(j) - runner_up);

    if (r == 0) {
      rep.cond2 = Verdict::not_applicable;
    } else {
      // Literal corollary form: the norm term enters with a minus sign.
      const double old_mass_cost =
          assignment.z_old.col(k).sum() * instance.loss_old(k);
      const double norm = config.p == NormP::l1
                              ? assignment.z_new.col(j).cwiseAbs().sum()
                              : assignment.z_new.col(j).cwiseAbs().maxCoeff();
      const double ratio = (old_mass_cost - config.lambda * norm) / mass;
      rep.cond2 = strict_verdict(instance.loss_new(j) - ratio);
    }
    report.columns.push_back(rep);
  }

  // Global claim: strictly distinct losses admit at most one selection.
  bool distinct = true;
  for (Index a = 0; a < m && distinct; ++a)
    for (Index b = a + 1; b < m && distinct; ++b)
      if (std::abs(instance.loss_new(a) - instance.loss_new(b)) <= kTieMargin)
        distinct = false;
  if (!distinct)
    report.count_claim = Verdict::inconclusive;
  else
    report.count_claim = report.selected_count <= 1 ? Verdict::pass : Verdict::fail;
  return report;
}

DeltaPair compute_corollary2_deltas(const Assignment& assignment,
                                    const SelectionInstance& instance,
                                    const SelectionConfig& config, Index i,
                                    Index j) {
  const Index r = instance.r();
  if (r == 0)
    throw std::invalid_argument("compute_corollary2_deltas: k undefined when r = 0");
  if (i < 0 || i >= instance.m() || j < 0 || j >= instance.m())
    throw std::invalid_argument("compute_corollary2_deltas: index out of range");

  const QMatrices q = build_q(instance, config.rho);
  const Index k = best_old_column(assignment, q);
  const double mass = assignment.z_new.col(j).cwiseAbs().sum();

  DeltaPair pair;
  pair.i = i;
  pair.j = j;
  pair.delta_d = mass * instance.d_new(i, j) -
                 (assignment.z_old.col(k).array() * instance.d_old.col(k).array()).sum();
  pair.delta_l = mass * instance.loss_new(j) -
                 assignment.z_old.col(k).sum() * instance.loss_old(k);
  return pair;
}

}  // namespace mcoss
