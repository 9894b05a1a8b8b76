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

#ifndef MCOSS_TESTS_SUPPORT_HELPERS_HPP_
#define MCOSS_TESTS_SUPPORT_HELPERS_HPP_

#include <algorithm>
#include <optional>
#include <vector>

#include "mcoss/instance.hpp"
#include "mcoss/lp.hpp"
#include "mcoss/rng.hpp"

namespace mcoss::testing {

inline Matrix matrix_of(std::initializer_list<std::initializer_list<double>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r > 0 ? static_cast<Index>(rows.begin()->size()) : 0;
  Matrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline Vector vector_of(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

// Random instance with entries in [0,1]; optional minimum gap between any
// two losses (old and new pooled) so strict-inequality checks stay
// tie-free.
inline SelectionInstance random_instance(Index m, Index r, CounterRng& rng,
                                         double min_loss_gap = 0.0) {
  Matrix d_old(m, r);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < r; ++j) d_old(i, j) = rng.next_double();
  Matrix d_new = Matrix::Zero(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = i + 1; j < m; ++j) d_new(i, j) = d_new(j, i) = rng.next_double();

  auto draw_losses = [&]() {
    Vector all(r + m);
    for (Index j = 0; j < r + m; ++j) all(j) = rng.next_double();
    return all;
  };
  Vector all = draw_losses();
  if (min_loss_gap > 0.0) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      bool ok = true;
      for (Index a = 0; a < all.size() && ok; ++a)
        for (Index b = a + 1; b < all.size() && ok; ++b)
          if (std::abs(all(a) - all(b)) < min_loss_gap) ok = false;
      if (ok) break;
      all = draw_losses();
    }
  }
  return SelectionInstance::create(std::move(d_old), std::move(d_new),
                                   all.head(r), all.tail(m));
}

// Exhaustive vertex enumeration for small LPs with finite boxes: every
// basic point is the solution of n active constraints (equalities always
// active, plus a choice of inequality rows and bounds). Independent of
// the simplex implementation under test.
struct VertexOracleResult {
  bool feasible = false;
  double objective = 0.0;
  Vector x;
};

inline VertexOracleResult vertex_enumeration_oracle(const LpProblem& p,
                                                    double tol = 1e-9) {
  const Index n = p.num_vars();
  const Index e = p.a_eq.rows();
  const Index u = p.a_ub.rows();

  // Candidate active rows: ub constraints, then lower and upper bounds.
  struct Candidate {
    Vector row;
    double rhs;
  };
  std::vector<Candidate> candidates;
  for (Index i = 0; i < u; ++i) candidates.push_back({p.a_ub.row(i), p.b_ub(i)});
  for (Index j = 0; j < n; ++j) {
    Vector row = Vector::Zero(n);
    row(j) = 1.0;
    candidates.push_back({row, p.lower(j)});
    candidates.push_back({row, p.upper(j)});
  }

  VertexOracleResult best;
  const Index need = n - e;
  if (need < 0) return best;

  std::vector<Index> pick(static_cast<size_t>(need));
  auto feasible_at = [&](const Vector& x) {
    if (e > 0 && (p.a_eq * x - p.b_eq).cwiseAbs().maxCoeff() > tol) return false;
    if (u > 0 && (p.a_ub * x - p.b_ub).maxCoeff() > tol) return false;
    for (Index j = 0; j < n; ++j)
      if (x(j) < p.lower(j) - tol || x(j) > p.upper(j) + tol) return false;
    return true;
  };
  auto try_combo = [&]() {
    Matrix a(n, n);
    Vector b(n);
    for (Index i = 0; i < e; ++i) {
      a.row(i) = p.a_eq.row(i);
      b(i) = p.b_eq(i);
    }
    for (Index i = 0; i < need; ++i) {
      const auto& cand = candidates[static_cast<size_t>(pick[static_cast<size_t>(i)])];
      if (!std::isfinite(cand.rhs)) return;
      a.row(e + i) = cand.row.transpose();
      b(e + i) = cand.rhs;
    }
    Eigen::FullPivLU<Matrix> lu(a);
    if (!lu.isInvertible()) return;
    const Vector x = lu.solve(b);
    if (!feasible_at(x)) return;
    const double obj = p.c.dot(x);
    if (!best.feasible || obj < best.objective) {
      best.feasible = true;
      best.objective = obj;
      best.x = x;
    }
  };

  // Enumerate all combinations of `need` candidates.
  const Index total = static_cast<Index>(candidates.size());
  if (need == 0) {
    try_combo();
    return best;
  }
  for (Index i = 0; i < need; ++i) pick[static_cast<size_t>(i)] = i;
  while (true) {
    try_combo();
    Index level = need - 1;
    while (level >= 0 && pick[static_cast<size_t>(level)] == total - (need - level)) --level;
    if (level < 0) break;
    ++pick[static_cast<size_t>(level)];
    for (Index i = level + 1; i < need; ++i)
      pick[static_cast<size_t>(i)] = pick[static_cast<size_t>(i - 1)] + 1;
  }
  return best;
}

// Closed-form optimum of the thresholded LP for rho = 0 whenever the
// cardinality budget cannot bind (p = inf with frac*m >= 1, or frac = 1):
// credits are a separable concave allocation of the total mass m over
// column caps epsilon, so a greedy fill by descending loss is optimal.
// The pairwise term carries zero weight, so only credits matter.
inline double thresh_rate_oracle_rho0(const SelectionInstance& instance,
                                      double epsilon) {
  std::vector<double> losses;
  for (Index j = 0; j < instance.r(); ++j) losses.push_back(instance.loss_old(j));
  for (Index j = 0; j < instance.m(); ++j) losses.push_back(instance.loss_new(j));
  std::sort(losses.begin(), losses.end(), std::greater<double>());
  double remaining = static_cast<double>(instance.m());
  double credit = 0.0;
  for (double loss : losses) {
    if (remaining <= 0.0) break;
    const double mass = std::min(epsilon, remaining);
    credit += loss * mass / epsilon;
    remaining -= mass;
  }
  return -credit;
}

}  // namespace mcoss::testing

#endif  // MCOSS_TESTS_SUPPORT_HELPERS_HPP_
