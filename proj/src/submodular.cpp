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

#include "mcoss/submodular.hpp"

#include <algorithm>
#include <stdexcept>

#include "mcoss/lp.hpp"
#include "mcoss/rng.hpp"

namespace mcoss {

double eval_f(std::span<const Index> selected, const QMatrices& q) {
  const Index m = q.q_new.rows();
  const Index r = q.q_old.cols();
  if (r == 0 && selected.empty())
    throw std::invalid_argument("eval_f: undefined empty minimum (no old set, empty S)");
  for (Index j : selected)
    if (j < 0 || j >= m) throw std::invalid_argument("eval_f: index out of range");

  double total = 0.0;
  for (Index i = 0; i < m; ++i) {
    double best = r > 0 ? q.q_old.row(i).minCoeff() : kInf;
    for (Index j : selected) best = std::min(best, q.q_new(i, j));
    total += best;
  }
  return total;
}

SubsetState SubsetState::initial(const QMatrices& q) {
  SubsetState state;
  const Index m = q.q_new.rows();
  if (q.q_old.cols() > 0) {
    state.cached_row_min_ = q.q_old.rowwise().minCoeff();
    state.defined_ = true;
  } else {
    state.cached_row_min_ = Vector::Constant(m, kInf);
    state.defined_ = false;
  }
  return state;
}

void SubsetState::insert(Index x, const QMatrices& q) {
  cached_row_min_ = cached_row_min_.cwiseMin(q.q_new.col(x));
  selected_.push_back(x);
  defined_ = true;
}

double SubsetState::f_value() const {
  if (!defined_)
    throw std::invalid_argument("eval_f: undefined empty minimum (no old set, empty S)");
  return cached_row_min_.sum();
}

double SubsetState::f_with(Index x, const QMatrices& q) const {
  return cached_row_min_.cwiseMin(q.q_new.col(x)).sum();
}

std::vector<Index> greedy_select(const QMatrices& q, Index k, std::uint64_t rng_seed) {
  const Index m = q.q_new.rows();
  if (k < 1 || k > m)
    throw std::invalid_argument("greedy_select: k must lie in [1, m]");

  CounterRng rng(rng_seed);
  SubsetState state = SubsetState::initial(q);
  std::vector<bool> taken(static_cast<size_t>(m), false);
  std::vector<std::pair<double, Index>> scored;

  for (Index round = 0; round < k; ++round) {
    scored.clear();
    for (Index x = 0; x < m; ++x) {
      if (taken[static_cast<size_t>(x)]) continue;
      scored.emplace_back(state.f_with(x, q), x);
    }
    // Pool of the k candidates whose addition gives the lowest f value;
    // index order breaks exact score ties.
    const size_t pool = std::min<size_t>(static_cast<size_t>(k), scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<long>(pool),
                      scored.end());
    const Index pick = scored[rng.next_below(pool)].second;
    state.insert(pick, q);
    taken[static_cast<size_t>(pick)] = true;
  }
  return state.selected();
}

SubmodularityReport check_submodularity(const QMatrices& q, int trials,
                                        std::uint64_t rng_seed) {
  if (trials < 1) throw std::invalid_argument("check_submodularity: trials must be >= 1");
  const Index m = q.q_new.rows();
  const bool has_old = q.q_old.cols() > 0;
  if (m < 2)
    throw std::invalid_argument("check_submodularity: need at least two new frames");

  CounterRng rng(rng_seed);
  SubmodularityReport report;
  report.trials = trials;

  std::vector<Index> t_set, s_set, complement;
  for (int trial = 0; trial < trials; ++trial) {
    t_set.clear();
    s_set.clear();
    complement.clear();
    for (Index j = 0; j < m; ++j)
      (rng.next_u64() & 1 ? t_set : complement).push_back(j);
    if (complement.empty()) {
      // x must come from outside T.
      const size_t away = static_cast<size_t>(rng.next_below(t_set.size()));
      complement.push_back(t_set[away]);
      t_set.erase(t_set.begin() + static_cast<long>(away));
    }
    for (Index j : t_set)
      if (rng.next_u64() & 1) s_set.push_back(j);
    if (!has_old) {
      // f is undefined on empty sets without an old block.
      if (t_set.empty()) {
        t_set.push_back(complement.back());
        complement.pop_back();
        if (complement.empty()) continue;
      }
      if (s_set.empty()) s_set.push_back(t_set.front());
    }
    const Index x = complement[rng.next_below(complement.size())];

    const double f_t = eval_f(t_set, q);
    std::vector<Index> t_plus = t_set;
    t_plus.push_back(x);
    const double f_tx = eval_f(t_plus, q);

    const double f_s = eval_f(s_set, q);
    std::vector<Index> s_plus = s_set;
    s_plus.push_back(x);
    const double f_sx = eval_f(s_plus, q);

    if (f_sx > f_s + kTieMargin) ++report.monotonicity_violations;
    if (f_tx > f_t + kTieMargin) ++report.monotonicity_violations;
    if ((f_s - f_sx) < (f_t - f_tx) - kTieMargin) ++report.dr_violations;
  }
  return report;
}

}  // namespace mcoss
