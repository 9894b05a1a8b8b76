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

#include <doctest.h>

#include "mcoss/submodular.hpp"
#include "support/helpers.hpp"

using namespace mcoss;
using namespace mcoss::testing;

namespace {

// q_old column [0.3, 0.4]', q_new [[0.1, 0.2], [0.5, 0.0]].
QMatrices worked_q() {
  QMatrices q;
  q.q_old = matrix_of({{0.3}, {0.4}});
  q.q_new = matrix_of({{0.1, 0.2}, {0.5, 0.0}});
  return q;
}

}  // namespace

TEST_CASE("eval_f: empty selection falls back to old minima") {
  const QMatrices q = worked_q();
  CHECK(eval_f(std::vector<Index>{}, q) == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("eval_f: direct substitutions from the worked example") {
  const QMatrices q = worked_q();
  CHECK(eval_f(std::vector<Index>{0}, q) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(eval_f(std::vector<Index>{1}, q) == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("eval_f: both empty is an undefined minimum") {
  QMatrices q;
  q.q_old = Matrix(2, 0);
  q.q_new = matrix_of({{0.0, 0.1}, {0.1, 0.0}});
  CHECK_THROWS_AS(eval_f(std::vector<Index>{}, q), std::invalid_argument);
  CHECK(eval_f(std::vector<Index>{0}, q) == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("greedy_select: k bounds are enforced") {
  const QMatrices q = worked_q();
  CHECK_THROWS_AS(greedy_select(q, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(greedy_select(q, 3, 1), std::invalid_argument);
}

TEST_CASE("greedy_select: single candidate is forced") {
  QMatrices q;
  q.q_old = matrix_of({{0.5}});
  q.q_new = matrix_of({{0.0}});
  CHECK(greedy_select(q, 1, 12345) == std::vector<Index>{0});
}

TEST_CASE("greedy_select: k=1 pool is the singleton argmin") {
  // f({1}) = 0.2 < f({0}) = 0.5, so the pool of size one forces column 1
  // regardless of the seed.
  const QMatrices q = worked_q();
  for (std::uint64_t seed : {0ULL, 7ULL, 99ULL})
    CHECK(greedy_select(q, 1, seed) == std::vector<Index>{1});
}

TEST_CASE("greedy_select: fixed seed reproduces the selection") {
  CounterRng rng(55);
  const auto instance = random_instance(8, 2, rng);
  const QMatrices q = build_q(instance, 0.5);
  const auto a = greedy_select(q, 4, 4242);
  const auto b = greedy_select(q, 4, 4242);
  CHECK(a == b);
}

TEST_CASE("greedy_select: full cardinality reaches the all-column value") {
  CounterRng rng(66);
  const auto instance = random_instance(6, 1, rng);
  const QMatrices q = build_q(instance, 0.7);
  std::vector<Index> all(6);
  for (Index j = 0; j < 6; ++j) all[static_cast<size_t>(j)] = j;
  const auto selected = greedy_select(q, 6, 9);
  CHECK(eval_f(selected, q) == doctest::Approx(eval_f(all, q)).epsilon(1e-12));
}

TEST_CASE("subset state: incremental cache equals recomputation") {
  CounterRng rng(77);
  const auto instance = random_instance(7, 2, rng);
  const QMatrices q = build_q(instance, 0.4);
  SubsetState state = SubsetState::initial(q);
  for (Index x : {Index{3}, Index{0}, Index{5}}) {
    state.insert(x, q);
    for (Index i = 0; i < 7; ++i) {
      double expect = q.q_old.row(i).minCoeff();
      for (Index j : state.selected()) expect = std::min(expect, q.q_new(i, j));
      CHECK(state.cached_row_min()(i) == doctest::Approx(expect).epsilon(1e-15));
    }
    CHECK(state.f_value() == doctest::Approx(eval_f(state.selected(), q)).epsilon(1e-15));
  }
}

TEST_CASE("monotonicity: adding a candidate never raises f") {
  CounterRng rng(88);
  const auto instance = random_instance(6, 1, rng);
  const QMatrices q = build_q(instance, 0.5);
  std::vector<Index> s;
  for (Index x = 0; x < 6; ++x) {
    std::vector<Index> sx = s;
    sx.push_back(x);
    CHECK(eval_f(sx, q) <= eval_f(s, q) + 1e-12);
    if (x % 2 == 0) s.push_back(x);
  }
}

TEST_CASE("check_submodularity: no violations on random instances") {
  CounterRng rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    const Index r = static_cast<Index>(rng.next_below(3));
    const auto instance = random_instance(6, r, rng);
    const QMatrices q = build_q(instance, rng.next_double());
    const auto report = check_submodularity(q, 1000, 1234 + trial);
    CHECK(report.trials == 1000);
    CHECK(report.total() == 0);
  }
}

TEST_CASE("check_submodularity validates inputs") {
  const QMatrices q = worked_q();
  CHECK_THROWS_AS(check_submodularity(q, 0, 1), std::invalid_argument);
}
