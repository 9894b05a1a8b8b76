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

#include <algorithm>

#include "mcoss/mcoss_solver.hpp"
#include "mcoss/oracle.hpp"
#include "mcoss/thresh_solver.hpp"
#include "support/helpers.hpp"

using namespace mcoss;
using namespace mcoss::testing;

namespace {

SelectionInstance loss_instance() {
  return SelectionInstance::create(
      matrix_of({{0.1}, {0.1}}), matrix_of({{0.0, 0.9}, {0.9, 0.0}}),
      vector_of({0.2}), vector_of({0.5, 0.9}));
}

SelectionConfig config_of(double rho, double lambda, NormP p, double frac = 1.0) {
  SelectionConfig config;
  config.rho = rho;
  config.lambda = lambda;
  config.p = p;
  config.frac = frac;
  return config;
}

}  // namespace

TEST_CASE("oracle: single frame against a perfect old representative") {
  const auto instance = SelectionInstance::create(
      matrix_of({{0.0}}), matrix_of({{0.0}}), vector_of({0.0}), vector_of({0.0}));
  const auto result =
      brute_force_optimum(instance, config_of(1.0, 0.7, NormP::l1), Formulation::mcoss);
  CHECK(result.best_objective == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(result.best_assignment.z_old(0, 0) == 1.0);
  CHECK(result.enumerated_count == 2);
}

TEST_CASE("oracle: worked baseline example evaluates to 0.2") {
  const auto instance = SelectionInstance::create(
      matrix_of({{0.1}, {0.1}}), matrix_of({{0.0, 0.9}, {0.9, 0.0}}),
      vector_of({0.0}), vector_of({0.0, 0.0}));
  const auto result =
      brute_force_optimum(instance, config_of(1.0, 0.5, NormP::l1), Formulation::mcoss);
  CHECK(result.best_objective == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(result.best_assignment.z_old.col(0).sum() == 2.0);
  CHECK(result.enumerated_count == 9);
}

TEST_CASE("oracle: far old representative flips the baseline optimum to 0.2") {
  const auto instance = SelectionInstance::create(
      matrix_of({{0.9}, {0.9}}), matrix_of({{0.0, 0.9}, {0.9, 0.0}}),
      vector_of({0.0}), vector_of({0.0, 0.0}));
  const auto result =
      brute_force_optimum(instance, config_of(1.0, 0.1, NormP::l1), Formulation::mcoss);
  CHECK(result.best_objective == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(result.best_assignment.z_new(0, 0) == 1.0);
  CHECK(result.best_assignment.z_new(1, 1) == 1.0);
}

TEST_CASE("oracle: loss-only baseline optimum concentrates on the top loss") {
  const auto result =
      brute_force_optimum(loss_instance(), config_of(0.0, 0.0, NormP::l1),
                          Formulation::mcoss);
  CHECK(result.best_objective == doctest::Approx(-1.8).epsilon(1e-12));
  CHECK(result.best_assignment.z_new.col(1).sum() == 2.0);
}

TEST_CASE("oracle: worked thresholded example evaluates to -1.4") {
  const auto result = brute_force_optimum(loss_instance(),
                                          config_of(0.0, 0.0, NormP::linf),
                                          Formulation::threshmcoss);
  CHECK(result.best_objective == doctest::Approx(-1.4).epsilon(1e-12));
  // Both frames self-represent in the integral optimum.
  CHECK(result.best_assignment.z_new(0, 0) == 1.0);
  CHECK(result.best_assignment.z_new(1, 1) == 1.0);
}

TEST_CASE("oracle: self-consistency with the evaluation operations") {
  CounterRng rng(111);
  for (int trial = 0; trial < 20; ++trial) {
    const Index m = 2 + static_cast<Index>(rng.next_below(3));
    const Index r = static_cast<Index>(rng.next_below(3));
    const auto instance = random_instance(m, r, rng);
    const auto config = config_of(rng.next_double(), rng.next_double(),
                                  rng.next_u64() & 1 ? NormP::l1 : NormP::linf);

    const auto mc = brute_force_optimum(instance, config, Formulation::mcoss);
    CHECK(std::abs(eval_mcoss_objective(mc.best_assignment, instance, config) -
                   mc.best_objective) <= 1e-12);

    const auto th = brute_force_optimum(instance, config, Formulation::threshmcoss);
    // At integral assignments every used column carries mass >= 1 >= eps,
    // so the relaxed credit evaluation coincides with the 0/1 indicator.
    CHECK(std::abs(eval_thresh_objective(th.best_assignment, instance, config) -
                   th.best_objective) <= 1e-12);
  }
}

TEST_CASE("oracle: enumeration guard rejects huge instances") {
  CounterRng rng(5);
  const auto instance = random_instance(12, 3, rng);
  CHECK_THROWS_AS(
      brute_force_optimum(instance, config_of(0.5, 0.5, NormP::l1), Formulation::mcoss),
      std::invalid_argument);
}

TEST_CASE("theorem 1: high-loss representative passes both conditions") {
  const auto config = config_of(0.0, 0.0, NormP::l1);
  const auto oracle = brute_force_optimum(loss_instance(), config, Formulation::mcoss);
  const auto report = check_theorem1(oracle.best_assignment, loss_instance(), config);
  REQUIRE(report.size() == 1);
  CHECK(report[0].j == 1);
  CHECK(report[0].cond1 == Verdict::pass);
  CHECK(report[0].cond2 == Verdict::pass);
}

TEST_CASE("theorem 1: all-old optimum yields an empty report") {
  const auto instance = SelectionInstance::create(
      matrix_of({{0.1}, {0.1}}), matrix_of({{0.0, 0.9}, {0.9, 0.0}}),
      vector_of({0.0}), vector_of({0.0, 0.0}));
  const auto config = config_of(1.0, 0.5, NormP::l1);
  const auto oracle = brute_force_optimum(instance, config, Formulation::mcoss);
  CHECK(check_theorem1(oracle.best_assignment, instance, config).empty());
}

TEST_CASE("theorem 1: zero-mass columns are excluded from the report") {
  const auto instance = loss_instance();
  Assignment a;
  a.z_old = matrix_of({{0.0}, {0.0}});
  a.z_new = matrix_of({{1.0, 0.0}, {1.0, 0.0}});
  const auto report = check_theorem1(a, instance, config_of(0.5, 0.1, NormP::l1));
  REQUIRE(report.size() == 1);
  CHECK(report[0].j == 0);
}

TEST_CASE("theorem 1 necessity: oracle optima satisfy condition 1") {
  CounterRng rng(222);
  int checked_columns = 0;
  for (int trial = 0; trial < 220; ++trial) {
    const Index m = 2 + static_cast<Index>(rng.next_below(3));
    const Index r = static_cast<Index>(rng.next_below(4));
    const auto instance = random_instance(m, r, rng, /*min_loss_gap=*/1e-3);
    const auto config = config_of(0.25 * static_cast<double>(rng.next_below(5)),
                                  0.0, NormP::l1);
    const auto oracle = brute_force_optimum(instance, config, Formulation::mcoss);
    for (const auto& entry :
         check_theorem1(oracle.best_assignment, instance, config)) {
      // Failures must surface, never be absorbed.
      CHECK(entry.cond1 != Verdict::fail);
      ++checked_columns;
    }
  }
  CHECK(checked_columns > 50);
}

TEST_CASE("corollary 1: requires rho = 0") {
  const auto instance = loss_instance();
  Assignment a;
  a.z_old = matrix_of({{1.0}, {1.0}});
  a.z_new = Matrix::Zero(2, 2);
  CHECK_THROWS_AS(check_corollary1(a, instance, config_of(0.5, 0.0, NormP::l1)),
                  std::invalid_argument);
}

TEST_CASE("corollary 1: highest loss is the unique selection") {
  const auto config = config_of(0.0, 0.0, NormP::l1);
  const auto oracle = brute_force_optimum(loss_instance(), config, Formulation::mcoss);
  const auto report = check_corollary1(oracle.best_assignment, loss_instance(), config);
  REQUIRE(report.columns.size() == 1);
  CHECK(report.columns[0].j == 1);
  CHECK(report.columns[0].cond1 == Verdict::pass);
  CHECK(report.selected_count == 1);
  CHECK(report.count_claim == Verdict::pass);
}

TEST_CASE("corollary 1: tied losses are inconclusive") {
  const auto instance = SelectionInstance::create(
      matrix_of({{0.1}, {0.1}}), matrix_of({{0.0, 0.9}, {0.9, 0.0}}),
      vector_of({0.2}), vector_of({0.7, 0.7}));
  const auto config = config_of(0.0, 0.0, NormP::l1);
  const auto oracle = brute_force_optimum(instance, config, Formulation::mcoss);
  const auto report = check_corollary1(oracle.best_assignment, instance, config);
  CHECK(report.count_claim == Verdict::inconclusive);
}

TEST_CASE("corollary 1: dominant old losses select nothing") {
  const auto instance = SelectionInstance::create(
      matrix_of({{0.1}, {0.1}}), matrix_of({{0.0, 0.9}, {0.9, 0.0}}),
      vector_of({5.0}), vector_of({0.5, 0.9}));
  const auto config = config_of(0.0, 0.0, NormP::l1);
  const auto oracle = brute_force_optimum(instance, config, Formulation::mcoss);
  const auto report = check_corollary1(oracle.best_assignment, instance, config);
  CHECK(report.selected_count == 0);
  CHECK(report.count_claim == Verdict::pass);
}

TEST_CASE("corollary 1 count: oracle optima never select two columns") {
  CounterRng rng(333);
  for (int trial = 0; trial < 100; ++trial) {
    const Index m = 2 + static_cast<Index>(rng.next_below(3));
    const Index r = static_cast<Index>(rng.next_below(3));
    const auto instance = random_instance(m, r, rng, /*min_loss_gap=*/1e-3);
    const auto config = config_of(0.0, 0.0, NormP::l1);
    const auto oracle = brute_force_optimum(instance, config, Formulation::mcoss);
    const auto report = check_corollary1(oracle.best_assignment, instance, config);
    CHECK(report.count_claim == Verdict::pass);
  }
}

TEST_CASE("corollary 2 deltas: zero column mass leaves only the old term") {
  const auto instance = SelectionInstance::create(
      matrix_of({{0.4}}), matrix_of({{0.0}}), vector_of({0.1}), vector_of({0.3}));
  Assignment a;
  a.z_old = matrix_of({{1.0}});
  a.z_new = matrix_of({{0.0}});
  const auto pair =
      compute_corollary2_deltas(a, instance, config_of(0.5, 0.0, NormP::l1), 0, 0);
  CHECK(pair.delta_d == doctest::Approx(-0.4).epsilon(1e-15));
  CHECK(pair.delta_l == doctest::Approx(-0.1).epsilon(1e-15));
}

TEST_CASE("corollary 2 deltas: r=0 is rejected") {
  const auto instance = SelectionInstance::create(
      matrix_of({{0.0, 0.2}, {0.2, 0.0}}), vector_of({0.1, 0.2}));
  Assignment a;
  a.z_old = Matrix::Zero(2, 0);
  a.z_new = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(
      compute_corollary2_deltas(a, instance, config_of(0.5, 0.0, NormP::l1), 0, 0),
      std::invalid_argument);
}

TEST_CASE("corollary 2: flagged columns drop out along a rho sweep") {
  // On the far-old-representative instance, sweep rho upward with p=1 and
  // verify that any column flagged by delta_d < -delta_l at rho=0 is
  // indeed unselected at the top of the sweep.
  const auto instance = SelectionInstance::create(
      matrix_of({{0.05}, {0.05}}), matrix_of({{0.0, 0.9}, {0.9, 0.0}}),
      vector_of({0.6}), vector_of({0.5, 0.55}));
  std::vector<bool> flagged(2, false);
  {
    const auto config = config_of(0.0, 0.1, NormP::l1);
    const auto result = solve_mcoss(instance, config);
    for (Index j = 0; j < 2; ++j) {
      const double mass = result.assignment.z_new.col(j).sum();
      if (mass <= kTieMargin) continue;
      bool all_rows = true;
      for (Index i = 0; i < 2 && all_rows; ++i) {
        const auto pair = compute_corollary2_deltas(result.assignment, instance,
                                                    config, i, j);
        if (!(pair.delta_d < -pair.delta_l)) all_rows = false;
      }
      flagged[static_cast<size_t>(j)] = all_rows;
    }
  }
  for (Index j = 0; j < 2; ++j) {
    if (!flagged[static_cast<size_t>(j)]) continue;
    bool dropped = false;
    for (double rho : {0.2, 0.4, 0.6, 0.8, 1.0}) {
      const auto result = solve_mcoss(instance, config_of(rho, 0.1, NormP::l1));
      const auto& sel = result.report.selected_new;
      if (std::find(sel.begin(), sel.end(), j) == sel.end()) dropped = true;
    }
    CHECK(dropped);
  }
}
