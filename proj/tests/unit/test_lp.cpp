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

#include <cstring>
#include <sstream>

#include "mcoss/lp.hpp"
#include "support/helpers.hpp"

using namespace mcoss;
using namespace mcoss::testing;

TEST_CASE("lp: maximize x over [0,1] via minimizing -x") {
  LpProblem p = LpProblem::sized(1, 0, 0);
  p.c(0) = -1.0;
  p.upper(0) = 1.0;
  const LpSolution sol = solve_lp(p);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.x(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sol.objective_value == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("lp: contradictory bound and row is infeasible") {
  LpProblem p = LpProblem::sized(1, 0, 1);
  p.c(0) = 1.0;
  p.a_ub(0, 0) = -1.0;  // -x <= -2, i.e. x >= 2
  p.b_ub(0) = -2.0;
  p.upper(0) = 1.0;
  CHECK(solve_lp(p).status == LpStatus::infeasible);
}

TEST_CASE("lp: missing upper bound makes -x unbounded") {
  LpProblem p = LpProblem::sized(1, 0, 0);
  p.c(0) = -1.0;
  CHECK(solve_lp(p).status == LpStatus::unbounded);
}

TEST_CASE("lp: equality row with two variables") {
  LpProblem p = LpProblem::sized(2, 1, 0);
  p.c(0) = 1.0;
  p.a_eq(0, 0) = 1.0;
  p.a_eq(0, 1) = 1.0;
  p.b_eq(0) = 1.0;
  p.upper(0) = p.upper(1) = 1.0;
  const LpSolution sol = solve_lp(p);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.x(0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(sol.x(1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("lp: free variable handled by splitting") {
  LpProblem p = LpProblem::sized(1, 1, 0);
  p.c(0) = 1.0;
  p.a_eq(0, 0) = 2.0;
  p.b_eq(0) = -3.0;
  p.lower(0) = -kInf;
  const LpSolution sol = solve_lp(p);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.x(0) == doctest::Approx(-1.5).epsilon(1e-12));
}

TEST_CASE("lp: negative lower bounds are shifted") {
  LpProblem p = LpProblem::sized(1, 0, 1);
  p.c(0) = 1.0;
  p.lower(0) = -4.0;
  p.upper(0) = 5.0;
  p.a_ub(0, 0) = -1.0;  // x >= -2
  p.b_ub(0) = 2.0;
  const LpSolution sol = solve_lp(p);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.x(0) == doctest::Approx(-2.0).epsilon(1e-10));
}

TEST_CASE("lp: determinism, identical problems give identical bytes") {
  CounterRng rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    LpProblem p = LpProblem::sized(4, 1, 3);
    for (Index j = 0; j < 4; ++j) {
      p.c(j) = rng.next_double() - 0.5;
      p.upper(j) = 1.0;
      p.a_eq(0, j) = 1.0;
    }
    p.b_eq(0) = 2.0;
    for (Index i = 0; i < 3; ++i) {
      for (Index j = 0; j < 4; ++j) p.a_ub(i, j) = rng.next_double() - 0.3;
      p.b_ub(i) = 0.5 + rng.next_double();
    }
    const LpSolution a = solve_lp(p);
    const LpSolution b = solve_lp(p);
    REQUIRE(a.status == b.status);
    if (a.status == LpStatus::optimal) {
      CHECK(std::memcmp(a.x.data(), b.x.data(),
                        sizeof(double) * static_cast<size_t>(a.x.size())) == 0);
      CHECK(a.iterations == b.iterations);
    }
  }
}

TEST_CASE("lp: weak duality against constructed feasible points") {
  CounterRng rng(31);
  int solved = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.next_below(4));
    LpProblem p = LpProblem::sized(n, 0, 2);
    Vector feasible(n);
    for (Index j = 0; j < n; ++j) {
      p.c(j) = 2.0 * rng.next_double() - 1.0;
      p.upper(j) = 1.0;
      feasible(j) = rng.next_double();
    }
    // Build rows that the sampled point satisfies, so feasibility is known.
    for (Index i = 0; i < 2; ++i) {
      for (Index j = 0; j < n; ++j) p.a_ub(i, j) = 2.0 * rng.next_double() - 1.0;
      p.b_ub(i) = p.a_ub.row(i).dot(feasible) + rng.next_double();
    }
    const LpSolution sol = solve_lp(p);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.objective_value <= p.c.dot(feasible) + 1e-8);
    ++solved;
  }
  CHECK(solved == 60);
}

TEST_CASE("lp: random small problems match vertex enumeration") {
  CounterRng rng(77);
  int checked = 0;
  for (int trial = 0; trial < 250; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.next_below(5));  // 2..6
    const Index eq = static_cast<Index>(rng.next_below(2));     // 0..1
    const Index ub = 1 + static_cast<Index>(rng.next_below(5)); // 1..5
    LpProblem p = LpProblem::sized(n, eq, ub);
    for (Index j = 0; j < n; ++j) {
      p.c(j) = 2.0 * rng.next_double() - 1.0;
      p.lower(j) = rng.next_below(4) == 0 ? -rng.next_double() : 0.0;
      p.upper(j) = p.lower(j) + 0.5 + rng.next_double();
    }
    for (Index i = 0; i < eq; ++i) {
      for (Index j = 0; j < n; ++j) p.a_eq(i, j) = 2.0 * rng.next_double() - 1.0;
      p.b_eq(i) = rng.next_double() - 0.3;
    }
    for (Index i = 0; i < ub; ++i) {
      for (Index j = 0; j < n; ++j) p.a_ub(i, j) = 2.0 * rng.next_double() - 1.0;
      p.b_ub(i) = rng.next_double() - 0.2;
    }

    const VertexOracleResult oracle = vertex_enumeration_oracle(p);
    const LpSolution sol = solve_lp(p);
    if (oracle.feasible) {
      REQUIRE(sol.status == LpStatus::optimal);
      CHECK(std::abs(sol.objective_value - oracle.objective) <= 1e-6);
      ++checked;
    } else {
      CHECK(sol.status == LpStatus::infeasible);
    }
  }
  CHECK(checked >= 100);  // most sampled boxes should be feasible
}

TEST_CASE("lp: dump emits one row per constraint") {
  LpProblem p = LpProblem::sized(2, 1, 1);
  p.c << 1.0, 2.0;
  p.a_eq(0, 0) = 1.0;
  p.b_eq(0) = 1.0;
  p.a_ub(0, 1) = 1.0;
  p.b_ub(0) = 2.0;
  std::ostringstream out;
  dump_lp_csv(p, out);
  const std::string text = out.str();
  CHECK(text.find("objective") != std::string::npos);
  CHECK(text.find("\neq,") != std::string::npos);
  CHECK(text.find("\nub,") != std::string::npos);
}
