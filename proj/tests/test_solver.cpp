// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "lll/criteria.hpp"
#include "lll/error.hpp"
#include "lll/solver.hpp"
#include "support.hpp"

using namespace lll;
using lll_test::clause_instance;

TEST_CASE("zero events terminate immediately") {
  std::vector<VariableSpec> vars(3, VariableSpec{4, {}});
  ProblemInstance inst(vars, {});
  SampleStream s(1, inst);
  auto r = solve_sequential(inst, s);
  CHECK(r.terminated);
  CHECK(r.steps_used == 0);
  CHECK(r.log.empty());
  for (VarId v = 0; v < 3; ++v) CHECK(r.assignment[v] == s.peek_at(v, 0));
}

TEST_CASE("single clause: mean resamples equal x/(1-x) at x = 1/4") {
  auto inst = clause_instance(2, {{1, 2}});
  constexpr int kSeeds = 100000;
  std::vector<double> n;
  n.reserve(kSeeds);
  for (int seed = 0; seed < kSeeds; ++seed) {
    SampleStream s(seed, inst);
    n.push_back(static_cast<double>(solve_sequential(inst, s).steps_used));
  }
  const auto ms = lll_test::mean_se(n);
  CHECK(std::abs(ms.mean - 1.0 / 3.0) <= 0.01);
}

TEST_CASE("terminating runs satisfy every predicate and totals agree") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    auto inst = clause_instance(lll_test::random_bounded_cnf(rng, 60, 40, 3, 2));
    for (auto policy : {SelectionPolicy::lowest_id(), SelectionPolicy::random_uniform()}) {
      SampleStream s(trial, inst);
      auto r = solve_sequential(inst, s, policy);
      REQUIRE(r.terminated);
      CHECK(lll_test::avoids_all(inst, r.assignment));
      std::uint64_t sum = 0;
      for (auto c : r.log.per_event_counts()) sum += c;
      CHECK(sum == r.steps_used);
      CHECK(r.log.size() == r.steps_used);
    }
  }
}

TEST_CASE("log validity and resampling locality") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    auto inst = clause_instance(lll_test::random_bounded_cnf(rng, 30, 25, 3, 3));
    SampleStream s(trial, inst);
    auto r = solve_sequential(inst, s, SelectionPolicy::random_uniform(), 10000);
    REQUIRE(r.terminated);

    // Independent replay from the per-variable sequences.
    Assignment a(inst.num_variables());
    std::vector<std::uint64_t> next(inst.num_variables(), 1);
    for (VarId v = 0; v < a.size(); ++v) a[v] = s.peek_at(v, 0);
    for (auto e : r.log.steps()) {
      CHECK(inst.is_violated(e, a));
      auto before = a;
      for (auto v : inst.event(e).support) a[v] = s.peek_at(v, next[v]++);
      for (VarId v = 0; v < a.size(); ++v) {
        const auto& sup = inst.event(e).support;
        if (!std::binary_search(sup.begin(), sup.end(), v)) CHECK(a[v] == before[v]);
      }
    }
    CHECK(a == r.assignment);

    SampleStream fresh(trial, inst);
    CHECK(replay_log(inst, r.log, fresh, r.assignment).empty());
  }
}

TEST_CASE("replay detects a forged log") {
  auto inst = clause_instance(4, {{1, 2}, {3, 4}});
  ExecutionLog forged(2);
  // Seed chosen so event 1 starts satisfied.
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SampleStream s(seed, inst);
    Assignment a{s.peek_at(0, 0), s.peek_at(1, 0), s.peek_at(2, 0), s.peek_at(3, 0)};
    if (inst.is_violated(1, a)) continue;
    forged.append(1);
    SampleStream fresh(seed, inst);
    CHECK_FALSE(replay_log(inst, forged, fresh, a).empty());
    break;
  }
}

TEST_CASE("custom policy must return a violated event") {
  auto inst = clause_instance(3, {{1, 2}, {2, 3}});
  SampleStream s(0, inst);
  auto highest = SelectionPolicy::custom([](std::span<const EventId> v) { return v.back(); });
  auto r = solve_sequential(inst, s, highest, 1000);
  CHECK(r.terminated);
  CHECK(lll_test::avoids_all(inst, r.assignment));

  auto liar = SelectionPolicy::custom([](std::span<const EventId>) { return EventId{99}; });
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    SampleStream t(seed, inst);
    Assignment a{t.peek_at(0, 0), t.peek_at(1, 0), t.peek_at(2, 0)};
    if (lll_test::avoids_all(inst, a)) continue;
    CHECK_THROWS_AS(solve_sequential(inst, t, liar), Error);
    break;
  }
}

TEST_CASE("step limit reports non-termination") {
  // x1 and -x1 as unit clauses: unsatisfiable.
  auto inst = clause_instance(1, {{1}, {-1}});
  SampleStream s(3, inst);
  auto r = solve_sequential(inst, s, SelectionPolicy::lowest_id(), 25);
  CHECK_FALSE(r.terminated);
  CHECK(r.steps_used == 25);
  CHECK(r.log.size() == 25);
}

TEST_CASE("lopsided entry point is the same execution") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    auto inst = clause_instance(lll_test::random_bounded_cnf(rng, 20, 15, 3, 3));
    auto gl = build_lopsidependency_graph(inst);
    SampleStream a(trial, inst), b(trial, inst);
    auto ra = solve_sequential(inst, a);
    auto rb = solve_lopsided(inst, gl, b);
    CHECK(ra.log == rb.log);
    CHECK(ra.assignment == rb.assignment);
  }
  auto inst = clause_instance(2, {{1, 2}});
  SampleStream s(0, inst);
  CHECK_THROWS_AS(solve_lopsided(inst, build_dependency_graph(inst), s), Error);
}

TEST_CASE("default step limit") {
  CHECK(default_max_steps(0.0) == 1024);
  CHECK(default_max_steps(2.0) == 1152);
  CHECK(default_max_steps(0.1) == 1031);  // ceil(1030.4)
}

TEST_CASE("log text round trip") {
  ExecutionLog log(3);
  log.begin_round();
  log.append(0);
  log.append(2);
  log.begin_round();
  log.append(1);
  CHECK(log.to_text() == "#round 1\n0\n2\n#round 2\n1\n");
  CHECK(ExecutionLog::from_text(log.to_text(), 3) == log);
  CHECK(log.round_of(1) == 1);
  CHECK(log.round_of(2) == 1);
  CHECK(log.round_of(3) == 2);
  CHECK(log.per_event_counts() == std::vector<std::uint64_t>{1, 1, 1});

  ExecutionLog plain(2);
  plain.append(1);
  plain.append(1);
  CHECK(plain.to_text() == "1\n1\n");
  CHECK(ExecutionLog::from_text("1\n1\n", 2) == plain);
  CHECK_THROWS_AS(ExecutionLog::from_text("5\n", 2), Error);
}

TEST_CASE("budget holds under every shipped policy") {
  std::mt19937_64 rng(77);
  auto f = lll_test::random_bounded_cnf(rng, 90, 40, 4, 2);
  auto inst = clause_instance(f);
  auto g = build_dependency_graph(inst);
  auto sym = symmetric_x(inst, g);
  REQUIRE(check_x_condition(inst, g, sym.x).pass);
  const double budget = resample_budget(sym.x);
  for (auto policy : {SelectionPolicy::lowest_id(), SelectionPolicy::random_uniform()}) {
    std::vector<double> steps;
    for (int seed = 0; seed < 2000; ++seed) {
      SampleStream s(seed, inst);
      steps.push_back(static_cast<double>(solve_sequential(inst, s, policy).steps_used));
    }
    const auto ms = lll_test::mean_se(steps);
    CHECK(ms.mean <= budget + 3 * ms.se);
  }
}
