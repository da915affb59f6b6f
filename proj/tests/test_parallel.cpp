// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "lll/criteria.hpp"
#include "lll/error.hpp"
#include "lll/parallel.hpp"
#include "lll/witness_tree.hpp"
#include "support.hpp"

using namespace lll;
using lll_test::clause_instance;

namespace {

bool independent(std::span<const EventId> s, const DependencyGraph& g) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (g.in_inclusive(s[i], s[j])) return false;
  return true;
}

bool maximal_in(std::span<const EventId> s, std::span<const EventId> violated,
                const DependencyGraph& g) {
  for (EventId v : violated) {
    if (std::find(s.begin(), s.end(), v) != s.end()) continue;
    bool blocked = false;
    for (EventId e : s) blocked |= g.adjacent(v, e);
    if (!blocked) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("greedy mis") {
  std::vector<std::vector<EventId>> adj{{1}, {0}};
  DependencyGraph g(GraphKind::standard, adj);
  std::vector<EventId> both{0, 1};
  CHECK(greedy_mis(both, g) == std::vector<EventId>{0});

  DependencyGraph empty(GraphKind::standard, {{}, {}, {}});
  std::vector<EventId> three{0, 1, 2};
  CHECK(greedy_mis(three, empty) == three);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    auto inst = clause_instance(lll_test::random_bounded_cnf(rng, 15, 12, 3, 3));
    auto dg = build_dependency_graph(inst);
    std::vector<EventId> violated;
    for (EventId e = 0; e < inst.num_events(); ++e)
      if (rng() & 1) violated.push_back(e);
    auto s = greedy_mis(violated, dg);
    CHECK(independent(s, dg));
    CHECK(maximal_in(s, violated, dg));
  }
}

TEST_CASE("luby step") {
  std::vector<std::vector<EventId>> adj{{1}, {0}};
  DependencyGraph g(GraphKind::standard, adj);
  std::vector<VariableSpec> vars(1, VariableSpec::fair_coin());
  SampleStream s(0, vars);
  std::vector<EventId> one{1};
  CHECK(luby_step_mis(one, g, s) == one);
  std::vector<EventId> both{0, 1};
  for (int i = 0; i < 100; ++i) CHECK(luby_step_mis(both, g, s).size() == 1);

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    auto inst = clause_instance(lll_test::random_bounded_cnf(rng, 15, 12, 3, 3));
    auto dg = build_dependency_graph(inst);
    SampleStream src(trial, inst);
    std::vector<EventId> violated;
    for (EventId e = 0; e < inst.num_events(); ++e)
      if (rng() & 1) violated.push_back(e);
    auto sel = luby_step_mis(violated, dg, src);
    CHECK(independent(sel, dg));
    CHECK(sel.empty() == violated.empty());
    for (auto e : sel) CHECK(std::binary_search(violated.begin(), violated.end(), e));
  }
}

TEST_CASE("zero events: zero rounds") {
  std::vector<VariableSpec> vars(2, VariableSpec::fair_coin());
  ProblemInstance inst(vars, {});
  SampleStream s(0, inst);
  auto r = solve_parallel(inst, build_dependency_graph(inst), s);
  CHECK(r.terminated);
  CHECK(r.rounds.empty());
  CHECK(r.log.empty());
}

TEST_CASE("adjacent violated pair: one event in round one") {
  auto inst = clause_instance(3, {{1, 2}, {2, 3}});
  auto g = build_dependency_graph(inst);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SampleStream s(seed, inst);
    Assignment a{s.peek_at(0, 0), s.peek_at(1, 0), s.peek_at(2, 0)};
    if (lll_test::scan_violated(inst, a).size() != 2) continue;
    auto r = solve_parallel(inst, g, s);
    REQUIRE(!r.rounds.empty());
    CHECK(r.rounds[0].selected == std::vector<EventId>{0});
    CHECK(r.rounds[0].resampled == std::vector<VarId>{0, 1});
    return;
  }
  FAIL("no seed starts with both clauses violated");
}

TEST_CASE("rounds: independence, depth equals round minus one, replay") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 60; ++trial) {
    auto inst = clause_instance(lll_test::random_bounded_cnf(rng, 40, 30, 3, 3));
    auto g = build_dependency_graph(inst);
    SampleStream s(trial, inst);
    auto r = solve_parallel(inst, g, s, MisPolicy::greedy, 10000);
    REQUIRE(r.terminated);
    CHECK(lll_test::avoids_all(inst, r.assignment));
    CHECK(r.log.num_rounds() == r.rounds.size());
    for (const auto& round : r.rounds) {
      CHECK(independent(round.selected, g));
      CHECK(std::is_sorted(round.selected.begin(), round.selected.end()));
    }
    for (std::size_t t = 1; t <= r.log.size(); ++t)
      CHECK(build_witness_tree(r.log, t, g).depth() + 1 == r.log.round_of(t));
    SampleStream fresh(trial, inst);
    CHECK(replay_log(inst, r.log, fresh, r.assignment).empty());
  }
}

TEST_CASE("luby runs terminate and replay") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    auto inst = clause_instance(lll_test::random_bounded_cnf(rng, 40, 30, 3, 3));
    auto g = build_dependency_graph(inst);
    SampleStream s(trial, inst);
    auto r = solve_parallel(inst, g, s, MisPolicy::luby_step, 10000);
    REQUIRE(r.terminated);
    CHECK(lll_test::avoids_all(inst, r.assignment));
    SampleStream fresh(trial, inst);
    CHECK(replay_log(inst, r.log, fresh, r.assignment).empty());
  }
}

TEST_CASE("round limit and graph kind") {
  auto inst = clause_instance(1, {{1}, {-1}});
  SampleStream s(1, inst);
  auto r = solve_parallel(inst, build_dependency_graph(inst), s, MisPolicy::greedy, 7);
  CHECK_FALSE(r.terminated);
  CHECK(r.rounds.size() == 7);

  auto ok = clause_instance(2, {{1, 2}});
  SampleStream t(1, ok);
  CHECK_THROWS_AS(solve_parallel(ok, build_lopsidependency_graph(ok), t), Error);
}

TEST_CASE("rounds grow slowly with the budget") {
  // Mean rounds against log(budget) on growing eps = 0.2 instances; the
  // fitted slope stays within a modest multiple of 1/eps.
  std::vector<double> xs, ys;
  for (std::uint32_t m : {10u, 40u, 160u, 640u}) {
    std::mt19937_64 rng(m);
    auto inst = clause_instance(lll_test::random_bounded_cnf(rng, 4 * m, m, 4, 2));
    auto g = build_dependency_graph(inst);
    XAssignment x(std::vector<double>(inst.num_events(), 0.2));
    REQUIRE(check_x_condition(inst, g, x, 0.2).pass);
    std::vector<double> rounds;
    for (int seed = 0; seed < 300; ++seed) {
      SampleStream s(seed, inst);
      rounds.push_back(static_cast<double>(solve_parallel(inst, g, s).rounds.size()));
    }
    xs.push_back(std::log(resample_budget(x)));
    ys.push_back(lll_test::mean_se(rounds).mean);
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double slope = sxy / sxx;
  MESSAGE("rounds ~ " << slope << " * log(budget); 1/eps = 5");
  CHECK(slope >= 0.0);
  CHECK(slope <= 5.0);
}
