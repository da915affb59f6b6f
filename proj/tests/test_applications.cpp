// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <set>

#include "lll/applications.hpp"
#include "lll/error.hpp"
#include "lll/solver.hpp"
#include "support.hpp"

using namespace lll;

namespace {

bool clause_falsified(const std::vector<int>& clause, const Assignment& a) {
  for (int l : clause) {
    const Value v = a[std::abs(l) - 1];
    if ((l > 0) == (v == 1)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("cnf validation") {
  CHECK_THROWS_AS((CnfFormula{2, {{1, 3}}}.validate()), Error);
  CHECK_THROWS_AS((CnfFormula{2, {{1, 0}}}.validate()), Error);
  CHECK_THROWS_AS((CnfFormula{2, {{}}}.validate()), Error);
  CHECK_THROWS_AS((CnfFormula{2, {{1, -1}}}.validate()), Error);
  CHECK_NOTHROW((CnfFormula{2, {{1, -2}, {2}}}.validate()));
  CHECK((CnfFormula{3, {{1, -2}, {2, 3}}}.occurrence_counts()) == std::vector<std::uint32_t>{1, 2, 1});
}

TEST_CASE("cnf events match clause semantics") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 30; ++trial) {
    auto f = lll_test::random_bounded_cnf(rng, 8, 5, 1 + trial % 4, 3);
    auto ci = cnf_to_instance(f);
    REQUIRE(ci.instance.num_events() == f.clauses.size());
    for (EventId e = 0; e < ci.instance.num_events(); ++e)
      CHECK(ci.instance.event(e).prob_bound == std::ldexp(1.0, -static_cast<int>(f.clauses[e].size())));
    lll_test::for_each_assignment(ci.instance, [&](const Assignment& a) {
      for (EventId e = 0; e < ci.instance.num_events(); ++e)
        CHECK(ci.instance.is_violated(e, a) == clause_falsified(f.clauses[e], a));
      return false;
    });
  }
}

TEST_CASE("cnf conflicts equal brute-force lopsidependence") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 30; ++trial) {
    auto f = lll_test::random_bounded_cnf(rng, 6, 6, 3, 3);
    auto ci = cnf_to_instance(f);
    std::set<std::pair<EventId, EventId>> conflicts;
    for (auto [a, b] : ci.conflicts) conflicts.insert({std::min(a, b), std::max(a, b)});
    for (EventId a = 0; a < ci.instance.num_events(); ++a)
      for (EventId b = a + 1; b < ci.instance.num_events(); ++b)
        CHECK(conflicts.count({a, b}) == (detect_lopsidependent(ci.instance, a, b) ? 1u : 0u));
  }
}

TEST_CASE("cnf conditional probability matches enumeration") {
  std::mt19937_64 rng(79);
  auto f = lll_test::random_bounded_cnf(rng, 10, 4, 5, 3);
  auto ci = cnf_to_instance(f);
  for (EventId e = 0; e < ci.instance.num_events(); ++e) {
    const auto k = ci.instance.event(e).support.size();
    // Each position: free, 0 or 1.
    std::vector<std::optional<Value>> fixed(k);
    std::size_t combos = 1;
    for (std::size_t i = 0; i < k; ++i) combos *= 3;
    for (std::size_t c = 0; c < combos; ++c) {
      std::size_t r = c;
      for (std::size_t i = 0; i < k; ++i, r /= 3)
        fixed[i] = r % 3 == 0 ? std::nullopt : std::optional<Value>(r % 3 - 1);
      CHECK(ci.instance.event(e).conditional_prob(fixed) ==
            doctest::Approx(enumerate_conditional_probability(ci.instance, e, fixed)));
    }
  }
}

TEST_CASE("hypergraph events") {
  CHECK_THROWS_AS((Hypergraph{3, {{0}}}.validate()), Error);
  CHECK_THROWS_AS((Hypergraph{3, {{0, 3}}}.validate()), Error);
  CHECK_THROWS_AS((Hypergraph{3, {{1, 1}}}.validate()), Error);
  auto inst = hypergraph_to_instance(Hypergraph{4, {{0, 1, 2}, {1, 3}}});
  CHECK(inst.event(0).prob_bound == 0.25);
  CHECK(inst.event(1).prob_bound == 0.5);
  CHECK(exact_probability(inst, 0) == doctest::Approx(0.25));
  CHECK(inst.is_violated(0, {1, 1, 1, 0}));
  CHECK_FALSE(inst.is_violated(0, {1, 0, 1, 0}));
  CHECK(inst.is_violated(1, {0, 0, 1, 0}));
}

TEST_CASE("hypergraph solve agrees with brute-force colourability") {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 20; ++trial) {
    auto hg = lll_test::random_hypergraph(rng, 12, 6, 4, 2);
    auto inst = hypergraph_to_instance(hg);
    const bool colourable = lll_test::for_each_assignment(
        inst, [&](const Assignment& a) { return lll_test::avoids_all(inst, a); });
    REQUIRE(colourable);
    SampleStream src(trial, inst);
    auto r = solve_sequential(inst, src);
    CHECK(r.terminated);
    for (const auto& edge : hg.edges) {
      std::set<Value> colours;
      for (auto v : edge) colours.insert(r.assignment[v]);
      CHECK(colours.size() == 2);
    }
  }
}

TEST_CASE("elementary split of an equality event") {
  EventSpec eq;
  eq.support = {0, 1};
  eq.prob_bound = 0.5;
  eq.violated = [](std::span<const Value> v) { return v[0] == v[1]; };
  ProblemInstance inst(std::vector<VariableSpec>(2, VariableSpec::fair_coin()), {eq});
  auto el = break_into_elementary(inst);
  CHECK(el.instance.num_events() == 2);
  CHECK(el.origin == std::vector<EventId>{0, 0});
  for (EventId e = 0; e < 2; ++e) CHECK(el.instance.event(e).prob_bound == 0.25);
}

TEST_CASE("elementary split of a clause is one event") {
  auto inst = lll_test::clause_instance(3, {{1, -2, 3}});
  auto el = break_into_elementary(inst);
  REQUIRE(el.instance.num_events() == 1);
  CHECK(el.instance.event(0).prob_bound == 0.125);
  CHECK(el.instance.is_violated(0, {0, 1, 0}));
}

TEST_CASE("elementary split preserves avoidance and mass") {
  std::vector<VariableSpec> vars{VariableSpec{3, {0.2, 0.3, 0.5}}, VariableSpec::fair_coin(),
                                 VariableSpec{3, {}}};
  EventSpec a;
  a.support = {0, 2};
  a.prob_bound = 1.0;
  a.violated = [](std::span<const Value> v) { return v[0] + v[1] >= 3; };
  EventSpec b;
  b.support = {0, 1};
  b.prob_bound = 1.0;
  b.violated = [](std::span<const Value> v) { return v[0] == 0 || v[1] == 1; };
  ProblemInstance inst(vars, {a, b});
  auto el = break_into_elementary(inst);
  lll_test::for_each_assignment(inst, [&](const Assignment& x) {
    CHECK(lll_test::avoids_all(inst, x) == lll_test::avoids_all(el.instance, x));
    for (EventId e = 0; e < el.instance.num_events(); ++e)
      if (el.instance.is_violated(e, x)) CHECK(inst.is_violated(el.origin[e], x));
    return false;
  });
  for (EventId orig = 0; orig < 2; ++orig) {
    double total = 0.0;
    for (EventId e = 0; e < el.instance.num_events(); ++e)
      if (el.origin[e] == orig) total += el.instance.event(e).prob_bound;
    CHECK(total == doctest::Approx(exact_probability(inst, orig)));
  }
}
