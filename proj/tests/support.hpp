// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

// Shared helpers for the test binaries. Instance builders here construct
// events directly from literals so tests never depend on the application
// builders they are checking.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lll/applications.hpp"
#include "lll/model.hpp"

namespace lll_test {

using lll::Assignment;
using lll::EventSpec;
using lll::ProblemInstance;
using lll::Value;
using lll::VariableSpec;
using lll::VarId;

// Event over variables |lit|-1 violated when every literal is false.
inline EventSpec clause_event(std::vector<int> lits) {
  std::sort(lits.begin(), lits.end(), [](int a, int b) { return std::abs(a) < std::abs(b); });
  EventSpec e;
  std::vector<Value> falsifying;
  for (int l : lits) {
    e.support.push_back(static_cast<VarId>(std::abs(l) - 1));
    falsifying.push_back(l > 0 ? 0u : 1u);
  }
  e.prob_bound = std::ldexp(1.0, -static_cast<int>(lits.size()));
  e.violated = [falsifying](std::span<const Value> vals) {
    for (std::size_t i = 0; i < vals.size(); ++i)
      if (vals[i] != falsifying[i]) return false;
    return true;
  };
  e.conditional_prob = [falsifying](std::span<const std::optional<Value>> vals) {
    double p = 1.0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (!vals[i]) {
        p *= 0.5;
      } else if (*vals[i] != falsifying[i]) {
        return 0.0;
      }
    }
    return p;
  };
  return e;
}

inline ProblemInstance clause_instance(std::uint32_t n, const std::vector<std::vector<int>>& clauses) {
  std::vector<VariableSpec> vars(n, VariableSpec::fair_coin());
  std::vector<EventSpec> events;
  for (const auto& c : clauses) events.push_back(clause_event(c));
  return ProblemInstance(std::move(vars), std::move(events));
}

inline ProblemInstance clause_instance(const lll::CnfFormula& f) {
  return clause_instance(f.num_vars, f.clauses);
}

// k-CNF with every variable in at most `max_occ` clauses, random signs.
inline lll::CnfFormula random_bounded_cnf(std::mt19937_64& rng, std::uint32_t n, std::uint32_t m,
                                          std::uint32_t k, std::uint32_t max_occ) {
  lll::CnfFormula f;
  f.num_vars = n;
  std::vector<std::uint32_t> occ(n, 0);
  std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
  std::bernoulli_distribution sign(0.5);
  for (std::uint32_t c = 0; c < m; ++c) {
    std::vector<int> clause;
    std::set<std::uint32_t> used;
    for (int tries = 0; clause.size() < k && tries < 1000; ++tries) {
      const auto v = pick(rng);
      if (occ[v] >= max_occ || used.count(v)) continue;
      used.insert(v);
      clause.push_back(sign(rng) ? static_cast<int>(v + 1) : -static_cast<int>(v + 1));
    }
    if (clause.size() < k) break;
    for (auto v : used) ++occ[v];
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

// Random hypergraph with edges of size k and vertex degree at most max_occ.
inline lll::Hypergraph random_hypergraph(std::mt19937_64& rng, std::uint32_t n, std::uint32_t m,
                                         std::uint32_t k, std::uint32_t max_occ) {
  lll::Hypergraph h;
  h.num_vertices = n;
  std::vector<std::uint32_t> occ(n, 0);
  std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
  for (std::uint32_t e = 0; e < m; ++e) {
    std::set<std::uint32_t> used;
    for (int tries = 0; used.size() < k && tries < 1000; ++tries) {
      const auto v = pick(rng);
      if (occ[v] < max_occ) used.insert(v);
    }
    if (used.size() < k) break;
    for (auto v : used) ++occ[v];
    h.edges.emplace_back(used.begin(), used.end());
  }
  return h;
}

// Mixed-radix scan over all full assignments; calls f(assignment) until it
// returns true.
template <typename F>
bool for_each_assignment(const ProblemInstance& inst, F&& f) {
  Assignment a(inst.num_variables(), 0);
  while (true) {
    if (f(static_cast<const Assignment&>(a))) return true;
    std::size_t i = 0;
    for (; i < a.size(); ++i) {
      if (++a[i] < inst.variable(static_cast<VarId>(i)).domain_size) break;
      a[i] = 0;
    }
    if (i == a.size()) return false;
  }
}

// Full-scan violation check with no incremental bookkeeping.
inline std::vector<lll::EventId> scan_violated(const ProblemInstance& inst, const Assignment& a) {
  std::vector<lll::EventId> out;
  for (lll::EventId e = 0; e < inst.num_events(); ++e) {
    std::vector<Value> sub;
    for (auto v : inst.event(e).support) sub.push_back(a[v]);
    if (inst.event(e).violated(sub)) out.push_back(e);
  }
  return out;
}

inline bool avoids_all(const ProblemInstance& inst, const Assignment& a) {
  return scan_violated(inst, a).empty();
}

inline bool supports_intersect(const ProblemInstance& inst, lll::EventId a, lll::EventId b) {
  const auto& sa = inst.event(a).support;
  const auto& sb = inst.event(b).support;
  for (auto v : sa)
    if (std::find(sb.begin(), sb.end(), v) != sb.end()) return true;
  return false;
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

inline MeanSe mean_se(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double var = xs.size() > 1 ? ss / (n - 1) : 0.0;
  return {mean, std::sqrt(var / n)};
}

}  // namespace lll_test
