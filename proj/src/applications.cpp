// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

#include "lll/applications.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <string>

#include "lll/error.hpp"
#include "odometer.hpp"

namespace lll {

void CnfFormula::validate() const {
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    const auto tag = "clause " + std::to_string(c + 1);
    if (clauses[c].empty()) throw Error(ErrorCode::invalid_argument, tag + " is empty");
    std::vector<std::uint32_t> vars;
    for (int lit : clauses[c]) {
      const auto var = static_cast<std::uint32_t>(std::abs(static_cast<long>(lit)));
      if (lit == 0 || var > num_vars)
        throw Error(ErrorCode::invalid_argument, tag + ": literal out of range");
      vars.push_back(var);
    }
    std::sort(vars.begin(), vars.end());
    if (std::adjacent_find(vars.begin(), vars.end()) != vars.end())
      throw Error(ErrorCode::invalid_argument, tag + " mentions a variable twice");
  }
}

std::vector<std::uint32_t> CnfFormula::occurrence_counts() const {
  std::vector<std::uint32_t> counts(num_vars, 0);
  for (const auto& clause : clauses) {
    for (int lit : clause) ++counts[static_cast<std::size_t>(std::abs(lit)) - 1];
  }
  return counts;
}

void Hypergraph::validate() const {
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto tag = "edge " + std::to_string(e + 1);
    auto sorted = edges[e];
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(ErrorCode::invalid_argument, tag + " repeats a vertex");
    if (sorted.size() < 2) throw Error(ErrorCode::invalid_argument, tag + " has fewer than 2 vertices");
    if (sorted.back() >= num_vertices)
      throw Error(ErrorCode::invalid_argument, tag + " references an unknown vertex");
  }
}

namespace {

// Clause over its sorted support: violated iff every position holds its
// falsifying value.
EventSpec clause_event(std::vector<std::pair<VarId, Value>> falsifying) {
  std::sort(falsifying.begin(), falsifying.end());
  EventSpec ev;
  auto bad = std::make_shared<std::vector<Value>>();
  for (auto [v, f] : falsifying) {
    ev.support.push_back(v);
    bad->push_back(f);
  }
  ev.prob_bound = std::ldexp(1.0, -static_cast<int>(ev.support.size()));
  ev.violated = [bad](std::span<const Value> vals) {
    return std::equal(vals.begin(), vals.end(), bad->begin(), bad->end());
  };
  ev.conditional_prob = [bad](std::span<const std::optional<Value>> partial) {
    int unfixed = 0;
    for (std::size_t i = 0; i < partial.size(); ++i) {
      if (!partial[i]) {
        ++unfixed;
      } else if (*partial[i] != (*bad)[i]) {
        return 0.0;
      }
    }
    return std::ldexp(1.0, -unfixed);
  };
  return ev;
}

}  // namespace

CnfInstance cnf_to_instance(const CnfFormula& formula) {
  formula.validate();
  std::vector<VariableSpec> vars(formula.num_vars, VariableSpec::fair_coin());
  std::vector<EventSpec> events;
  events.reserve(formula.clauses.size());
  for (const auto& clause : formula.clauses) {
    std::vector<std::pair<VarId, Value>> falsifying;
    for (int lit : clause) {
      // A positive literal is false at value 0, a negative one at value 1.
      falsifying.emplace_back(static_cast<VarId>(std::abs(lit) - 1), lit > 0 ? 0u : 1u);
    }
    events.push_back(clause_event(std::move(falsifying)));
  }

  CnfInstance out{ProblemInstance(std::move(vars), std::move(events)), {}};

  // Conflicts: some variable appears with opposite signs in the two clauses.
  std::vector<std::vector<std::pair<EventId, bool>>> by_var(formula.num_vars);
  for (std::size_t c = 0; c < formula.clauses.size(); ++c) {
    for (int lit : formula.clauses[c])
      by_var[static_cast<std::size_t>(std::abs(lit)) - 1].emplace_back(static_cast<EventId>(c), lit > 0);
  }
  for (const auto& occ : by_var) {
    for (auto [a, sa] : occ) {
      for (auto [b, sb] : occ) {
        if (a < b && sa != sb) out.conflicts.emplace_back(a, b);
      }
    }
  }
  std::sort(out.conflicts.begin(), out.conflicts.end());
  out.conflicts.erase(std::unique(out.conflicts.begin(), out.conflicts.end()), out.conflicts.end());
  return out;
}

ProblemInstance hypergraph_to_instance(const Hypergraph& hg) {
  hg.validate();
  std::vector<VariableSpec> vars(hg.num_vertices, VariableSpec::fair_coin());
  std::vector<EventSpec> events;
  for (const auto& edge : hg.edges) {
    EventSpec ev;
    ev.support.assign(edge.begin(), edge.end());
    std::sort(ev.support.begin(), ev.support.end());
    ev.prob_bound = std::ldexp(1.0, 1 - static_cast<int>(ev.support.size()));
    ev.violated = [](std::span<const Value> vals) {
      return std::all_of(vals.begin(), vals.end(), [&](Value c) { return c == vals[0]; });
    };
    ev.conditional_prob = [](std::span<const std::optional<Value>> partial) {
      std::optional<Value> colour;
      int unfixed = 0;
      for (const auto& p : partial) {
        if (!p) {
          ++unfixed;
        } else if (!colour) {
          colour = *p;
        } else if (*colour != *p) {
          return 0.0;
        }
      }
      // With nothing fixed either colour may fill the edge.
      return colour ? std::ldexp(1.0, -unfixed) : std::ldexp(1.0, 1 - unfixed);
    };
    events.push_back(std::move(ev));
  }
  return ProblemInstance(std::move(vars), std::move(events));
}

ElementaryInstance break_into_elementary(const ProblemInstance& instance) {
  std::vector<EventSpec> events;
  std::vector<EventId> origin;
  for (std::size_t e = 0; e < instance.num_events(); ++e) {
    const auto& ev = instance.event(static_cast<EventId>(e));
    std::vector<std::uint32_t> radices;
    for (auto v : ev.support) radices.push_back(instance.variable(v).domain_size);
    if (detail::bounded_product(radices, kEnumerationLimit) > kEnumerationLimit)
      throw Error(ErrorCode::enumeration_limit_exceeded,
                  "event " + std::to_string(e) + " has too many evaluations to break up");
    for (detail::Odometer it(radices); !it.done(); it.next()) {
      if (!ev.violated(it.digits())) continue;
      EventSpec elem;
      elem.support = ev.support;
      auto point = std::make_shared<std::vector<Value>>(it.digits().begin(), it.digits().end());
      auto weights = std::make_shared<std::vector<double>>();
      double p = 1.0;
      for (std::size_t i = 0; i < ev.support.size(); ++i) {
        const double w = instance.variable(ev.support[i]).probability((*point)[i]);
        weights->push_back(w);
        p *= w;
      }
      elem.prob_bound = p;
      elem.violated = [point](std::span<const Value> vals) {
        return std::equal(vals.begin(), vals.end(), point->begin(), point->end());
      };
      elem.conditional_prob = [point, weights](std::span<const std::optional<Value>> partial) {
        double q = 1.0;
        for (std::size_t i = 0; i < partial.size(); ++i) {
          if (!partial[i]) {
            q *= (*weights)[i];
          } else if (*partial[i] != (*point)[i]) {
            return 0.0;
          }
        }
        return q;
      };
      events.push_back(std::move(elem));
      origin.push_back(static_cast<EventId>(e));
    }
  }
  return {ProblemInstance(instance.variables(), std::move(events)), std::move(origin)};
}

}  // namespace lll
