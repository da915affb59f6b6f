// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

#include "lll/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lll/error.hpp"
#include "odometer.hpp"

namespace lll {

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::invalid_argument, what);
}

std::vector<std::uint32_t> domain_sizes(const ProblemInstance& instance,
                                        std::span<const VarId> vars) {
  std::vector<std::uint32_t> out;
  out.reserve(vars.size());
  for (auto v : vars) out.push_back(instance.variable(v).domain_size);
  return out;
}

// Maps each support position of `event` onto its index in `universe`.
std::vector<std::size_t> positions_in(std::span<const VarId> support,
                                      std::span<const VarId> universe) {
  std::vector<std::size_t> pos;
  pos.reserve(support.size());
  for (auto v : support) {
    auto it = std::lower_bound(universe.begin(), universe.end(), v);
    pos.push_back(static_cast<std::size_t>(it - universe.begin()));
  }
  return pos;
}

}  // namespace

double VariableSpec::probability(Value v) const {
  if (v >= domain_size) return 0.0;
  if (weights.empty()) return 1.0 / domain_size;
  return weights[v];
}

ProblemInstance::ProblemInstance(std::vector<VariableSpec> variables,
                                 std::vector<EventSpec> events)
    : variables_(std::move(variables)), events_(std::move(events)) {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    const auto& var = variables_[i];
    if (var.domain_size < 1) invalid("variable " + std::to_string(i) + ": empty domain");
    if (!var.weights.empty()) {
      if (var.weights.size() != var.domain_size)
        invalid("variable " + std::to_string(i) + ": weight count mismatch");
      double sum = 0.0;
      for (double w : var.weights) {
        if (!(w >= 0.0)) invalid("variable " + std::to_string(i) + ": negative weight");
        sum += w;
      }
      if (std::abs(sum - 1.0) > 1e-9)
        invalid("variable " + std::to_string(i) + ": weights do not sum to 1");
    }
  }

  occurrences_.assign(variables_.size(), {});
  for (std::size_t e = 0; e < events_.size(); ++e) {
    auto& ev = events_[e];
    const auto tag = "event " + std::to_string(e);
    if (!ev.violated) invalid(tag + ": missing predicate");
    if (!std::is_sorted(ev.support.begin(), ev.support.end()) ||
        std::adjacent_find(ev.support.begin(), ev.support.end()) != ev.support.end())
      invalid(tag + ": support must be sorted and duplicate-free");
    for (auto v : ev.support) {
      if (v >= variables_.size()) invalid(tag + ": support references unknown variable");
    }
    if (!(ev.prob_bound >= 0.0 && ev.prob_bound <= 1.0))
      invalid(tag + ": prob_bound outside [0,1]");
    if (ev.support.empty() && ev.violated(std::span<const Value>{}))
      invalid(tag + ": empty support with an always-violated predicate");
    for (auto v : ev.support) occurrences_[v].push_back(static_cast<EventId>(e));
  }
}

std::uint64_t ProblemInstance::problem_size() const noexcept {
  std::uint64_t s = events_.size() + variables_.size();
  for (const auto& v : variables_) s += v.domain_size;
  return s;
}

bool ProblemInstance::is_violated(EventId e, const Assignment& assignment) const {
  const auto& ev = events_[e];
  // Supports are short; a small stack buffer avoids per-call allocation.
  constexpr std::size_t kInline = 32;
  if (ev.support.size() <= kInline) {
    Value buf[kInline];
    for (std::size_t i = 0; i < ev.support.size(); ++i) buf[i] = assignment[ev.support[i]];
    return ev.violated(std::span<const Value>(buf, ev.support.size()));
  }
  std::vector<Value> vals(ev.support.size());
  for (std::size_t i = 0; i < ev.support.size(); ++i) vals[i] = assignment[ev.support[i]];
  return ev.violated(vals);
}

void ProblemInstance::validate_assignment(const Assignment& assignment) const {
  if (assignment.size() != variables_.size())
    invalid("assignment length " + std::to_string(assignment.size()) +
            " != variable count " + std::to_string(variables_.size()));
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] >= variables_[i].domain_size)
      invalid("assignment value out of domain for variable " + std::to_string(i));
  }
}

DependencyGraph::DependencyGraph(GraphKind kind,
                                 std::vector<std::vector<EventId>> adjacency)
    : kind_(kind), adjacency_(std::move(adjacency)) {
  inclusive_.resize(adjacency_.size());
  for (std::size_t e = 0; e < adjacency_.size(); ++e) {
    auto& nb = adjacency_[e];
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    for (auto o : nb) {
      if (o == e) invalid("dependency graph must be irreflexive");
      if (o >= adjacency_.size()) invalid("dependency graph references unknown event");
    }
    max_degree_ = std::max(max_degree_, nb.size());
    auto& inc = inclusive_[e];
    inc = nb;
    inc.insert(std::lower_bound(inc.begin(), inc.end(), static_cast<EventId>(e)),
               static_cast<EventId>(e));
  }
  for (std::size_t e = 0; e < adjacency_.size(); ++e) {
    for (auto o : adjacency_[e]) {
      if (!std::binary_search(adjacency_[o].begin(), adjacency_[o].end(),
                              static_cast<EventId>(e)))
        invalid("dependency graph must be symmetric");
    }
  }
}

std::size_t DependencyGraph::num_edges() const noexcept {
  std::size_t twice = 0;
  for (const auto& nb : adjacency_) twice += nb.size();
  return twice / 2;
}

bool DependencyGraph::adjacent(EventId a, EventId b) const {
  const auto& nb = adjacency_[a];
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::vector<std::pair<EventId, EventId>> DependencyGraph::edges() const {
  std::vector<std::pair<EventId, EventId>> out;
  for (std::size_t e = 0; e < adjacency_.size(); ++e) {
    for (auto o : adjacency_[e]) {
      if (o > e) out.emplace_back(static_cast<EventId>(e), o);
    }
  }
  return out;
}

bool DependencyGraph::is_subgraph_of(const DependencyGraph& other) const {
  if (other.num_events() != num_events()) return false;
  for (auto [a, b] : edges()) {
    if (!other.adjacent(a, b)) return false;
  }
  return true;
}

DependencyGraph build_dependency_graph(const ProblemInstance& instance) {
  const auto m = instance.num_events();
  std::vector<std::vector<EventId>> adj(m);
  for (std::size_t v = 0; v < instance.num_variables(); ++v) {
    auto occ = instance.occurrences(static_cast<VarId>(v));
    for (auto a : occ) {
      for (auto b : occ) {
        if (a != b) adj[a].push_back(b);
      }
    }
  }
  return DependencyGraph(GraphKind::standard, std::move(adj));
}

bool detect_lopsidependent(const ProblemInstance& instance, EventId a, EventId b) {
  if (a == b) invalid("detect_lopsidependent requires distinct events");
  const auto& sa = instance.event(a).support;
  const auto& sb = instance.event(b).support;

  std::vector<VarId> shared;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                        std::back_inserter(shared));
  if (shared.empty()) return false;

  std::vector<VarId> all;
  std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(all));
  const auto all_domains = domain_sizes(instance, all);
  if (detail::bounded_product(all_domains, kEnumerationLimit) > kEnumerationLimit)
    throw Error(ErrorCode::enumeration_limit_exceeded,
                "lopsidependence check exceeds enumeration limit");

  std::vector<VarId> rest;
  std::set_difference(all.begin(), all.end(), shared.begin(), shared.end(),
                      std::back_inserter(rest));

  const auto pos_a = positions_in(sa, all);
  const auto pos_b = positions_in(sb, all);
  const auto shared_pos = positions_in(shared, all);
  const auto rest_pos = positions_in(rest, all);

  const auto& ea = instance.event(a);
  const auto& eb = instance.event(b);
  std::vector<Value> full(all.size());
  std::vector<Value> va(sa.size()), vb(sb.size());
  auto eval = [&](const EventSpec& ev, const std::vector<std::size_t>& pos,
                  std::vector<Value>& buf) {
    for (std::size_t i = 0; i < pos.size(); ++i) buf[i] = full[pos[i]];
    return ev.violated(buf);
  };

  // f and g agree off the shared variables, so fix the rest first and look
  // for a violating pair among evaluations of the shared part.
  for (detail::Odometer rest_it(domain_sizes(instance, rest)); !rest_it.done();
       rest_it.next()) {
    for (std::size_t i = 0; i < rest_pos.size(); ++i) full[rest_pos[i]] = rest_it.digits()[i];
    bool any_a = false, any_b = false;
    bool a_without_b = false, b_without_a = false;
    for (detail::Odometer sh(domain_sizes(instance, shared)); !sh.done(); sh.next()) {
      for (std::size_t i = 0; i < shared_pos.size(); ++i) full[shared_pos[i]] = sh.digits()[i];
      const bool viol_a = eval(ea, pos_a, va);
      const bool viol_b = eval(eb, pos_b, vb);
      any_a |= viol_a;
      any_b |= viol_b;
      a_without_b |= viol_a && !viol_b;
      b_without_a |= viol_b && !viol_a;
    }
    if ((a_without_b && any_b) || (b_without_a && any_a)) return true;
  }
  return false;
}

DependencyGraph build_lopsidependency_graph(
    const ProblemInstance& instance,
    const std::optional<std::vector<std::pair<EventId, EventId>>>& supplied) {
  const auto standard = build_dependency_graph(instance);
  const auto m = instance.num_events();
  std::vector<std::vector<EventId>> adj(m);
  if (supplied) {
    for (auto [a, b] : *supplied) {
      if (a >= m || b >= m || a == b)
        invalid("supplied lopsided edge references an invalid event pair");
      if (!standard.adjacent(a, b))
        throw Error(ErrorCode::supplied_edge_not_subset,
                    "supplied edge " + std::to_string(a) + "-" + std::to_string(b) +
                        " joins events with disjoint supports");
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
  } else {
    for (auto [a, b] : standard.edges()) {
      if (detect_lopsidependent(instance, a, b)) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
    }
  }
  return DependencyGraph(GraphKind::lopsided, std::move(adj));
}

std::vector<EventId> violated_events(const ProblemInstance& instance,
                                     const Assignment& assignment) {
  instance.validate_assignment(assignment);
  std::vector<EventId> out;
  for (std::size_t e = 0; e < instance.num_events(); ++e) {
    if (instance.is_violated(static_cast<EventId>(e), assignment))
      out.push_back(static_cast<EventId>(e));
  }
  return out;
}

double enumerate_conditional_probability(const ProblemInstance& instance, EventId e,
                                         std::span<const std::optional<Value>> fixed) {
  const auto& ev = instance.event(e);
  if (fixed.size() != ev.support.size())
    invalid("partial evaluation length does not match the event support");
  std::vector<VarId> free_vars;
  std::vector<std::size_t> free_pos;
  std::vector<Value> vals(ev.support.size());
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    if (fixed[i]) {
      vals[i] = *fixed[i];
    } else {
      free_vars.push_back(ev.support[i]);
      free_pos.push_back(i);
    }
  }
  const auto radices = domain_sizes(instance, free_vars);
  if (detail::bounded_product(radices, kEnumerationLimit) > kEnumerationLimit)
    throw Error(ErrorCode::enumeration_limit_exceeded,
                "conditional probability enumeration exceeds limit");
  double total = 0.0;
  for (detail::Odometer it(radices); !it.done(); it.next()) {
    double w = 1.0;
    for (std::size_t i = 0; i < free_pos.size(); ++i) {
      vals[free_pos[i]] = it.digits()[i];
      w *= instance.variable(free_vars[i]).probability(it.digits()[i]);
    }
    if (ev.violated(vals)) total += w;
  }
  return total;
}

double exact_probability(const ProblemInstance& instance, EventId e) {
  std::vector<std::optional<Value>> none(instance.event(e).support.size());
  return enumerate_conditional_probability(instance, e, none);
}

}  // namespace lll
