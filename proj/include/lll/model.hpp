// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

// Variables, events and dependency graphs. Everything downstream (criteria,
// solvers, witness trees) consumes the immutable types declared here.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace lll {

using VarId = std::uint32_t;
using EventId = std::uint32_t;
using Value = std::uint32_t;

/// A finite-domain random variable. Values are indices into the domain;
/// an empty weight vector means the uniform distribution.
struct VariableSpec {
  std::uint32_t domain_size = 2;
  std::vector<double> weights;

  double probability(Value v) const;
  bool uniform() const noexcept { return weights.empty(); }

  static VariableSpec fair_coin() { return VariableSpec{2, {}}; }
};

/// One value index per variable.
using Assignment = std::vector<Value>;

/// Violation test over the restriction of an assignment to the event's
/// support, ordered as `EventSpec::support`.
using Predicate = std::function<bool(std::span<const Value>)>;

/// Exact Pr[event | fixed values], given a partial evaluation of the
/// support (`nullopt` entries are still random).
using ConditionalProbability =
    std::function<double(std::span<const std::optional<Value>>)>;

struct EventSpec {
  std::vector<VarId> support;  // sorted, unique
  double prob_bound = 0.0;
  Predicate violated;
  ConditionalProbability conditional_prob;  // optional
};

/// Validated collection of variables and events. Construction throws
/// `Error(invalid_argument)` when an invariant is broken.
class ProblemInstance {
 public:
  ProblemInstance() = default;
  ProblemInstance(std::vector<VariableSpec> variables,
                  std::vector<EventSpec> events);

  std::size_t num_variables() const noexcept { return variables_.size(); }
  std::size_t num_events() const noexcept { return events_.size(); }

  const std::vector<VariableSpec>& variables() const noexcept {
    return variables_;
  }
  const std::vector<EventSpec>& events() const noexcept { return events_; }
  const VariableSpec& variable(VarId v) const { return variables_.at(v); }
  const EventSpec& event(EventId e) const { return events_.at(e); }

  /// Events whose support contains `v`, ascending.
  std::span<const EventId> occurrences(VarId v) const {
    return occurrences_[v];
  }

  /// m + n + sum of domain sizes.
  std::uint64_t problem_size() const noexcept;

  /// Evaluates event `e` against a full assignment, reading only its support.
  bool is_violated(EventId e, const Assignment& assignment) const;

  void validate_assignment(const Assignment& assignment) const;

 private:
  std::vector<VariableSpec> variables_;
  std::vector<EventSpec> events_;
  std::vector<std::vector<EventId>> occurrences_;
};

enum class GraphKind { standard, lopsided };

class DependencyGraph {
 public:
  DependencyGraph() = default;
  DependencyGraph(GraphKind kind, std::vector<std::vector<EventId>> adjacency);

  GraphKind kind() const noexcept { return kind_; }
  std::size_t num_events() const noexcept { return adjacency_.size(); }
  std::size_t max_degree() const noexcept { return max_degree_; }
  std::size_t num_edges() const noexcept;

  /// Exclusive neighbourhood, ascending.
  std::span<const EventId> neighbors(EventId e) const {
    return adjacency_[e];
  }
  /// Inclusive neighbourhood (neighbours plus `e` itself), ascending.
  std::span<const EventId> inclusive_neighbors(EventId e) const {
    return inclusive_[e];
  }
  bool adjacent(EventId a, EventId b) const;
  bool in_inclusive(EventId center, EventId other) const {
    return center == other || adjacent(center, other);
  }

  std::vector<std::pair<EventId, EventId>> edges() const;
  bool is_subgraph_of(const DependencyGraph& other) const;

 private:
  GraphKind kind_ = GraphKind::standard;
  std::vector<std::vector<EventId>> adjacency_;
  std::vector<std::vector<EventId>> inclusive_;
  std::size_t max_degree_ = 0;
};

/// Upper bound on the product of domain sizes the brute-force routines will
/// enumerate (2^20).
inline constexpr std::uint64_t kEnumerationLimit = std::uint64_t{1} << 20;

DependencyGraph build_dependency_graph(const ProblemInstance& instance);

/// Lopsidependence by exhaustive search over evaluations of the union of
/// both supports. Throws `enumeration_limit_exceeded` past the guard.
bool detect_lopsidependent(const ProblemInstance& instance, EventId a,
                           EventId b);

/// Builds the lopsidependency graph. With `supplied` edges the result is
/// checked against the standard graph only; without, every intersecting pair
/// is tested with `detect_lopsidependent`.
DependencyGraph build_lopsidependency_graph(
    const ProblemInstance& instance,
    const std::optional<std::vector<std::pair<EventId, EventId>>>& supplied =
        std::nullopt);

/// Ids of violated events, ascending.
std::vector<EventId> violated_events(const ProblemInstance& instance,
                                     const Assignment& assignment);

/// Pr[event] under the product distribution, by enumeration of its support.
double exact_probability(const ProblemInstance& instance, EventId e);

/// Pr[event | fixed] by enumeration of the unfixed support positions.
/// `fixed` is ordered like the event's support.
double enumerate_conditional_probability(
    const ProblemInstance& instance, EventId e,
    std::span<const std::optional<Value>> fixed);

}  // namespace lll
