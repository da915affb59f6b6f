// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

// Witness trees: construction from execution logs, the replay check, the
// Galton-Watson generator and its closed-form tree probability, and
// enumeration by size.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "lll/criteria.hpp"
#include "lll/model.hpp"
#include "lll/random_source.hpp"
#include "lll/solver.hpp"

namespace lll {

struct TreeVertex {
  EventId label = 0;
  std::int32_t parent = -1;  // -1 for the root
  std::uint32_t depth = 0;
  std::uint64_t attach_step = 0;  // log step q(v); 0 when not built from a log
  std::vector<std::uint32_t> children;
};

/// Rooted tree labelled with events. Vertex 0 is the root; vertices are
/// stored in attachment order.
class WitnessTree {
 public:
  WitnessTree() = default;
  explicit WitnessTree(EventId root_label, std::uint64_t attach_step = 0);

  std::uint32_t add_child(std::uint32_t parent, EventId label, std::uint64_t attach_step = 0);

  std::size_t size() const noexcept { return vertices_.size(); }
  bool empty() const noexcept { return vertices_.empty(); }
  const TreeVertex& vertex(std::uint32_t i) const { return vertices_.at(i); }
  const std::vector<TreeVertex>& vertices() const noexcept { return vertices_; }
  EventId root_label() const { return vertices_.at(0).label; }
  /// Maximum vertex depth.
  std::uint32_t depth() const noexcept;

  /// `A(B(A),C)` form with children in attachment order.
  std::string to_text() const;
  /// Same form with children ordered canonically (label, then subtree text).
  /// Two trees are equal as labelled rooted trees iff these strings match.
  std::string canonical_text() const;
  static WitnessTree from_text(std::string_view text);

  /// Structural equality as unordered labelled rooted trees.
  bool same_shape(const WitnessTree& other) const {
    return canonical_text() == other.canonical_text();
  }

 private:
  std::vector<TreeVertex> vertices_;
};

/// tau_C(t) (standard graph) or the lopsided variant (lopsided graph), for
/// 1 <= t <= log.size(). Among several deepest hosts the earliest-attached
/// vertex receives the new child.
WitnessTree build_witness_tree(const ExecutionLog& log, std::size_t t,
                               const DependencyGraph& graph);

/// depth(tau_C(t)) for every t, in one pass over the log.
std::vector<std::uint32_t> witness_tree_depths(const ExecutionLog& log,
                                               const DependencyGraph& graph);

bool is_proper(const WitnessTree& tree);

/// Children of each vertex carry labels from the inclusive neighbourhood of
/// the parent's label in `graph`.
bool respects_graph(const WitnessTree& tree, const DependencyGraph& graph);

/// Labels within every depth level have pairwise disjoint supports.
bool levels_independent(const WitnessTree& tree, const ProblemInstance& instance);

/// Visiting order of the replay check: decreasing depth, then vertex index.
std::vector<std::uint32_t> check_order(const WitnessTree& tree);

/// Replays the tree against `source`: vertices in `check_order`, each
/// variable P read at the index equal to the number of previously visited
/// vertices whose label contains P. Passes iff every label is violated.
bool tree_check(const WitnessTree& tree, const ProblemInstance& instance,
                const SampleSource& source);

/// Product of exact label probabilities: the pass probability of
/// `tree_check` over a fresh random source.
double tree_check_probability(const WitnessTree& tree, const ProblemInstance& instance);

inline constexpr std::uint32_t kDefaultGwDepthLimit = 64;

/// Multitype Galton-Watson draw rooted at `root`. Returns nullopt when the
/// tree grows past `depth_limit` or `vertex_limit`.
std::optional<WitnessTree> gw_sample(EventId root, const XAssignment& x,
                                     const DependencyGraph& graph, std::mt19937_64& rng,
                                     std::uint32_t depth_limit = kDefaultGwDepthLimit,
                                     std::size_t vertex_limit = 1u << 20);

/// x'(B) = x(B) * prod_{C in Gamma(B)} (1 - x(C)).
double x_prime(EventId e, const XAssignment& x, const DependencyGraph& graph);

/// Probability that `gw_sample` yields exactly `tree`. Throws
/// `improper_tree` for trees with repeated sibling labels.
double gw_tree_probability(const WitnessTree& tree, const XAssignment& x,
                           const DependencyGraph& graph);

struct TreeSizeRange {
  std::size_t lo = 1;
  std::size_t hi = 1;
  friend bool operator==(const TreeSizeRange&, const TreeSizeRange&) = default;
};

/// [u, (k + 1) u].
TreeSizeRange shrink_range_bound(std::size_t u, std::size_t k);

inline constexpr std::uint64_t kDefaultTreeCap = 10'000'000;

struct EnumerationOptions {
  std::uint64_t cap = kDefaultTreeCap;
  /// Keep only trees whose levels have pairwise disjoint supports, the only
  /// shape a witness tree built from an execution log can take.
  bool realizable_only = false;
};

/// Number of proper trees (any root) with size in `range`, saturating at
/// UINT64_MAX.
std::uint64_t count_trees(const DependencyGraph& graph, TreeSizeRange range);

/// Every proper tree with size in `range`, each exactly once, ordered by
/// size, then root label, then child label sequence, then child sizes, then
/// child subtrees. Throws `explosion_guard` past `options.cap`. The instance
/// is read only by the realizable filter.
std::vector<WitnessTree> enumerate_trees(const ProblemInstance& instance,
                                         const DependencyGraph& graph, TreeSizeRange range,
                                         const EnumerationOptions& options = {});

}  // namespace lll
