// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

// Derandomized resampling. A sample table is fixed cell by cell so that the
// expected number of large witness trees passing the replay check never
// rises; once the table is complete none passes, and the ordinary solver
// driven by the table finishes within the table's columns.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lll/criteria.hpp"
#include "lll/model.hpp"
#include "lll/random_source.hpp"
#include "lll/solver.hpp"
#include "lll/witness_tree.hpp"

namespace lll {

/// Sample table with some cells fixed; the rest are still random.
class PartialTable {
 public:
  PartialTable() = default;
  PartialTable(std::size_t num_variables, std::uint64_t depth);

  std::uint64_t depth() const noexcept { return depth_; }
  std::size_t num_variables() const noexcept { return cells_.size(); }

  /// Fixed value, or nullopt for random cells and indices past the depth.
  std::optional<Value> get(VarId v, std::uint64_t index) const;
  void fix(VarId v, std::uint64_t index, Value value);
  bool complete() const;
  /// Requires `complete()`.
  SampleTable to_table() const;

 private:
  std::uint64_t depth_ = 0;
  std::vector<std::vector<std::optional<Value>>> cells_;
};

/// Probability that the replay check of `tree` passes when fixed cells of
/// `table` are used as the corresponding samples and the rest are random.
/// Needs `conditional_prob` on every label.
double tree_consistency_probability(const WitnessTree& tree, const PartialTable& table,
                                    const ProblemInstance& instance);

/// Largest sample index any vertex of `tree` reads in the replay check.
std::uint64_t max_sample_index(const WitnessTree& tree, const ProblemInstance& instance);

struct DerandomizeOptions {
  std::uint64_t tree_cap = kDefaultTreeCap;
};

struct DerandomizeReport {
  SolveResult solve;
  SampleTable table;
  XAssignment rescaled_x;
  double rescaled_epsilon = 0.0;
  double budget = 0.0;  // resample_budget(rescaled_x)
  std::size_t threshold = 0;  // u: smallest size with (1-eps')^u * budget <= 1/2
  TreeSizeRange range;
  std::size_t tree_count = 0;  // |L|
  std::vector<WitnessTree> trees;  // L, in enumeration order
  double initial_expectation = 0.0;
  /// Summed consistency probability over L after each fixed cell, in order.
  std::vector<double> expectation_trace;
  std::size_t consistent_after = 0;  // trees in L passing against the final table
};

/// Smallest u >= 1 with (1 - epsilon)^u * budget <= 1/2.
std::size_t tree_size_threshold(double budget, double epsilon);

DerandomizeReport derandomized_solve(const ProblemInstance& instance,
                                     const DependencyGraph& graph, const XAssignment& x,
                                     double epsilon, const DerandomizeOptions& options = {});

/// Number of trees in `trees` that pass `tree_check` against `table`.
std::size_t count_consistent(const std::vector<WitnessTree>& trees, const SampleTable& table,
                             const ProblemInstance& instance);

}  // namespace lll
