// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "lll/model.hpp"

namespace lll {

/// Local Lemma weights, one per event, each strictly inside (0,1).
class XAssignment {
 public:
  XAssignment() = default;
  explicit XAssignment(std::vector<double> x);

  std::size_t size() const noexcept { return x_.size(); }
  double operator[](EventId e) const { return x_[e]; }
  const std::vector<double>& values() const noexcept { return x_; }

 private:
  std::vector<double> x_;
};

/// Relative slack applied when comparing both sides of the condition.
inline constexpr double kConditionSlack = 1e-12;

struct EventCondition {
  EventId event = 0;
  double lhs = 0.0;  // prob_bound
  double rhs = 0.0;  // (1 - eps) x(A) prod (1 - x(B))
  bool pass = false;
};

struct ConditionReport {
  std::vector<EventCondition> events;
  bool pass = true;
  double epsilon = 0.0;
  GraphKind graph_kind = GraphKind::standard;

  std::vector<EventId> failing() const;
};

ConditionReport check_x_condition(const ProblemInstance& instance,
                                  const DependencyGraph& graph,
                                  const XAssignment& x, double epsilon = 0.0);

struct SymmetricX {
  XAssignment x;
  bool clamped = false;  // max degree 0 pushed x to 1 - 1e-9
};

/// x(A) = 1/(d+1) with d the graph's maximum degree.
SymmetricX symmetric_x(const ProblemInstance& instance,
                       const DependencyGraph& graph);

/// Sum of x/(1-x): the expected resampling budget.
double resample_budget(const XAssignment& x);

/// Returns ((1 - eps/2) x, eps/2).
std::pair<XAssignment, double> rescale_for_derandomization(const XAssignment& x,
                                                           double epsilon);

/// Reads whitespace-separated reals; `#` starts a comment.
XAssignment parse_x_assignment(std::string_view text, std::size_t expected_count);

}  // namespace lll
