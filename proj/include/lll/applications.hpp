// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lll/model.hpp"

namespace lll {

/// CNF over variables 1..num_vars; literals are signed DIMACS integers.
struct CnfFormula {
  std::uint32_t num_vars = 0;
  std::vector<std::vector<int>> clauses;

  /// Throws `invalid_argument` on zero/out-of-range literals, empty clauses,
  /// or a variable repeated within a clause.
  void validate() const;
  std::vector<std::uint32_t> occurrence_counts() const;

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

struct Hypergraph {
  std::uint32_t num_vertices = 0;
  std::vector<std::vector<std::uint32_t>> edges;  // 0-based vertex ids

  /// Each edge needs at least two distinct in-range vertices.
  void validate() const;

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;
};

struct CnfInstance {
  ProblemInstance instance;
  /// Clause pairs in conflict (one holds l, the other its complement).
  std::vector<std::pair<EventId, EventId>> conflicts;
};

/// Fair coin per variable (value 1 = true); one event per clause, violated
/// when every literal is false.
CnfInstance cnf_to_instance(const CnfFormula& formula);

/// Fair coin colour per vertex; one event per edge, violated when the edge is
/// monochromatic.
ProblemInstance hypergraph_to_instance(const Hypergraph& hg);

struct ElementaryInstance {
  ProblemInstance instance;
  std::vector<EventId> origin;  // originating event per elementary event
};

/// Splits every event into one event per violating evaluation of its
/// support. Throws `enumeration_limit_exceeded` for supports too large to
/// enumerate.
ElementaryInstance break_into_elementary(const ProblemInstance& instance);

}  // namespace lll
