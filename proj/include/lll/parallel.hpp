// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lll/model.hpp"
#include "lll/random_source.hpp"
#include "lll/solver.hpp"

namespace lll {

enum class MisPolicy {
  greedy,     // inclusion-maximal, lowest id first
  luby_step,  // one round of random priorities; independent, maybe not maximal
};

/// Lowest-id-first maximal independent subset of `violated` (ascending ids).
std::vector<EventId> greedy_mis(std::span<const EventId> violated,
                                const DependencyGraph& graph);

/// Every violated event draws a priority; the ones beating all violated
/// neighbours survive (ties by id). Non-empty whenever `violated` is.
std::vector<EventId> luby_step_mis(std::span<const EventId> violated,
                                   const DependencyGraph& graph, SampleSource& source);

/// Each round resamples an independent set of violated events. The log is
/// flattened round by round in ascending event id with round boundaries
/// recorded. `max_rounds` 0 means no limit.
SolveResult solve_parallel(const ProblemInstance& instance, const DependencyGraph& graph,
                           SampleSource& source, MisPolicy policy = MisPolicy::greedy,
                           std::uint64_t max_rounds = 0);

}  // namespace lll
