// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

#include "lll/parallel.hpp"

#include <algorithm>

#include "lll/error.hpp"
#include "violated_set.hpp"

namespace lll {

std::vector<EventId> greedy_mis(std::span<const EventId> violated,
                                const DependencyGraph& graph) {
  std::vector<EventId> sorted(violated.begin(), violated.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<EventId> chosen;
  for (EventId e : sorted) {
    const bool free = std::none_of(chosen.begin(), chosen.end(),
                                   [&](EventId c) { return graph.adjacent(c, e); });
    if (free) chosen.push_back(e);
  }
  return chosen;
}

std::vector<EventId> luby_step_mis(std::span<const EventId> violated,
                                   const DependencyGraph& graph, SampleSource& source) {
  std::vector<EventId> sorted(violated.begin(), violated.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::uint64_t> priority(sorted.size());
  for (auto& p : priority) p = source.next_aux();

  std::vector<EventId> survivors;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    bool wins = true;
    for (std::size_t j = 0; j < sorted.size() && wins; ++j) {
      if (i == j || !graph.adjacent(sorted[i], sorted[j])) continue;
      // Lower (priority, id) wins.
      if (std::pair(priority[j], sorted[j]) < std::pair(priority[i], sorted[i])) wins = false;
    }
    if (wins) survivors.push_back(sorted[i]);
  }
  return survivors;
}

SolveResult solve_parallel(const ProblemInstance& instance, const DependencyGraph& graph,
                           SampleSource& source, MisPolicy policy, std::uint64_t max_rounds) {
  if (graph.kind() != GraphKind::standard)
    throw Error(ErrorCode::invalid_argument, "the parallel solver needs the standard graph");
  if (graph.num_events() != instance.num_events() ||
      source.num_variables() != instance.num_variables())
    throw Error(ErrorCode::invalid_argument, "graph / source / instance size mismatch");

  SolveResult result;
  result.log = ExecutionLog(instance.num_events());
  result.assignment.resize(instance.num_variables());
  for (std::size_t v = 0; v < result.assignment.size(); ++v)
    result.assignment[v] = source.draw(static_cast<VarId>(v));

  detail::ViolatedSet violated(instance.num_events());
  for (std::size_t e = 0; e < instance.num_events(); ++e) {
    const auto id = static_cast<EventId>(e);
    violated.set(id, instance.is_violated(id, result.assignment));
  }

  detail::Reevaluator reevaluate(instance);
  while (!violated.empty()) {
    if (max_rounds != 0 && result.rounds.size() >= max_rounds) {
      result.terminated = false;
      return result;
    }
    const auto current = violated.sorted();
    auto selected = policy == MisPolicy::greedy ? greedy_mis(current, graph)
                                                : luby_step_mis(current, graph, source);

    RoundRecord round;
    round.index = result.rounds.size() + 1;
    result.log.begin_round();
    // Selected supports are pairwise disjoint, so the draws commute; the
    // ascending order fixes the flattened log.
    for (EventId e : selected) {
      for (VarId v : instance.event(e).support) {
        result.assignment[v] = source.draw(v);
        round.resampled.push_back(v);
      }
      result.log.append(e);
      ++result.steps_used;
    }
    std::sort(round.resampled.begin(), round.resampled.end());
    reevaluate.refresh(round.resampled, result.assignment, violated);
    round.selected = std::move(selected);
    result.rounds.push_back(std::move(round));
  }
  result.terminated = true;
  return result;
}

}  // namespace lll
