// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

#include "lll/solver.hpp"

#include <cmath>
#include <sstream>

#include "lll/error.hpp"
#include "violated_set.hpp"

namespace lll {

void ExecutionLog::append(EventId e) {
  if (e >= counts_.size())
    throw Error(ErrorCode::invalid_argument, "log entry references unknown event");
  steps_.push_back(e);
  ++counts_[e];
}

std::size_t ExecutionLog::round_of(std::size_t t) const {
  if (round_starts_.empty()) return 0;
  // round_starts_ holds 0-based offsets; step t sits at offset t - 1.
  const auto it = std::upper_bound(round_starts_.begin(), round_starts_.end(), t - 1);
  return static_cast<std::size_t>(it - round_starts_.begin());
}

std::string ExecutionLog::to_text() const {
  std::ostringstream out;
  std::size_t next_round = 0;
  for (std::size_t i = 0; i <= steps_.size(); ++i) {
    while (next_round < round_starts_.size() && round_starts_[next_round] == i) {
      out << "#round " << ++next_round << '\n';
    }
    if (i < steps_.size()) out << steps_[i] << '\n';
  }
  return out.str();
}

ExecutionLog ExecutionLog::from_text(std::string_view text, std::size_t num_events) {
  ExecutionLog log(num_events);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("#round", 0) == 0) {
      log.begin_round();
      continue;
    }
    std::size_t used = 0;
    unsigned long long id = 0;
    try {
      id = std::stoull(line, &used);
    } catch (const std::exception&) {
      throw ParseError(line_no, "expected an event id");
    }
    if (used != line.size() || id >= num_events)
      throw ParseError(line_no, "invalid event id '" + line + "'");
    log.append(static_cast<EventId>(id));
  }
  return log;
}

std::uint64_t default_max_steps(double budget) {
  return static_cast<std::uint64_t>(std::ceil(64.0 * budget + 1024.0));
}

namespace {

EventId choose(const SelectionPolicy& policy, const detail::ViolatedSet& violated,
               SampleSource& source) {
  switch (policy.kind()) {
    case SelectionPolicy::Kind::lowest_id:
      return violated.lowest();
    case SelectionPolicy::Kind::random_uniform: {
      // Uniform over the sorted set so the choice does not depend on the
      // set's internal layout.
      const auto sorted = violated.sorted();
      const auto bits = source.next_aux();
      const auto idx = static_cast<std::size_t>(
          (static_cast<unsigned __int128>(bits) * sorted.size()) >> 64);
      return sorted[idx];
    }
    case SelectionPolicy::Kind::custom: {
      const auto sorted = violated.sorted();
      const EventId pick = policy.chooser()(sorted);
      if (!violated.contains(pick))
        throw Error(ErrorCode::invalid_argument,
                    "selection policy returned a non-violated event");
      return pick;
    }
  }
  return violated.lowest();
}

}  // namespace

SolveResult solve_sequential(const ProblemInstance& instance, SampleSource& source,
                             const SelectionPolicy& policy, std::uint64_t max_steps) {
  const auto n = instance.num_variables();
  if (source.num_variables() != n)
    throw Error(ErrorCode::invalid_argument, "sample source / instance size mismatch");

  SolveResult result;
  result.log = ExecutionLog(instance.num_events());
  result.assignment.resize(n);
  for (std::size_t v = 0; v < n; ++v) result.assignment[v] = source.draw(static_cast<VarId>(v));

  detail::ViolatedSet violated(instance.num_events());
  for (std::size_t e = 0; e < instance.num_events(); ++e) {
    const auto id = static_cast<EventId>(e);
    violated.set(id, instance.is_violated(id, result.assignment));
  }

  detail::Reevaluator reevaluate(instance);
  while (!violated.empty()) {
    if (max_steps != 0 && result.steps_used >= max_steps) {
      result.terminated = false;
      return result;
    }
    const EventId pick = choose(policy, violated, source);
    const auto& support = instance.event(pick).support;
    for (VarId v : support) result.assignment[v] = source.draw(v);
    result.log.append(pick);
    ++result.steps_used;
    reevaluate.refresh(support, result.assignment, violated);
  }
  result.terminated = true;
  return result;
}

SolveResult solve_lopsided(const ProblemInstance& instance, const DependencyGraph& lopsided,
                           SampleSource& source, const SelectionPolicy& policy,
                           std::uint64_t max_steps) {
  if (lopsided.kind() != GraphKind::lopsided)
    throw Error(ErrorCode::invalid_argument, "solve_lopsided needs a lopsided graph");
  if (lopsided.num_events() != instance.num_events())
    throw Error(ErrorCode::invalid_argument, "graph / instance size mismatch");
  return solve_sequential(instance, source, policy, max_steps);
}

std::string replay_log(const ProblemInstance& instance, const ExecutionLog& log,
                       SampleSource& fresh, const Assignment& expected_final) {
  Assignment current(instance.num_variables());
  for (std::size_t v = 0; v < current.size(); ++v) current[v] = fresh.draw(static_cast<VarId>(v));
  for (std::size_t t = 1; t <= log.size(); ++t) {
    const EventId e = log.at(t);
    if (!instance.is_violated(e, current))
      return "step " + std::to_string(t) + ": event " + std::to_string(e) +
             " was not violated when resampled";
    for (VarId v : instance.event(e).support) current[v] = fresh.draw(v);
  }
  if (current != expected_final) return "replayed final assignment differs";
  return {};
}

}  // namespace lll
