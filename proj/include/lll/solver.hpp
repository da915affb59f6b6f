// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lll/model.hpp"
#include "lll/random_source.hpp"

namespace lll {

/// The sequence C(1), C(2), ... of resampled events. Step t (1-based) is
/// `steps[t - 1]`. Parallel runs also record where each round starts.
class ExecutionLog {
 public:
  explicit ExecutionLog(std::size_t num_events = 0) : counts_(num_events, 0) {}

  void append(EventId e);
  /// Marks the start of a new parallel round at the current length.
  void begin_round() { round_starts_.push_back(steps_.size()); }

  std::size_t size() const noexcept { return steps_.size(); }
  bool empty() const noexcept { return steps_.empty(); }
  EventId at(std::size_t t) const { return steps_.at(t - 1); }
  const std::vector<EventId>& steps() const noexcept { return steps_; }
  const std::vector<std::uint64_t>& per_event_counts() const noexcept { return counts_; }

  bool has_rounds() const noexcept { return !round_starts_.empty(); }
  std::size_t num_rounds() const noexcept { return round_starts_.size(); }
  const std::vector<std::size_t>& round_starts() const noexcept { return round_starts_; }
  /// 1-based round containing step t (1-based); 0 when no rounds recorded.
  std::size_t round_of(std::size_t t) const;

  /// One event id per line, with `#round k` markers when rounds exist.
  std::string to_text() const;
  static ExecutionLog from_text(std::string_view text, std::size_t num_events);

  friend bool operator==(const ExecutionLog&, const ExecutionLog&) = default;

 private:
  std::vector<EventId> steps_;
  std::vector<std::size_t> round_starts_;
  std::vector<std::uint64_t> counts_;
};

class SelectionPolicy {
 public:
  enum class Kind { lowest_id, random_uniform, custom };
  /// Receives the violated set in ascending order; must return a member.
  using Chooser = std::function<EventId(std::span<const EventId>)>;

  static SelectionPolicy lowest_id() { return SelectionPolicy(Kind::lowest_id, {}); }
  static SelectionPolicy random_uniform() {
    return SelectionPolicy(Kind::random_uniform, {});
  }
  static SelectionPolicy custom(Chooser chooser) {
    return SelectionPolicy(Kind::custom, std::move(chooser));
  }

  Kind kind() const noexcept { return kind_; }
  const Chooser& chooser() const noexcept { return chooser_; }

 private:
  SelectionPolicy(Kind kind, Chooser chooser) : kind_(kind), chooser_(std::move(chooser)) {}

  Kind kind_;
  Chooser chooser_;
};

/// One parallel round: the independent set resampled and the variables it
/// touched.
struct RoundRecord {
  std::size_t index = 0;  // 1-based
  std::vector<EventId> selected;
  std::vector<VarId> resampled;
};

struct SolveResult {
  Assignment assignment;
  ExecutionLog log;
  bool terminated = false;
  std::uint64_t steps_used = 0;
  std::vector<RoundRecord> rounds;  // parallel solver only
};

/// ceil(64 * budget + 1024).
std::uint64_t default_max_steps(double budget);

/// Resample violated events one at a time until none remains or `max_steps`
/// resamplings have been made (0 = no limit). The initial assignment takes
/// sample 0 of every variable.
SolveResult solve_sequential(const ProblemInstance& instance, SampleSource& source,
                             const SelectionPolicy& policy = SelectionPolicy::lowest_id(),
                             std::uint64_t max_steps = 0);

/// Same execution as `solve_sequential`; the guarantee it carries is the one
/// for the lopsidependency graph, which must be of lopsided kind.
SolveResult solve_lopsided(const ProblemInstance& instance, const DependencyGraph& lopsided,
                           SampleSource& source,
                           const SelectionPolicy& policy = SelectionPolicy::lowest_id(),
                           std::uint64_t max_steps = 0);

/// Re-runs a log against a fresh source and confirms that each logged event
/// was violated when it was resampled and that the final assignment matches.
/// Returns an empty string on success, otherwise a description of the first
/// discrepancy.
std::string replay_log(const ProblemInstance& instance, const ExecutionLog& log,
                       SampleSource& fresh_source, const Assignment& expected_final);

}  // namespace lll
