// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "lll/model.hpp"

namespace lll::detail {

/// Dense set of violated event ids with O(1) insert/erase.
class ViolatedSet {
 public:
  explicit ViolatedSet(std::size_t num_events)
      : pos_(num_events, kAbsent) {}

  bool contains(EventId e) const noexcept { return e < pos_.size() && pos_[e] != kAbsent; }
  bool empty() const noexcept { return members_.empty(); }
  std::size_t size() const noexcept { return members_.size(); }
  EventId member(std::size_t i) const noexcept { return members_[i]; }

  void set(EventId e, bool violated) {
    if (violated == contains(e)) return;
    if (violated) {
      pos_[e] = members_.size();
      members_.push_back(e);
    } else {
      const auto at = pos_[e];
      const auto last = members_.back();
      members_[at] = last;
      pos_[last] = at;
      members_.pop_back();
      pos_[e] = kAbsent;
    }
  }

  EventId lowest() const noexcept {
    return *std::min_element(members_.begin(), members_.end());
  }

  std::vector<EventId> sorted() const {
    auto out = members_;
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  static constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> pos_;
  std::vector<EventId> members_;
};

/// Re-evaluates every event sharing a variable with `vars` (each once).
class Reevaluator {
 public:
  explicit Reevaluator(const ProblemInstance& instance)
      : instance_(instance), stamp_(instance.num_events(), 0) {}

  template <typename VarRange>
  void refresh(const VarRange& vars, const Assignment& assignment, ViolatedSet& set) {
    ++epoch_;
    for (VarId v : vars) {
      for (EventId e : instance_.occurrences(v)) {
        if (stamp_[e] == epoch_) continue;
        stamp_[e] = epoch_;
        set.set(e, instance_.is_violated(e, assignment));
      }
    }
  }

 private:
  const ProblemInstance& instance_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t epoch_ = 0;
};

}  // namespace lll::detail
