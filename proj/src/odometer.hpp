// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lll/model.hpp"

namespace lll::detail {

/// Mixed-radix counter over a product of finite domains.
class Odometer {
 public:
  explicit Odometer(std::vector<std::uint32_t> radices)
      : radices_(std::move(radices)), digits_(radices_.size(), 0) {
    for (auto r : radices_) {
      if (r == 0) done_ = true;
    }
  }

  bool done() const noexcept { return done_; }
  std::span<const Value> digits() const noexcept { return digits_; }

  void next() {
    for (std::size_t i = 0; i < digits_.size(); ++i) {
      if (++digits_[i] < radices_[i]) return;
      digits_[i] = 0;
    }
    done_ = true;
  }

 private:
  std::vector<std::uint32_t> radices_;
  std::vector<Value> digits_;
  bool done_ = false;
};

/// Product of radices, saturating at limit + 1.
inline std::uint64_t bounded_product(std::span<const std::uint32_t> radices,
                                     std::uint64_t limit) {
  std::uint64_t total = 1;
  for (auto r : radices) {
    total *= r;
    if (total > limit) return limit + 1;
  }
  return total;
}

}  // namespace lll::detail
