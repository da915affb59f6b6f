// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

// Addressable per-variable sample sequences P^(0), P^(1), ... . Every sample
// is a pure function of (seed, variable, index), so a replay that knows how
// many times a variable was drawn sees exactly the values a solver saw.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lll/model.hpp"

namespace lll {

/// Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// Inverse-CDF sampling table for one variable.
class ValueDistribution {
 public:
  explicit ValueDistribution(const VariableSpec& spec);

  /// Maps 64 uniform random bits onto a value index.
  Value sample(std::uint64_t bits) const noexcept;
  std::uint32_t domain_size() const noexcept { return domain_size_; }

 private:
  std::uint32_t domain_size_;
  std::vector<double> cdf_;  // empty for uniform
  Value last_positive_ = 0;
};

/// Interface the solvers draw from. Implementations keep one counter per
/// variable; `draw` returns the sample at the current counter and advances it.
class SampleSource {
 public:
  virtual ~SampleSource() = default;

  virtual Value draw(VarId v) = 0;
  virtual Value peek_at(VarId v, std::uint64_t index) const = 0;
  /// Number of samples of `v` consumed so far.
  virtual std::uint64_t drawn(VarId v) const = 0;
  virtual std::size_t num_variables() const = 0;
  /// Auxiliary random bits for selection policies. Never touches the
  /// per-variable sequences.
  virtual std::uint64_t next_aux() = 0;
};

class SampleStream final : public SampleSource {
 public:
  SampleStream(std::uint64_t seed, std::span<const VariableSpec> variables);
  SampleStream(std::uint64_t seed, const ProblemInstance& instance)
      : SampleStream(seed, instance.variables()) {}

  Value draw(VarId v) override;
  Value peek_at(VarId v, std::uint64_t index) const override;
  std::uint64_t drawn(VarId v) const override { return counters_.at(v); }
  std::size_t num_variables() const override { return dists_.size(); }
  std::uint64_t next_aux() override;

  std::uint64_t seed() const noexcept { return seed_; }
  /// Raw bits for an auxiliary lane, independent of the variable samples.
  std::uint64_t aux_bits(std::uint64_t lane, std::uint64_t index) const noexcept;

 private:
  std::uint64_t bits(VarId v, std::uint64_t index) const noexcept;

  std::uint64_t seed_;
  std::vector<ValueDistribution> dists_;
  std::vector<std::uint64_t> counters_;
  std::uint64_t aux_counter_ = 0;
};

/// Explicit table v_i^(j), 0 <= j <= depth.
class SampleTable {
 public:
  SampleTable() = default;
  SampleTable(std::size_t num_variables, std::uint64_t depth);

  std::size_t num_variables() const noexcept { return rows_.size(); }
  std::uint64_t depth() const noexcept { return depth_; }

  Value at(VarId v, std::uint64_t index) const;
  void set(VarId v, std::uint64_t index, Value value);
  const std::vector<std::vector<Value>>& rows() const noexcept { return rows_; }

  /// One variable per line, whitespace-separated value indices.
  std::string to_text() const;
  static SampleTable from_text(std::string_view text);

  friend bool operator==(const SampleTable&, const SampleTable&) = default;

 private:
  std::vector<std::vector<Value>> rows_;
  std::uint64_t depth_ = 0;
};

/// Drives a solver from a `SampleTable`. Drawing past the table's depth
/// throws `table_exhausted`.
class TableSource final : public SampleSource {
 public:
  explicit TableSource(const SampleTable& table);
  explicit TableSource(SampleTable&&) = delete;

  Value draw(VarId v) override;
  Value peek_at(VarId v, std::uint64_t index) const override;
  std::uint64_t drawn(VarId v) const override { return counters_.at(v); }
  std::size_t num_variables() const override { return table_->num_variables(); }
  std::uint64_t next_aux() override;

 private:
  const SampleTable* table_;
  std::vector<std::uint64_t> counters_;
  std::uint64_t aux_counter_ = 0;
};

}  // namespace lll
