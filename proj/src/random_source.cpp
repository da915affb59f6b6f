// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

#include "lll/random_source.hpp"

#include <algorithm>
#include <sstream>

#include "lll/error.hpp"

namespace lll {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85;

// Lane tags in the fourth counter word.
constexpr std::uint32_t kVariableLane = 0;
constexpr std::uint32_t kAuxLane = 1;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) noexcept {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) noexcept {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return ctr;
}

ValueDistribution::ValueDistribution(const VariableSpec& spec)
    : domain_size_(spec.domain_size) {
  if (spec.weights.empty()) return;
  cdf_.resize(spec.weights.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < spec.weights.size(); ++i) {
    acc += spec.weights[i];
    cdf_[i] = acc;
    if (spec.weights[i] > 0.0) last_positive_ = static_cast<Value>(i);
  }
}

Value ValueDistribution::sample(std::uint64_t bits) const noexcept {
  if (cdf_.empty()) {
    const auto wide = static_cast<unsigned __int128>(bits) * domain_size_;
    return static_cast<Value>(wide >> 64);
  }
  const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
  // First index whose cumulative weight exceeds u; zero-weight values share
  // the previous cumulative value and are never selected.
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) return last_positive_;
  return static_cast<Value>(it - cdf_.begin());
}

SampleStream::SampleStream(std::uint64_t seed, std::span<const VariableSpec> variables)
    : seed_(seed), counters_(variables.size(), 0) {
  dists_.reserve(variables.size());
  for (const auto& v : variables) dists_.emplace_back(v);
}

std::uint64_t SampleStream::bits(VarId v, std::uint64_t index) const noexcept {
  const auto out = philox4x32(
      {static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), v,
       kVariableLane},
      {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)});
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::uint64_t SampleStream::aux_bits(std::uint64_t lane, std::uint64_t index) const noexcept {
  const auto out = philox4x32(
      {static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
       static_cast<std::uint32_t>(lane), kAuxLane | static_cast<std::uint32_t>(lane >> 32) << 1},
      {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)});
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

Value SampleStream::draw(VarId v) {
  auto& counter = counters_.at(v);
  const Value value = dists_[v].sample(bits(v, counter));
  ++counter;
  return value;
}

Value SampleStream::peek_at(VarId v, std::uint64_t index) const {
  return dists_.at(v).sample(bits(v, index));
}

std::uint64_t SampleStream::next_aux() { return aux_bits(0, aux_counter_++); }

SampleTable::SampleTable(std::size_t num_variables, std::uint64_t depth)
    : rows_(num_variables, std::vector<Value>(depth + 1, 0)), depth_(depth) {}

Value SampleTable::at(VarId v, std::uint64_t index) const {
  if (v >= rows_.size())
    throw Error(ErrorCode::invalid_argument, "sample table: unknown variable");
  if (index > depth_)
    throw Error(ErrorCode::index_out_of_table,
                "sample table: index " + std::to_string(index) + " beyond depth " +
                    std::to_string(depth_));
  return rows_[v][index];
}

void SampleTable::set(VarId v, std::uint64_t index, Value value) {
  if (v >= rows_.size())
    throw Error(ErrorCode::invalid_argument, "sample table: unknown variable");
  if (index > depth_)
    throw Error(ErrorCode::index_out_of_table, "sample table: index beyond depth");
  rows_[v][index] = value;
}

std::string SampleTable::to_text() const {
  std::ostringstream out;
  for (const auto& row : rows_) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ' ';
      out << row[j];
    }
    out << '\n';
  }
  return out.str();
}

SampleTable SampleTable::from_text(std::string_view text) {
  SampleTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    std::vector<Value> row;
    long long v = 0;
    while (fields >> v) {
      if (v < 0) throw ParseError(line_no, "negative value index");
      row.push_back(static_cast<Value>(v));
    }
    if (!fields.eof()) throw ParseError(line_no, "non-integer token");
    if (table.rows_.empty()) {
      width = row.size();
    } else if (row.size() != width) {
      throw ParseError(line_no, "ragged sample table row");
    }
    table.rows_.push_back(std::move(row));
  }
  if (width == 0 && !table.rows_.empty()) throw ParseError(line_no, "empty rows");
  table.depth_ = width ? width - 1 : 0;
  return table;
}

TableSource::TableSource(const SampleTable& table)
    : table_(&table), counters_(table.num_variables(), 0) {}

Value TableSource::draw(VarId v) {
  auto& counter = counters_.at(v);
  if (counter > table_->depth())
    throw Error(ErrorCode::table_exhausted,
                "variable " + std::to_string(v) + " exhausted its sample column");
  const Value value = table_->at(v, counter);
  ++counter;
  return value;
}

Value TableSource::peek_at(VarId v, std::uint64_t index) const {
  return table_->at(v, index);
}

std::uint64_t TableSource::next_aux() {
  // Selection randomness is irrelevant for the derandomized run; keep it
  // deterministic all the same.
  const auto out = philox4x32({static_cast<std::uint32_t>(aux_counter_),
                               static_cast<std::uint32_t>(aux_counter_ >> 32), 0, kAuxLane},
                              {0, 0});
  ++aux_counter_;
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

}  // namespace lll
