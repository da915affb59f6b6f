// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "lll/error.hpp"
#include "lll/random_source.hpp"

using namespace lll;

TEST_CASE("philox known answers") {
  using A4 = std::array<std::uint32_t, 4>;
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("draw counters") {
  std::vector<VariableSpec> vars(3, VariableSpec{5, {}});
  SampleStream s(42, vars);
  const auto a0 = s.draw(0);
  const auto a1 = s.draw(0);
  CHECK(s.drawn(0) == 2);
  CHECK(s.drawn(1) == 0);
  CHECK(a0 == s.peek_at(0, 0));
  CHECK(a1 == s.peek_at(0, 1));
  s.draw(2);
  CHECK(s.drawn(0) == 2);
  CHECK(s.drawn(2) == 1);
}

TEST_CASE("sequences depend only on per-variable counts") {
  std::vector<VariableSpec> vars(4, VariableSpec{7, {}});
  SampleStream a(9, vars), b(9, vars);
  std::vector<std::vector<Value>> seq_a(4), seq_b(4);
  for (int i = 0; i < 50; ++i)
    for (VarId v = 0; v < 4; ++v) seq_a[v].push_back(a.draw(v));
  for (VarId v = 4; v-- > 0;)
    for (int i = 0; i < 50; ++i) seq_b[v].push_back(b.draw(v));
  CHECK(seq_a == seq_b);

  SampleStream c(10, vars);
  bool differs = false;
  for (int i = 0; i < 50; ++i) differs |= c.draw(0) != seq_a[0][i];
  CHECK(differs);
}

TEST_CASE("peeking never disturbs drawing") {
  std::vector<VariableSpec> vars(2, VariableSpec{3, {}});
  SampleStream plain(5, vars), probed(5, vars);
  for (int i = 0; i < 100; ++i) {
    probed.peek_at(i % 2, static_cast<std::uint64_t>(i * 7));
    CHECK(plain.draw(i % 2) == probed.draw(i % 2));
  }
}

TEST_CASE("aux lane is separate from variable samples") {
  std::vector<VariableSpec> vars(1, VariableSpec::fair_coin());
  SampleStream a(1, vars), b(1, vars);
  for (int i = 0; i < 10; ++i) a.next_aux();
  for (int i = 0; i < 20; ++i) CHECK(a.draw(0) == b.draw(0));
  CHECK(a.aux_bits(0, 3) == b.aux_bits(0, 3));
}

TEST_CASE("empirical marginals within three standard deviations") {
  const std::vector<VariableSpec> specs{
      VariableSpec::fair_coin(), VariableSpec{6, {}}, VariableSpec{4, {0.1, 0.0, 0.6, 0.3}},
      VariableSpec{3, {0.5, 0.25, 0.25}}};
  SampleStream s(2026, specs);
  constexpr int kDraws = 100000;
  for (VarId v = 0; v < specs.size(); ++v) {
    std::vector<int> counts(specs[v].domain_size, 0);
    for (int i = 0; i < kDraws; ++i) ++counts[s.draw(v)];
    for (Value k = 0; k < specs[v].domain_size; ++k) {
      const double p = specs[v].probability(k);
      const double sd = std::sqrt(kDraws * p * (1 - p));
      CHECK(std::abs(counts[k] - kDraws * p) <= 3 * sd + 1e-9);
    }
  }
}

TEST_CASE("inverse cdf edges") {
  ValueDistribution d(VariableSpec{3, {0.5, 0.0, 0.5}});
  CHECK(d.sample(0) == 0);
  CHECK(d.sample(~std::uint64_t{0}) == 2);
  CHECK(d.sample(std::uint64_t{1} << 63) == 2);  // u = 0.5 sits on the boundary
  ValueDistribution uni(VariableSpec{4, {}});
  CHECK(uni.sample(0) == 0);
  CHECK(uni.sample(~std::uint64_t{0}) == 3);
}

TEST_CASE("sample tables") {
  SampleTable t(2, 3);
  CHECK(t.rows().size() == 2);
  CHECK(t.rows()[0].size() == 4);
  t.set(1, 3, 1);
  CHECK(t.at(1, 3) == 1);
  try {
    t.at(0, 4);
    FAIL("expected index-out-of-table");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::index_out_of_table);
  }
  CHECK(t.to_text() == "0 0 0 0\n0 0 0 1\n");
  CHECK(SampleTable::from_text(t.to_text()) == t);

  TableSource src(t);
  for (int i = 0; i < 4; ++i) CHECK(src.draw(1) == t.at(1, i));
  CHECK(src.peek_at(1, 3) == 1);
  try {
    src.draw(1);
    FAIL("expected table-exhausted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::table_exhausted);
  }
}
