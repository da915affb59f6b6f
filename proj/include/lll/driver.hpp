// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

// End-to-end run: parse an input file, check the Local Lemma condition,
// solve, verify against the raw input, and render the stats document.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "lll/model.hpp"

namespace lll {

enum class SolveMode { sequential, parallel, deterministic };
enum class PolicyChoice { lowest_id, random_uniform, greedy_mis, luby_step };

struct RunConfig {
  SolveMode mode = SolveMode::sequential;
  GraphKind graph = GraphKind::standard;
  std::uint64_t seed = 0;
  std::optional<PolicyChoice> policy;  // mode default when unset
  double epsilon = 0.0;
  std::optional<std::string> x_text;  // contents of an x file; symmetric x when unset
  std::optional<std::uint64_t> max_steps;  // default_max_steps(budget) when unset
  std::optional<std::uint64_t> max_rounds;
  bool override_check = false;
  bool elementary = false;

  /// Empty when consistent, otherwise the reason it is not.
  std::string validate() const;
};

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitStepLimit = 2;

struct RunOutcome {
  int exit_status = kExitInputError;
  std::string stats;  // status "error" and the message when the input is unusable
  std::string model_line;
  std::string message;
  Assignment assignment;
};

RunOutcome run(const RunConfig& config, std::string_view input_text);

/// Checks `assignment` against the raw CNF or hypergraph text using its own
/// reading of the file. Returns an empty string when every clause is
/// satisfied (every edge bichromatic), otherwise the first failure.
std::string verify_raw_input(std::string_view input_text, const Assignment& assignment);

const char* to_string(SolveMode mode) noexcept;
const char* to_string(PolicyChoice policy) noexcept;
std::optional<SolveMode> parse_mode(std::string_view s) noexcept;
std::optional<PolicyChoice> parse_policy(std::string_view s) noexcept;
std::optional<GraphKind> parse_graph_kind(std::string_view s) noexcept;

}  // namespace lll
