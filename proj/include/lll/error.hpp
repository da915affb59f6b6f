// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace lll {

enum class ErrorCode {
  invalid_argument,
  parse_error,
  enumeration_limit_exceeded,
  supplied_edge_not_subset,
  index_out_of_table,
  improper_tree,
  missing_conditional_capability,
  explosion_guard,
  expectation_exceeds_half,
  table_exhausted,
};

const char* to_string(ErrorCode code) noexcept;

/// Exception type thrown by every library routine. The C API maps `code()`
/// onto its status enumeration.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure carrying the 1-based line number of the offending input.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorCode::parse_error,
              "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace lll
