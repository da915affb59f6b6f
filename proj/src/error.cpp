// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

#include "lll/error.hpp"

namespace lll {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument:
      return "invalid-argument";
    case ErrorCode::parse_error:
      return "parse-error";
    case ErrorCode::enumeration_limit_exceeded:
      return "enumeration-limit-exceeded";
    case ErrorCode::supplied_edge_not_subset:
      return "supplied-edge-not-subset";
    case ErrorCode::index_out_of_table:
      return "index-out-of-table";
    case ErrorCode::improper_tree:
      return "improper-tree";
    case ErrorCode::missing_conditional_capability:
      return "missing-conditional-capability";
    case ErrorCode::explosion_guard:
      return "explosion-guard";
    case ErrorCode::expectation_exceeds_half:
      return "expectation-exceeds-half";
    case ErrorCode::table_exhausted:
      return "table-exhausted";
  }
  return "unknown";
}

}  // namespace lll
