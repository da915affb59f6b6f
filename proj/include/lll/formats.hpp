// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include "lll/applications.hpp"

namespace lll {

/// DIMACS CNF: `c` comment lines, a `p cnf <vars> <clauses>` header and
/// zero-terminated clauses. Throws `ParseError` with the line number.
CnfFormula parse_dimacs(std::string_view text);
std::string emit_dimacs(const CnfFormula& formula);

/// `h <vertices> <edges>` header followed by one edge per line as 1-based
/// vertex ids. `c` lines are comments.
Hypergraph parse_hypergraph(std::string_view text);
std::string emit_hypergraph(const Hypergraph& hg);

enum class InputKind { cnf, hypergraph, unknown };

/// Looks at the first non-comment line: `p cnf` or `h`.
InputKind detect_input_kind(std::string_view text);

}  // namespace lll
