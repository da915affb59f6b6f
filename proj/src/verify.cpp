// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

// Output verification that reads the input text directly and shares no code
// with the parsers or instance builders.

#include <sstream>
#include <string>
#include <vector>

#include "lll/driver.hpp"

namespace lll {

std::string verify_raw_input(std::string_view input_text, const Assignment& assignment) {
  std::istringstream in{std::string(input_text)};
  std::string line;
  enum { none, cnf, hyper } kind = none;
  std::vector<long> clause;
  std::size_t item = 0;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first) || first[0] == 'c') continue;
    if (first == "%") break;
    if (first == "p") {
      kind = cnf;
      continue;
    }
    if (first == "h") {
      kind = hyper;
      continue;
    }
    std::istringstream all(line);
    if (kind == cnf) {
      long lit = 0;
      while (all >> lit) {
        if (lit != 0) {
          clause.push_back(lit);
          continue;
        }
        ++item;
        bool sat = false;
        for (long l : clause) {
          const auto var = static_cast<std::size_t>(l > 0 ? l : -l) - 1;
          if (var >= assignment.size()) return "clause " + std::to_string(item) + ": variable out of range";
          const bool value = assignment[var] != 0;
          if ((l > 0) == value) sat = true;
        }
        if (!sat) return "clause " + std::to_string(item) + " is falsified";
        clause.clear();
      }
    } else if (kind == hyper) {
      ++item;
      long v = 0;
      bool seen0 = false, seen1 = false;
      while (all >> v) {
        const auto idx = static_cast<std::size_t>(v) - 1;
        if (v < 1 || idx >= assignment.size()) return "edge " + std::to_string(item) + ": vertex out of range";
        (assignment[idx] == 0 ? seen0 : seen1) = true;
      }
      if (!(seen0 && seen1)) return "edge " + std::to_string(item) + " is monochromatic";
    } else {
      return "unrecognised input";
    }
  }
  if (kind == none) return "unrecognised input";
  return {};
}

}  // namespace lll
