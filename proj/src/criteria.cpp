// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

#include "lll/criteria.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "lll/error.hpp"

namespace lll {

XAssignment::XAssignment(std::vector<double> x) : x_(std::move(x)) {
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!(x_[i] > 0.0 && x_[i] < 1.0))
      throw Error(ErrorCode::invalid_argument,
                  "x(" + std::to_string(i) + ") must lie strictly inside (0,1)");
  }
}

std::vector<EventId> ConditionReport::failing() const {
  std::vector<EventId> out;
  for (const auto& ev : events) {
    if (!ev.pass) out.push_back(ev.event);
  }
  return out;
}

ConditionReport check_x_condition(const ProblemInstance& instance,
                                  const DependencyGraph& graph,
                                  const XAssignment& x, double epsilon) {
  const auto m = instance.num_events();
  if (x.size() != m || graph.num_events() != m)
    throw Error(ErrorCode::invalid_argument, "x-assignment / graph size mismatch");
  if (!(epsilon >= 0.0 && epsilon < 1.0))
    throw Error(ErrorCode::invalid_argument, "epsilon must lie in [0,1)");

  ConditionReport report;
  report.epsilon = epsilon;
  report.graph_kind = graph.kind();
  report.events.reserve(m);
  for (std::size_t e = 0; e < m; ++e) {
    const auto id = static_cast<EventId>(e);
    double rhs = (1.0 - epsilon) * x[id];
    for (auto b : graph.neighbors(id)) rhs *= 1.0 - x[b];
    const double lhs = instance.event(id).prob_bound;
    const bool pass = lhs <= rhs * (1.0 + kConditionSlack);
    report.events.push_back({id, lhs, rhs, pass});
    report.pass = report.pass && pass;
  }
  return report;
}

SymmetricX symmetric_x(const ProblemInstance& instance, const DependencyGraph& graph) {
  const auto d = graph.max_degree();
  SymmetricX out;
  double value = 1.0 / static_cast<double>(d + 1);
  if (value >= 1.0) {
    value = 1.0 - 1e-9;
    out.clamped = true;
  }
  out.x = XAssignment(std::vector<double>(instance.num_events(), value));
  return out;
}

double resample_budget(const XAssignment& x) {
  double total = 0.0;
  for (double v : x.values()) total += v / (1.0 - v);
  return total;
}

std::pair<XAssignment, double> rescale_for_derandomization(const XAssignment& x,
                                                           double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw Error(ErrorCode::invalid_argument, "epsilon must lie in (0,1)");
  std::vector<double> scaled(x.values());
  for (auto& v : scaled) v *= 1.0 - epsilon / 2.0;
  return {XAssignment(std::move(scaled)), epsilon / 2.0};
}

XAssignment parse_x_assignment(std::string_view text, std::size_t expected_count) {
  std::vector<double> values;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else {
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + j, v);
      if (ec != std::errc{} || ptr != text.data() + j)
        throw ParseError(line, "expected a real number, got '" +
                                   std::string(text.substr(i, j - i)) + "'");
      values.push_back(v);
      i = j;
    }
  }
  if (values.size() != expected_count)
    throw ParseError(line, "expected " + std::to_string(expected_count) +
                               " x values, found " + std::to_string(values.size()));
  return XAssignment(std::move(values));
}

}  // namespace lll
