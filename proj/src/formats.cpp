// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

#include "lll/formats.hpp"

#include <charconv>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <vector>

#include "lll/error.hpp"

namespace lll {

namespace {

struct Line {
  std::size_t number;
  std::string_view text;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t start = 0;
  std::size_t number = 1;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back({number++, line});
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
std::optional<T> to_number(std::string_view tok) {
  T v{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
  return v;
}

bool is_comment(const std::vector<std::string_view>& toks) {
  return !toks.empty() && (toks[0] == "c" || toks[0][0] == 'c');
}

}  // namespace

CnfFormula parse_dimacs(std::string_view text) {
  CnfFormula f;
  std::optional<std::size_t> declared_clauses;
  std::vector<int> current;
  std::size_t last_line = 0;
  for (const auto& line : split_lines(text)) {
    last_line = line.number;
    const auto toks = tokens(line.text);
    if (toks.empty() || is_comment(toks)) continue;
    if (toks[0] == "%") break;
    if (toks[0] == "p") {
      if (declared_clauses) throw ParseError(line.number, "duplicate header");
      if (toks.size() != 4 || toks[1] != "cnf") throw ParseError(line.number, "malformed header");
      const auto n = to_number<std::uint32_t>(toks[2]);
      const auto m = to_number<std::size_t>(toks[3]);
      if (!n || !m) throw ParseError(line.number, "malformed header counts");
      f.num_vars = *n;
      declared_clauses = *m;
      continue;
    }
    if (!declared_clauses) throw ParseError(line.number, "clause before the p cnf header");
    for (auto tok : toks) {
      const auto lit = to_number<int>(tok);
      if (!lit) throw ParseError(line.number, "invalid literal '" + std::string(tok) + "'");
      if (*lit == 0) {
        if (current.empty()) throw ParseError(line.number, "empty clause");
        f.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (static_cast<std::uint32_t>(std::abs(*lit)) > f.num_vars)
        throw ParseError(line.number, "literal " + std::string(tok) + " out of range");
      for (int prev : current) {
        if (std::abs(prev) == std::abs(*lit))
          throw ParseError(line.number, "variable repeated within a clause");
      }
      current.push_back(*lit);
    }
  }
  if (!declared_clauses) throw ParseError(last_line, "missing p cnf header");
  if (!current.empty()) throw ParseError(last_line, "unterminated clause");
  if (f.clauses.size() != *declared_clauses)
    throw ParseError(last_line, "header declares " + std::to_string(*declared_clauses) +
                                    " clauses, found " + std::to_string(f.clauses.size()));
  return f;
}

std::string emit_dimacs(const CnfFormula& formula) {
  std::ostringstream out;
  out << "p cnf " << formula.num_vars << ' ' << formula.clauses.size() << '\n';
  for (const auto& clause : formula.clauses) {
    for (int lit : clause) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

Hypergraph parse_hypergraph(std::string_view text) {
  Hypergraph hg;
  std::optional<std::size_t> declared_edges;
  std::size_t last_line = 0;
  for (const auto& line : split_lines(text)) {
    last_line = line.number;
    const auto toks = tokens(line.text);
    if (toks.empty() || is_comment(toks)) continue;
    if (toks[0] == "h") {
      if (declared_edges) throw ParseError(line.number, "duplicate header");
      if (toks.size() != 3) throw ParseError(line.number, "malformed header");
      const auto n = to_number<std::uint32_t>(toks[1]);
      const auto m = to_number<std::size_t>(toks[2]);
      if (!n || !m) throw ParseError(line.number, "malformed header counts");
      hg.num_vertices = *n;
      declared_edges = *m;
      continue;
    }
    if (!declared_edges) throw ParseError(line.number, "edge before the h header");
    std::vector<std::uint32_t> edge;
    for (auto tok : toks) {
      const auto v = to_number<std::uint32_t>(tok);
      if (!v || *v == 0 || *v > hg.num_vertices)
        throw ParseError(line.number, "invalid vertex '" + std::string(tok) + "'");
      for (auto prev : edge) {
        if (prev == *v - 1) throw ParseError(line.number, "vertex repeated within an edge");
      }
      edge.push_back(*v - 1);
    }
    if (edge.size() < 2) throw ParseError(line.number, "edge needs at least two vertices");
    hg.edges.push_back(std::move(edge));
  }
  if (!declared_edges) throw ParseError(last_line, "missing h header");
  if (hg.edges.size() != *declared_edges)
    throw ParseError(last_line, "header declares " + std::to_string(*declared_edges) +
                                    " edges, found " + std::to_string(hg.edges.size()));
  return hg;
}

std::string emit_hypergraph(const Hypergraph& hg) {
  std::ostringstream out;
  out << "h " << hg.num_vertices << ' ' << hg.edges.size() << '\n';
  for (const auto& edge : hg.edges) {
    for (std::size_t i = 0; i < edge.size(); ++i) {
      if (i) out << ' ';
      out << edge[i] + 1;
    }
    out << '\n';
  }
  return out.str();
}

InputKind detect_input_kind(std::string_view text) {
  for (const auto& line : split_lines(text)) {
    const auto toks = tokens(line.text);
    if (toks.empty() || is_comment(toks)) continue;
    if (toks.size() >= 2 && toks[0] == "p" && toks[1] == "cnf") return InputKind::cnf;
    if (toks[0] == "h") return InputKind::hypergraph;
    return InputKind::unknown;
  }
  return InputKind::unknown;
}

}  // namespace lll
