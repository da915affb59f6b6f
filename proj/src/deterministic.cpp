// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

#include "lll/deterministic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "lll/error.hpp"

namespace lll {

PartialTable::PartialTable(std::size_t num_variables, std::uint64_t depth)
    : depth_(depth), cells_(num_variables, std::vector<std::optional<Value>>(depth + 1)) {}

std::optional<Value> PartialTable::get(VarId v, std::uint64_t index) const {
  if (v >= cells_.size() || index > depth_) return std::nullopt;
  return cells_[v][index];
}

void PartialTable::fix(VarId v, std::uint64_t index, Value value) {
  if (v >= cells_.size() || index > depth_)
    throw Error(ErrorCode::index_out_of_table, "partial table: cell out of range");
  cells_[v][index] = value;
}

bool PartialTable::complete() const {
  for (const auto& row : cells_) {
    for (const auto& c : row) {
      if (!c) return false;
    }
  }
  return true;
}

SampleTable PartialTable::to_table() const {
  SampleTable table(cells_.size(), depth_);
  for (std::size_t v = 0; v < cells_.size(); ++v) {
    for (std::uint64_t j = 0; j <= depth_; ++j) {
      if (!cells_[v][j]) throw Error(ErrorCode::invalid_argument, "partial table is incomplete");
      table.set(static_cast<VarId>(v), j, *cells_[v][j]);
    }
  }
  return table;
}

namespace {

const ConditionalProbability& conditional_of(const ProblemInstance& instance, EventId e) {
  const auto& fn = instance.event(e).conditional_prob;
  if (!fn)
    throw Error(ErrorCode::missing_conditional_capability,
                "event " + std::to_string(e) + " has no conditional probability");
  return fn;
}

// For each vertex in replay order: the (variable, sample index) pair read
// for every support position.
struct VertexCells {
  EventId label;
  std::vector<std::pair<VarId, std::uint64_t>> cells;
};

std::vector<VertexCells> replay_cells(const WitnessTree& tree, const ProblemInstance& instance) {
  std::map<VarId, std::uint64_t> used;
  std::vector<VertexCells> out;
  out.reserve(tree.size());
  for (auto idx : check_order(tree)) {
    const EventId label = tree.vertex(idx).label;
    VertexCells vc{label, {}};
    for (VarId v : instance.event(label).support) vc.cells.emplace_back(v, used[v]++);
    out.push_back(std::move(vc));
  }
  return out;
}

}  // namespace

double tree_consistency_probability(const WitnessTree& tree, const PartialTable& table,
                                    const ProblemInstance& instance) {
  double p = 1.0;
  std::vector<std::optional<Value>> partial;
  for (const auto& vc : replay_cells(tree, instance)) {
    const auto& cond = conditional_of(instance, vc.label);
    partial.clear();
    for (auto [v, j] : vc.cells) partial.push_back(table.get(v, j));
    p *= cond(partial);
    if (p == 0.0) return 0.0;
  }
  return p;
}

std::uint64_t max_sample_index(const WitnessTree& tree, const ProblemInstance& instance) {
  std::uint64_t top = 0;
  for (const auto& vc : replay_cells(tree, instance)) {
    for (const auto& cell : vc.cells) top = std::max(top, cell.second);
  }
  return top;
}

std::size_t tree_size_threshold(double budget, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw Error(ErrorCode::invalid_argument, "threshold needs epsilon in (0,1)");
  std::size_t u = 1;
  double bound = (1.0 - epsilon) * budget;
  while (bound > 0.5) {
    bound *= 1.0 - epsilon;
    ++u;
  }
  return u;
}

std::size_t count_consistent(const std::vector<WitnessTree>& trees, const SampleTable& table,
                             const ProblemInstance& instance) {
  TableSource source(table);
  std::size_t n = 0;
  for (const auto& t : trees) n += tree_check(t, instance, source) ? 1 : 0;
  return n;
}

namespace {

/// Running conditional expectation of the number of consistent trees in L.
class ConsistencyOracle {
 public:
  ConsistencyOracle(const ProblemInstance& instance, const std::vector<WitnessTree>& trees,
                    std::uint64_t depth)
      : instance_(instance),
        depth_(depth),
        values_(instance.num_variables() * (depth + 1)),
        touching_(values_.size()) {
    trees_.reserve(trees.size());
    for (std::size_t t = 0; t < trees.size(); ++t) {
      TreeState st;
      for (auto& vc : replay_cells(trees[t], instance)) {
        Vertex vx{vc.label, {}, 0.0};
        for (auto [v, j] : vc.cells) vx.cells.push_back(cell_id(v, j));
        for (std::size_t pos = 0; pos < vx.cells.size(); ++pos)
          touching_[vx.cells[pos]].push_back({t, st.vertices.size()});
        st.vertices.push_back(std::move(vx));
      }
      for (auto& vx : st.vertices) vx.factor = factor(vx, std::nullopt);
      st.probability = product(st, st.vertices.size(), 0.0);
      sum_ += st.probability;
      trees_.push_back(std::move(st));
    }
  }

  double expectation() const noexcept { return sum_; }

  /// Expectation after hypothetically fixing `cell` to `value`.
  double expectation_with(std::size_t cell, Value value) const {
    double delta = 0.0;
    for (auto [t, vi] : touching_[cell]) {
      const auto& st = trees_[t];
      if (st.probability == 0.0) continue;
      const double f = factor(st.vertices[vi], std::pair(cell, value));
      delta += product(st, vi, f) - st.probability;
    }
    return sum_ + delta;
  }

  void fix(std::size_t cell, Value value) {
    values_[cell] = value;
    for (auto [t, vi] : touching_[cell]) {
      auto& st = trees_[t];
      if (st.probability == 0.0) continue;
      st.vertices[vi].factor = factor(st.vertices[vi], std::nullopt);
      const double p = product(st, st.vertices.size(), 0.0);
      sum_ += p - st.probability;
      st.probability = p;
    }
  }

  /// Exact recomputation, free of accumulated rounding.
  double recompute() {
    sum_ = 0.0;
    for (auto& st : trees_) sum_ += st.probability;
    return sum_;
  }

  std::size_t count_certain() const {
    std::size_t n = 0;
    for (const auto& st : trees_) n += st.probability == 1.0 ? 1 : 0;
    return n;
  }

  std::size_t cell_id(VarId v, std::uint64_t j) const {
    return static_cast<std::size_t>(v) * (depth_ + 1) + static_cast<std::size_t>(j);
  }

 private:
  struct Vertex {
    EventId label;
    std::vector<std::size_t> cells;
    double factor;
  };
  struct TreeState {
    std::vector<Vertex> vertices;
    double probability = 0.0;
  };

  double factor(const Vertex& vx, std::optional<std::pair<std::size_t, Value>> override) const {
    std::vector<std::optional<Value>> partial;
    partial.reserve(vx.cells.size());
    for (auto c : vx.cells) {
      if (override && override->first == c) {
        partial.emplace_back(override->second);
      } else {
        partial.push_back(values_[c]);
      }
    }
    return conditional_of(instance_, vx.label)(partial);
  }

  // Product of all factors, with vertex `replace` (if in range) using `f`.
  static double product(const TreeState& st, std::size_t replace, double f) {
    double p = 1.0;
    for (std::size_t i = 0; i < st.vertices.size(); ++i) {
      p *= i == replace ? f : st.vertices[i].factor;
      if (p == 0.0) return 0.0;
    }
    return p;
  }

  const ProblemInstance& instance_;
  std::uint64_t depth_;
  std::vector<std::optional<Value>> values_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> touching_;
  std::vector<TreeState> trees_;
  double sum_ = 0.0;
};

// Tolerance for floating-point drift in the running expectation.
constexpr double kExpectationSlack = 1e-12;

}  // namespace

DerandomizeReport derandomized_solve(const ProblemInstance& instance,
                                     const DependencyGraph& graph, const XAssignment& x,
                                     double epsilon, const DerandomizeOptions& options) {
  if (graph.kind() != GraphKind::standard)
    throw Error(ErrorCode::invalid_argument, "derandomized_solve needs the standard graph");
  if (graph.num_events() != instance.num_events() || x.size() != instance.num_events())
    throw Error(ErrorCode::invalid_argument, "graph / x / instance size mismatch");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw Error(ErrorCode::invalid_argument, "derandomized_solve needs epsilon in (0,1)");

  const auto n = instance.num_variables();
  const auto m = instance.num_events();
  DerandomizeReport report;

  if (m == 0) {
    report.table = SampleTable(n, 0);
    report.rescaled_epsilon = epsilon / 2.0;
    TableSource source(report.table);
    report.solve = solve_sequential(instance, source);
    return report;
  }

  for (std::size_t e = 0; e < m; ++e) conditional_of(instance, static_cast<EventId>(e));
  const auto condition = check_x_condition(instance, graph, x, epsilon);
  if (!condition.pass)
    throw Error(ErrorCode::invalid_argument,
                "x-assignment fails the epsilon-slack condition; derandomization needs it");

  auto [rescaled, eps2] = rescale_for_derandomization(x, epsilon);
  report.rescaled_x = rescaled;
  report.rescaled_epsilon = eps2;
  report.budget = resample_budget(rescaled);
  report.threshold = tree_size_threshold(report.budget, eps2);
  report.range = shrink_range_bound(report.threshold, graph.max_degree());

  report.trees = enumerate_trees(instance, graph, report.range,
                                 EnumerationOptions{options.tree_cap, true});
  report.tree_count = report.trees.size();

  // Columns 0..u suffice for the run itself; trees in L may read further, and
  // those cells are fixed too so the final count is exact.
  std::uint64_t depth = report.threshold;
  for (const auto& t : report.trees) depth = std::max(depth, max_sample_index(t, instance));

  ConsistencyOracle oracle(instance, report.trees, depth);
  report.initial_expectation = oracle.expectation();
  if (report.initial_expectation > 0.5 + kExpectationSlack)
    throw Error(ErrorCode::expectation_exceeds_half,
                "initial expected number of consistent trees exceeds 1/2");

  PartialTable partial(n, depth);
  double previous = report.initial_expectation;
  report.expectation_trace.reserve(n * (depth + 1));
  for (std::size_t v = 0; v < n; ++v) {
    const auto domain = instance.variable(static_cast<VarId>(v)).domain_size;
    for (std::uint64_t j = 0; j <= depth; ++j) {
      const auto cell = oracle.cell_id(static_cast<VarId>(v), j);
      Value best = 0;
      double best_value = oracle.expectation_with(cell, 0);
      for (Value d = 1; d < domain; ++d) {
        const double candidate = oracle.expectation_with(cell, d);
        if (candidate < best_value) {
          best_value = candidate;
          best = d;
        }
      }
      oracle.fix(cell, best);
      partial.fix(static_cast<VarId>(v), j, best);
      const double now = oracle.expectation();
      if (now > previous + kExpectationSlack || now > 0.5 + kExpectationSlack)
        throw Error(ErrorCode::expectation_exceeds_half,
                    "conditional expectation increased while fixing the sample table");
      report.expectation_trace.push_back(now);
      previous = now;
    }
  }
  oracle.recompute();
  report.table = partial.to_table();
  report.consistent_after = oracle.count_certain();
  if (report.consistent_after != 0)
    throw Error(ErrorCode::expectation_exceeds_half,
                "a tree in L is still consistent with the completed table");

  TableSource source(report.table);
  const auto max_steps = static_cast<std::uint64_t>(n) * (report.threshold + 1);
  report.solve = solve_sequential(instance, source, SelectionPolicy::lowest_id(), max_steps);
  if (!report.solve.terminated)
    throw Error(ErrorCode::table_exhausted,
                "table-driven run did not terminate within its column budget");
  return report;
}

}  // namespace lll
