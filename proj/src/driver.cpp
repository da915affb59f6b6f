// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

#include "lll/driver.hpp"

#include <json.hpp>
#include <map>
#include <sstream>

#include "lll/applications.hpp"
#include "lll/criteria.hpp"
#include "lll/deterministic.hpp"
#include "lll/error.hpp"
#include "lll/formats.hpp"
#include "lll/parallel.hpp"
#include "lll/solver.hpp"
#include "lll/witness_tree.hpp"

namespace lll {

using json = nlohmann::json;

const char* to_string(SolveMode mode) noexcept {
  switch (mode) {
    case SolveMode::sequential: return "sequential";
    case SolveMode::parallel: return "parallel";
    case SolveMode::deterministic: return "deterministic";
  }
  return "?";
}

const char* to_string(PolicyChoice policy) noexcept {
  switch (policy) {
    case PolicyChoice::lowest_id: return "lowest-id";
    case PolicyChoice::random_uniform: return "random";
    case PolicyChoice::greedy_mis: return "greedy";
    case PolicyChoice::luby_step: return "luby";
  }
  return "?";
}

std::optional<SolveMode> parse_mode(std::string_view s) noexcept {
  if (s == "sequential") return SolveMode::sequential;
  if (s == "parallel") return SolveMode::parallel;
  if (s == "deterministic") return SolveMode::deterministic;
  return std::nullopt;
}

std::optional<PolicyChoice> parse_policy(std::string_view s) noexcept {
  if (s == "lowest-id") return PolicyChoice::lowest_id;
  if (s == "random") return PolicyChoice::random_uniform;
  if (s == "greedy") return PolicyChoice::greedy_mis;
  if (s == "luby") return PolicyChoice::luby_step;
  return std::nullopt;
}

std::optional<GraphKind> parse_graph_kind(std::string_view s) noexcept {
  if (s == "standard") return GraphKind::standard;
  if (s == "lopsided") return GraphKind::lopsided;
  return std::nullopt;
}

std::string RunConfig::validate() const {
  if (mode == SolveMode::deterministic && !(epsilon > 0.0))
    return "deterministic mode requires --epsilon > 0";
  if (!(epsilon >= 0.0 && epsilon < 1.0)) return "epsilon must lie in [0,1)";
  if (mode == SolveMode::parallel && graph == GraphKind::lopsided)
    return "the parallel solver has no lopsided variant";
  if (mode == SolveMode::deterministic && graph == GraphKind::lopsided)
    return "the deterministic solver runs on the standard graph only";
  if (policy) {
    const bool seq_policy =
        *policy == PolicyChoice::lowest_id || *policy == PolicyChoice::random_uniform;
    if (mode == SolveMode::parallel && seq_policy)
      return "parallel mode takes --policy greedy or luby";
    if (mode != SolveMode::parallel && !seq_policy)
      return "sequential modes take --policy lowest-id or random";
  }
  return {};
}

namespace {

const char* kind_name(GraphKind k) { return k == GraphKind::standard ? "standard" : "lopsided"; }

// One key per line, keys sorted, values compact: valid JSON that diffs well.
std::string render_stats(const json& doc) {
  std::string out = "{\n";
  bool first = true;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (!first) out += ",\n";
    first = false;
    out += "  " + json(it.key()).dump() + ": " + it.value().dump();
  }
  out += "\n}\n";
  return out;
}

json criteria_json(const ConditionReport& report) {
  json lhs = json::array(), rhs = json::array(), pass = json::array();
  for (const auto& ev : report.events) {
    lhs.push_back(ev.lhs);
    rhs.push_back(ev.rhs);
    pass.push_back(ev.pass);
  }
  json out;
  out["epsilon"] = report.epsilon;
  out["event_pass"] = pass;
  out["graph"] = kind_name(report.graph_kind);
  out["lhs"] = lhs;
  out["pass"] = report.pass;
  out["rhs"] = rhs;
  return out;
}

std::string model_line(bool cnf, const Assignment& a) {
  std::ostringstream out;
  out << (cnf ? "v" : "colors");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (cnf) {
      out << ' ' << (a[i] ? "" : "-") << i + 1;
    } else {
      out << ' ' << a[i];
    }
  }
  if (cnf) out << " 0";
  return out.str();
}

}  // namespace

RunOutcome run(const RunConfig& config, std::string_view input_text) {
  RunOutcome outcome;
  if (auto why = config.validate(); !why.empty()) {
    outcome.message = why;
    return outcome;
  }

  json stats;
  stats["mode"] = to_string(config.mode);
  stats["graph"] = kind_name(config.graph);
  stats["seed"] = config.seed;
  stats["override_check"] = config.override_check;
  stats["elementary"] = config.elementary;

  try {
    const auto kind = detect_input_kind(input_text);
    if (kind == InputKind::unknown) {
      outcome.message = "unrecognised input: expected a 'p cnf' or 'h' header";
      return outcome;
    }
    const bool is_cnf = kind == InputKind::cnf;

    ProblemInstance instance;
    std::optional<std::vector<std::pair<EventId, EventId>>> supplied;
    if (is_cnf) {
      auto built = cnf_to_instance(parse_dimacs(input_text));
      instance = std::move(built.instance);
      supplied = std::move(built.conflicts);
    } else {
      instance = hypergraph_to_instance(parse_hypergraph(input_text));
    }
    if (config.elementary) {
      instance = std::move(break_into_elementary(instance).instance);
      supplied.reset();  // recompute lopsidependence over the new events
    }
    stats["input"] = is_cnf ? "cnf" : "hypergraph";
    stats["num_variables"] = instance.num_variables();
    stats["num_events"] = instance.num_events();
    stats["problem_size"] = instance.problem_size();

    const DependencyGraph standard = build_dependency_graph(instance);
    const DependencyGraph graph = config.graph == GraphKind::standard
                                      ? standard
                                      : build_lopsidependency_graph(instance, supplied);
    stats["max_degree"] = graph.max_degree();

    XAssignment x;
    if (config.x_text) {
      x = parse_x_assignment(*config.x_text, instance.num_events());
      stats["x_source"] = "file";
    } else {
      auto sym = symmetric_x(instance, graph);
      x = sym.x;
      stats["x_source"] = sym.clamped ? "symmetric-clamped" : "symmetric";
    }
    stats["x"] = x.values();
    const double budget = resample_budget(x);
    stats["budget"] = budget;

    const auto report = check_x_condition(instance, graph, x, config.epsilon);
    stats["criteria"] = criteria_json(report);
    if (!report.pass && !config.override_check) {
      stats["status"] = "refused";
      outcome.stats = render_stats(stats);
      outcome.message = "the x-condition fails for " + std::to_string(report.failing().size()) +
                        " event(s); pass --override-check to run anyway";
      return outcome;
    }

    const auto policy = config.policy.value_or(
        config.mode == SolveMode::parallel ? PolicyChoice::greedy_mis : PolicyChoice::lowest_id);
    stats["policy"] = to_string(policy);

    SolveResult result;
    if (config.mode == SolveMode::deterministic) {
      auto det = derandomized_solve(instance, graph, x, config.epsilon);
      stats["tree_list_size"] = det.tree_count;
      stats["threshold"] = det.threshold;
      stats["tree_size_range"] = {det.range.lo, det.range.hi};
      stats["initial_expectation"] = det.initial_expectation;
      stats["consistent_after"] = det.consistent_after;
      stats["table"] = det.table.rows();
      result = std::move(det.solve);
    } else {
      SampleStream stream(config.seed, instance);
      const auto limit = config.mode == SolveMode::parallel
                             ? config.max_rounds.value_or(default_max_steps(budget))
                             : config.max_steps.value_or(default_max_steps(budget));
      stats["step_limit"] = limit;
      if (config.mode == SolveMode::parallel) {
        result = solve_parallel(instance, graph, stream,
                                policy == PolicyChoice::luby_step ? MisPolicy::luby_step
                                                                  : MisPolicy::greedy,
                                limit);
        json sizes = json::array();
        for (const auto& r : result.rounds) sizes.push_back(r.selected.size());
        stats["rounds"] = result.rounds.size();
        stats["round_sizes"] = sizes;
        std::map<std::uint32_t, std::uint64_t> hist;
        for (auto d : witness_tree_depths(result.log, graph)) ++hist[d];
        json h = json::object();
        for (auto [d, c] : hist) h[std::to_string(d)] = c;
        stats["depth_histogram"] = h;
      } else {
        const auto sel = policy == PolicyChoice::random_uniform ? SelectionPolicy::random_uniform()
                                                                : SelectionPolicy::lowest_id();
        result = config.graph == GraphKind::lopsided
                     ? solve_lopsided(instance, graph, stream, sel, limit)
                     : solve_sequential(instance, stream, sel, limit);
      }
    }

    stats["per_event_resamples"] = result.log.per_event_counts();
    stats["total_steps"] = result.steps_used;
    stats["log_length"] = result.log.size();
    stats["terminated"] = result.terminated;
    outcome.assignment = result.assignment;

    if (!result.terminated) {
      stats["status"] = "step-limit";
      stats["verified"] = false;
      outcome.exit_status = kExitStepLimit;
      outcome.message = "step limit reached before every event was avoided";
    } else {
      const auto failure = verify_raw_input(input_text, result.assignment);
      stats["verified"] = failure.empty();
      if (failure.empty()) {
        stats["status"] = "solved";
        outcome.exit_status = kExitSuccess;
        outcome.model_line = model_line(is_cnf, result.assignment);
      } else {
        stats["status"] = "verification-failed";
        outcome.message = "verification failed: " + failure;
      }
    }
  } catch (const Error& e) {
    stats["status"] = "error";
    stats["error"] = e.what();
    outcome.message = e.what();
    outcome.exit_status = kExitInputError;
  }
  outcome.stats = render_stats(stats);
  return outcome;
}

}  // namespace lll
