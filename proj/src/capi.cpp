// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

#include "lll/lll.h"

#include <cstring>
#include <exception>
#include <optional>
#include <string>

#include "lll/applications.hpp"
#include "lll/criteria.hpp"
#include "lll/deterministic.hpp"
#include "lll/driver.hpp"
#include "lll/error.hpp"
#include "lll/formats.hpp"
#include "lll/parallel.hpp"
#include "lll/solver.hpp"

struct lll_instance {
  lll::ProblemInstance instance;
  lll::DependencyGraph standard;
  lll::DependencyGraph lopsided;
};

struct lll_solution {
  lll::SolveResult result;
  std::string log_text;
  std::string table_text;
};

struct lll_run_result {
  lll::RunOutcome outcome;
};

namespace {

thread_local std::string g_last_error;

lll_status map_code(lll::ErrorCode code) {
  using lll::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return LLL_ERR_INVALID_ARGUMENT;
    case ErrorCode::parse_error: return LLL_ERR_PARSE;
    case ErrorCode::enumeration_limit_exceeded: return LLL_ERR_ENUMERATION_LIMIT;
    case ErrorCode::supplied_edge_not_subset: return LLL_ERR_SUPPLIED_EDGE_NOT_SUBSET;
    case ErrorCode::index_out_of_table: return LLL_ERR_INDEX_OUT_OF_TABLE;
    case ErrorCode::improper_tree: return LLL_ERR_IMPROPER_TREE;
    case ErrorCode::missing_conditional_capability: return LLL_ERR_MISSING_CONDITIONAL;
    case ErrorCode::explosion_guard: return LLL_ERR_EXPLOSION_GUARD;
    case ErrorCode::expectation_exceeds_half: return LLL_ERR_EXPECTATION_EXCEEDS_HALF;
    case ErrorCode::table_exhausted: return LLL_ERR_TABLE_EXHAUSTED;
  }
  return LLL_ERR_INTERNAL;
}

template <typename F>
lll_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return LLL_OK;
  } catch (const lll::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LLL_ERR_INTERNAL;
  }
}

lll_status fail(lll_status status, const char* what) {
  g_last_error = what;
  return status;
}

const lll::DependencyGraph& graph_of(const lll_instance* inst, lll_graph g) {
  return g == LLL_GRAPH_LOPSIDED ? inst->lopsided : inst->standard;
}

std::optional<lll::PolicyChoice> policy_of(lll_policy p) {
  switch (p) {
    case LLL_POLICY_DEFAULT: return std::nullopt;
    case LLL_POLICY_LOWEST_ID: return lll::PolicyChoice::lowest_id;
    case LLL_POLICY_RANDOM: return lll::PolicyChoice::random_uniform;
    case LLL_POLICY_GREEDY_MIS: return lll::PolicyChoice::greedy_mis;
    case LLL_POLICY_LUBY_STEP: return lll::PolicyChoice::luby_step;
  }
  return std::nullopt;
}

lll_solution* wrap(lll::SolveResult result) {
  auto* s = new lll_solution{std::move(result), {}, {}};
  s->log_text = s->result.log.to_text();
  return s;
}

}  // namespace

extern "C" {

const char* lll_version(void) { return "0.1.0"; }

const char* lll_last_error(void) { return g_last_error.c_str(); }

const char* lll_status_string(lll_status status) {
  switch (status) {
    case LLL_OK: return "ok";
    case LLL_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case LLL_ERR_PARSE: return "parse-error";
    case LLL_ERR_ENUMERATION_LIMIT: return "enumeration-limit-exceeded";
    case LLL_ERR_SUPPLIED_EDGE_NOT_SUBSET: return "supplied-edge-not-subset";
    case LLL_ERR_INDEX_OUT_OF_TABLE: return "index-out-of-table";
    case LLL_ERR_IMPROPER_TREE: return "improper-tree";
    case LLL_ERR_MISSING_CONDITIONAL: return "missing-conditional-capability";
    case LLL_ERR_EXPLOSION_GUARD: return "explosion-guard";
    case LLL_ERR_EXPECTATION_EXCEEDS_HALF: return "expectation-exceeds-half";
    case LLL_ERR_TABLE_EXHAUSTED: return "table-exhausted";
    case LLL_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

void lll_run_options_init(lll_run_options* options) {
  if (!options) return;
  std::memset(options, 0, sizeof(*options));
  options->mode = LLL_MODE_SEQUENTIAL;
  options->graph = LLL_GRAPH_STANDARD;
  options->policy = LLL_POLICY_DEFAULT;
}

lll_status lll_run(const char* input, size_t input_len, const lll_run_options* options,
                   lll_run_result** out) {
  if (!input || !options || !out) return fail(LLL_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    lll::RunConfig cfg;
    switch (options->mode) {
      case LLL_MODE_SEQUENTIAL: cfg.mode = lll::SolveMode::sequential; break;
      case LLL_MODE_PARALLEL: cfg.mode = lll::SolveMode::parallel; break;
      case LLL_MODE_DETERMINISTIC: cfg.mode = lll::SolveMode::deterministic; break;
      default: throw lll::Error(lll::ErrorCode::invalid_argument, "unknown mode");
    }
    cfg.graph = options->graph == LLL_GRAPH_LOPSIDED ? lll::GraphKind::lopsided
                                                     : lll::GraphKind::standard;
    cfg.seed = options->seed;
    cfg.policy = policy_of(options->policy);
    cfg.epsilon = options->epsilon;
    if (options->x_text) cfg.x_text = std::string(options->x_text);
    if (options->has_max_steps) cfg.max_steps = options->max_steps;
    if (options->has_max_rounds) cfg.max_rounds = options->max_rounds;
    cfg.override_check = options->override_check != 0;
    cfg.elementary = options->elementary != 0;
    if (auto why = cfg.validate(); !why.empty())
      throw lll::Error(lll::ErrorCode::invalid_argument, why);
    *out = new lll_run_result{lll::run(cfg, std::string_view(input, input_len))};
  });
}

int lll_run_result_exit_status(const lll_run_result* r) {
  return r ? r->outcome.exit_status : lll::kExitInputError;
}
const char* lll_run_result_stats(const lll_run_result* r) {
  return r ? r->outcome.stats.c_str() : "";
}
const char* lll_run_result_model_line(const lll_run_result* r) {
  return r ? r->outcome.model_line.c_str() : "";
}
const char* lll_run_result_message(const lll_run_result* r) {
  return r ? r->outcome.message.c_str() : "";
}
void lll_run_result_free(lll_run_result* r) { delete r; }

lll_status lll_instance_parse(const char* text, size_t len, int elementary, lll_instance** out) {
  if (!text || !out) return fail(LLL_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const std::string_view input(text, len);
    lll::ProblemInstance instance;
    std::optional<std::vector<std::pair<lll::EventId, lll::EventId>>> supplied;
    switch (lll::detect_input_kind(input)) {
      case lll::InputKind::cnf: {
        auto built = lll::cnf_to_instance(lll::parse_dimacs(input));
        instance = std::move(built.instance);
        supplied = std::move(built.conflicts);
        break;
      }
      case lll::InputKind::hypergraph:
        instance = lll::hypergraph_to_instance(lll::parse_hypergraph(input));
        break;
      case lll::InputKind::unknown:
        throw lll::ParseError(1, "expected a 'p cnf' or 'h' header");
    }
    if (elementary) {
      instance = std::move(lll::break_into_elementary(instance).instance);
      supplied.reset();
    }
    auto standard = lll::build_dependency_graph(instance);
    auto lopsided = lll::build_lopsidependency_graph(instance, supplied);
    *out = new lll_instance{std::move(instance), std::move(standard), std::move(lopsided)};
  });
}

size_t lll_instance_num_variables(const lll_instance* i) { return i ? i->instance.num_variables() : 0; }
size_t lll_instance_num_events(const lll_instance* i) { return i ? i->instance.num_events() : 0; }
size_t lll_instance_max_degree(const lll_instance* i, lll_graph g) {
  return i ? graph_of(i, g).max_degree() : 0;
}

lll_status lll_instance_symmetric_x(const lll_instance* inst, lll_graph g, double* x,
                                    size_t capacity) {
  if (!inst || !x) return fail(LLL_ERR_INVALID_ARGUMENT, "null argument");
  if (capacity < inst->instance.num_events())
    return fail(LLL_ERR_INVALID_ARGUMENT, "x buffer too small");
  return guarded([&] {
    const auto sym = lll::symmetric_x(inst->instance, graph_of(inst, g));
    for (std::size_t e = 0; e < sym.x.size(); ++e) x[e] = sym.x[static_cast<lll::EventId>(e)];
  });
}

lll_status lll_instance_check(const lll_instance* inst, lll_graph g, const double* x,
                              size_t x_len, double epsilon, int* pass) {
  if (!inst || (!x && x_len) || !pass) return fail(LLL_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const lll::XAssignment xa(std::vector<double>(x, x + x_len));
    *pass = lll::check_x_condition(inst->instance, graph_of(inst, g), xa, epsilon).pass ? 1 : 0;
  });
}

void lll_instance_free(lll_instance* i) { delete i; }

lll_status lll_solve_sequential(const lll_instance* inst, uint64_t seed, lll_policy policy,
                                uint64_t max_steps, lll_solution** out) {
  if (!inst || !out) return fail(LLL_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  if (policy == LLL_POLICY_GREEDY_MIS || policy == LLL_POLICY_LUBY_STEP)
    return fail(LLL_ERR_INVALID_ARGUMENT, "sequential solve takes lowest-id or random policy");
  return guarded([&] {
    lll::SampleStream stream(seed, inst->instance);
    const auto sel = policy == LLL_POLICY_RANDOM ? lll::SelectionPolicy::random_uniform()
                                                 : lll::SelectionPolicy::lowest_id();
    *out = wrap(lll::solve_sequential(inst->instance, stream, sel, max_steps));
  });
}

lll_status lll_solve_parallel(const lll_instance* inst, uint64_t seed, lll_policy policy,
                              uint64_t max_rounds, lll_solution** out) {
  if (!inst || !out) return fail(LLL_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  if (policy == LLL_POLICY_LOWEST_ID || policy == LLL_POLICY_RANDOM)
    return fail(LLL_ERR_INVALID_ARGUMENT, "parallel solve takes greedy or luby policy");
  return guarded([&] {
    lll::SampleStream stream(seed, inst->instance);
    const auto mis = policy == LLL_POLICY_LUBY_STEP ? lll::MisPolicy::luby_step : lll::MisPolicy::greedy;
    *out = wrap(lll::solve_parallel(inst->instance, inst->standard, stream, mis, max_rounds));
  });
}

lll_status lll_solve_deterministic(const lll_instance* inst, const double* x, size_t x_len,
                                   double epsilon, lll_solution** out) {
  if (!inst || !x || !out) return fail(LLL_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const lll::XAssignment xa(std::vector<double>(x, x + x_len));
    auto report = lll::derandomized_solve(inst->instance, inst->standard, xa, epsilon);
    auto* s = wrap(std::move(report.solve));
    s->table_text = report.table.to_text();
    *out = s;
  });
}

int lll_solution_terminated(const lll_solution* s) { return s && s->result.terminated ? 1 : 0; }
uint64_t lll_solution_steps(const lll_solution* s) { return s ? s->result.steps_used : 0; }
size_t lll_solution_rounds(const lll_solution* s) { return s ? s->result.rounds.size() : 0; }

size_t lll_solution_assignment(const lll_solution* s, uint32_t* values, size_t capacity) {
  if (!s) return 0;
  const auto& a = s->result.assignment;
  if (values) {
    for (std::size_t i = 0; i < a.size() && i < capacity; ++i) values[i] = a[i];
  }
  return a.size();
}

const char* lll_solution_log(const lll_solution* s) { return s ? s->log_text.c_str() : ""; }
const char* lll_solution_table(const lll_solution* s) { return s ? s->table_text.c_str() : ""; }
void lll_solution_free(lll_solution* s) { delete s; }

}  // extern "C"
