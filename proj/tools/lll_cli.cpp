// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "lll/lll.h"

namespace {

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lll-solve: resampling solver for CNF and hypergraph 2-colouring"};

  std::string input_path, mode = "sequential", graph = "standard", policy, x_path, stats_path;
  std::uint64_t seed = 0, max_steps = 0, max_rounds = 0;
  double epsilon = 0.0;
  bool override_check = false, elementary = false;

  const std::map<std::string, lll_mode> modes{{"sequential", LLL_MODE_SEQUENTIAL},
                                               {"parallel", LLL_MODE_PARALLEL},
                                               {"deterministic", LLL_MODE_DETERMINISTIC}};
  const std::map<std::string, lll_graph> graphs{{"standard", LLL_GRAPH_STANDARD},
                                                 {"lopsided", LLL_GRAPH_LOPSIDED}};
  const std::map<std::string, lll_policy> policies{{"lowest-id", LLL_POLICY_LOWEST_ID},
                                                    {"random", LLL_POLICY_RANDOM},
                                                    {"greedy", LLL_POLICY_GREEDY_MIS},
                                                    {"luby", LLL_POLICY_LUBY_STEP}};

  app.add_option("input", input_path, "DIMACS CNF or 'h' hypergraph file")->required();
  app.add_option("--mode", mode)->check(CLI::IsMember({"sequential", "parallel", "deterministic"}));
  app.add_option("--graph", graph)->check(CLI::IsMember({"standard", "lopsided"}));
  app.add_option("--seed", seed);
  app.add_option("--policy", policy)->check(CLI::IsMember({"lowest-id", "random", "greedy", "luby"}));
  app.add_option("--epsilon", epsilon);
  app.add_option("--x-file", x_path, "m whitespace-separated reals in (0,1)");
  auto* steps_opt = app.add_option("--max-steps", max_steps);
  auto* rounds_opt = app.add_option("--max-rounds", max_rounds);
  app.add_option("--stats-out", stats_path, "write the stats document here instead of stderr");
  app.add_flag("--override-check", override_check, "run even if the x-condition fails");
  app.add_flag("--elementary", elementary, "split events into elementary events first");
  CLI11_PARSE(app, argc, argv);

  const auto input = slurp(input_path);
  if (!input) {
    std::cerr << "error: cannot read " << input_path << "\n";
    return 1;
  }
  std::optional<std::string> x_text;
  if (!x_path.empty()) {
    x_text = slurp(x_path);
    if (!x_text) {
      std::cerr << "error: cannot read " << x_path << "\n";
      return 1;
    }
  }

  lll_run_options opts;
  lll_run_options_init(&opts);
  opts.mode = modes.at(mode);
  opts.graph = graphs.at(graph);
  opts.seed = seed;
  opts.policy = policy.empty() ? LLL_POLICY_DEFAULT : policies.at(policy);
  opts.epsilon = epsilon;
  opts.x_text = x_text ? x_text->c_str() : nullptr;
  opts.has_max_steps = *steps_opt ? 1 : 0;
  opts.max_steps = max_steps;
  opts.has_max_rounds = *rounds_opt ? 1 : 0;
  opts.max_rounds = max_rounds;
  opts.override_check = override_check;
  opts.elementary = elementary;

  lll_run_result* result = nullptr;
  if (lll_run(input->data(), input->size(), &opts, &result) != LLL_OK) {
    std::cerr << "error: " << lll_last_error() << "\n";
    return 1;
  }

  const int status = lll_run_result_exit_status(result);
  const std::string stats = lll_run_result_stats(result);
  if (!stats.empty()) {
    if (stats_path.empty()) {
      std::cerr << stats;
    } else {
      std::ofstream out(stats_path, std::ios::binary);
      out << stats;
      if (!out) std::cerr << "error: cannot write " << stats_path << "\n";
    }
  }
  const std::string message = lll_run_result_message(result);
  if (!message.empty()) std::cerr << (status == 0 ? "" : "error: ") << message << "\n";
  if (status == 0) {
    std::cout << "s SATISFIABLE\n" << lll_run_result_model_line(result) << "\n";
  }
  lll_run_result_free(result);
  return status;
}
