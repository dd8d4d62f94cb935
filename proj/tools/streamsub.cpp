// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "streamsub/harness.hpp"
#include "streamsub/instance_io.hpp"

using namespace streamsub;

int main(int argc, char** argv) {
  CLI::App app{"streaming submodular maximization"};
  app.require_subcommand(1);

  GeneratorSpec gspec;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "write a generated instance");
  gen->add_option("--family", gspec.family, "instance family")
      ->check(CLI::IsMember({"coverage", "weighted-coverage", "facility",
                             "planted-heavy-pair", "planted-large-item",
                             "dust"}));
  gen->add_option("--n", gspec.n, "number of items");
  gen->add_option("--K", gspec.K, "budget");
  gen->add_option("--costs", gspec.costs, "unit or uniform")
      ->check(CLI::IsMember({"unit", "uniform"}));
  gen->add_option("--cost-max", gspec.cost_max, "largest cost (default K)");
  gen->add_option("--seed", gspec.seed, "random seed");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  std::string config;
  auto* run = app.add_subcommand("run", "run a benchmark config");
  run->add_option("--config", config, "JSON config")->required();

  std::string algo = "approx-05", input, json_out, trace_out;
  double eps = 0.1;
  bool exact_v = false;
  std::optional<double> v, W;
  auto* solve = app.add_subcommand("solve", "run one algorithm on one file");
  solve->add_option("--algorithm", algo, "algorithm")
      ->check(CLI::IsMember(algorithm_names()));
  solve->add_option("--epsilon", eps, "accuracy parameter");
  solve->add_option("--input", input, "instance file")->required();
  solve->add_option("--json", json_out, "write the run report here");
  solve->add_flag("--exact-v", exact_v, "inject brute-force f(OPT) as v");
  solve->add_option("--trace", trace_out, "per-item round trace file");
  solve->add_option("--v", v, "injected value guess");
  solve->add_option("--W", W, "width for the Simple variants");

  int trials = 10000;
  uint64_t seed = 1;
  std::string vinput;
  double veps = 0.1;
  auto* verify = app.add_subcommand("verify", "invariant suite on one file");
  verify->add_option("--input", vinput, "instance file")->required();
  verify->add_option("--epsilon", veps, "accuracy parameter");
  verify->add_option("--trials", trials, "oracle-law trials");
  verify->add_option("--seed", seed, "seed for the oracle-law trials");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      std::string text = serialize_instance(generate_instance(gspec));
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream(gen_out, std::ios::binary) << text;
      }
      return 0;
    }
    if (*run) {
      BenchmarkResult r = run_benchmark(read_config(config));
      for (const auto& row : r.rows) {
        if (!row.error.empty()) {
          std::cerr << "error: " << row.instance << " " << row.algorithm
                    << ": " << row.error << '\n';
        }
      }
      std::cout << r.rows.size() << " rows, " << r.errors << " errors\n";
      return r.errors == 0 ? 0 : 1;
    }
    if (*solve) {
      Instance inst = load_instance(input);
      RunOptions o;
      o.eps = eps;
      o.W = W;
      o.algo.v = v;
      std::optional<double> opt;
      if (exact_v || inst.size() <= 20) opt = brute_force_opt(inst).value;
      if (exact_v) o.algo.v = opt;
      std::ofstream trace;
      if (!trace_out.empty()) {
        trace.open(trace_out, std::ios::binary);
        o.algo.trace = &trace;
      }
      Solution s = run_algorithm(algo, inst, o);
      RunReport r;
      r.instance = input;
      r.algorithm = algo;
      r.eps = eps;
      r.value = s.value;
      r.opt = opt;
      r.chosen = inst.ids_of(s.chosen);
      r.branch = s.branch;
      r.report = s.report;
      r.streaming = algo != "greedy";
      std::string js = report_json(r);
      if (!json_out.empty()) std::ofstream(json_out, std::ios::binary) << js << '\n';
      std::cout << js << '\n';
      return 0;
    }
    if (*verify) {
      VerifyResult r = verify_instance(load_instance(vinput), veps, trials, seed);
      for (const auto& line : r.lines) std::cout << line << '\n';
      return r.pass ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
