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

#ifndef STREAMSUB_HARNESS_HPP_
#define STREAMSUB_HARNESS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "streamsub/core.hpp"
#include "streamsub/instance_io.hpp"
#include "streamsub/simple.hpp"

namespace streamsub {

// Families: coverage, weighted-coverage, facility, planted-heavy-pair,
// planted-large-item, dust.
struct GeneratorSpec {
  std::string family = "coverage";
  int n = 12;
  int64_t K = 10;
  // "unit" or "uniform" on [1, cost_max] (cost_max defaults to K).
  std::string costs = "uniform";
  int64_t cost_max = 0;
  uint64_t seed = 1;
};

// Deterministic in (spec, seed). Planted families record the planted set in
// a "# planted ..." comment. Throws std::invalid_argument on bad parameters.
InstanceFile generate_instance(const GeneratorSpec& spec);

// Ids listed on the "# planted <label> id..." comment, empty if none.
std::vector<std::string> planted_ids(const InstanceFile& file,
                                     const std::string& label);

// Marginal greedy by density f(e|S)/c(e) over all items, one item per pass.
// Not a streaming algorithm; used as a yardstick only.
Solution greedy_baseline(const Instance& inst);

// Algorithm names accepted by run_algorithm and the CLI.
const std::vector<std::string>& algorithm_names();

struct RunOptions {
  double eps = 0.1;
  AlgoOptions algo;
  // Width for the single-guess Simple variants; K when unset.
  std::optional<double> W;
};

// Throws std::invalid_argument for an unknown name. The Simple variants
// without an injected v try every estimate grid value and keep the best.
Solution run_algorithm(const std::string& name, const Instance& inst,
                       const RunOptions& opts);

struct RunReport {
  std::string instance;
  std::string algorithm;
  double eps = 0.0;
  double value = 0.0;
  std::optional<double> opt;
  std::vector<std::string> chosen;
  std::string branch;
  ResourceReport report;
  bool streaming = true;
  std::string error;

  // f(S)/f(OPT) when OPT is known, else f(S).
  double ratio() const;
};

struct BenchmarkConfig {
  std::vector<std::string> instances;
  std::vector<std::string> algorithms;
  std::vector<double> epsilons;
  bool exact_v = false;
  std::string out_prefix = "bench";
};

// Reads the JSON config; relative instance paths resolve against the config
// file's directory.
BenchmarkConfig read_config(const std::string& path);

struct BenchmarkResult {
  std::vector<RunReport> rows;
  int errors = 0;
};

// Writes <out_prefix>.jsonl (every row) and <out_prefix>.csv (rows without
// errors).
BenchmarkResult run_benchmark(const BenchmarkConfig& config);

std::string report_json(const RunReport& r);
std::string csv_header();
std::string csv_row(const RunReport& r);

struct VerifyResult {
  bool pass = true;
  std::vector<std::string> lines;
};

// Oracle laws, feasibility and live round checks of every algorithm, and
// ratio <= 1 when the instance is small enough for brute force.
VerifyResult verify_instance(const Instance& inst, double eps, int trials,
                             uint64_t seed);

}  // namespace streamsub

#endif  // STREAMSUB_HARNESS_HPP_
