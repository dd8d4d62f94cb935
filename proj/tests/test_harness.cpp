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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "reference.hpp"
#include "streamsub/harness.hpp"

using namespace streamsub;
using namespace reftest;

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("streamsub_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("generator is deterministic") {
  for (const char* fam : {"coverage", "weighted-coverage", "facility", "dust",
                          "planted-heavy-pair", "planted-large-item"}) {
    GeneratorSpec g;
    g.family = fam;
    g.n = 10;
    g.K = 8;
    g.seed = 5;
    CHECK(serialize_instance(generate_instance(g)) ==
          serialize_instance(generate_instance(g)));
    g.seed = 6;
    InstanceFile f = generate_instance(g);
    CHECK(int(f.items.size()) == 10);
    for (const auto& it : f.items) CHECK(it.cost <= f.K);
  }
}

TEST_CASE("dust is additive and its optimum is the top items") {
  GeneratorSpec g;
  g.family = "dust";
  g.n = 10;
  g.K = 5;
  g.costs = "unit";
  InstanceFile f = generate_instance(g);
  std::vector<double> w;
  for (Index e = 0; e < 10; ++e) w.push_back(ref_value(f, {e}));
  std::sort(w.rbegin(), w.rend());
  double top = 0.0;
  for (int i = 0; i < 5; ++i) top += w[size_t(i)];
  CHECK(ref_opt(f).value == doctest::Approx(top).epsilon(1e-12));
  CHECK(ref_value(f, {0, 1}) ==
        doctest::Approx(ref_value(f, {0}) + ref_value(f, {1})));
}

TEST_CASE("planted heavy pair construction") {
  GeneratorSpec g;
  g.family = "planted-heavy-pair";
  g.n = 10;
  g.K = 10;
  InstanceFile f = generate_instance(g);
  auto ids = planted_ids(f, "heavy_pair");
  REQUIRE(ids.size() == 2);
  IndexSet pair = indices(f, ids);
  CHECK(f.items[size_t(pair[0])].cost == 5);
  CHECK(f.items[size_t(pair[1])].cost == 5);
  CHECK(ref_value(f, pair) ==
        ref_value(f, {pair[0]}) + ref_value(f, {pair[1]}));
  CHECK(ref_opt(f).value == ref_value(f, pair));
}

TEST_CASE("planted large item manifest") {
  GeneratorSpec g;
  g.family = "planted-large-item";
  g.n = 10;
  g.K = 12;
  InstanceFile f = generate_instance(g);
  auto ids = planted_ids(f, "large_item");
  REQUIRE(ids.size() >= 2);
  IndexSet x = indices(f, ids);
  CHECK(ref_cost(f, x) <= f.K);
  CHECK(2 * f.items[size_t(x[0])].cost >= f.K);
}

TEST_CASE("invalid generator parameters") {
  GeneratorSpec g;
  g.family = "nope";
  CHECK_THROWS_AS(generate_instance(g), std::invalid_argument);
  g.family = "coverage";
  g.costs = "zipf";
  CHECK_THROWS_AS(generate_instance(g), std::invalid_argument);
  g.costs = "unit";
  g.n = 0;
  CHECK_THROWS_AS(generate_instance(g), std::invalid_argument);
  g.n = 5;
  g.family = "planted-heavy-pair";
  g.K = 1;
  CHECK_THROWS_AS(generate_instance(g), std::invalid_argument);
}

TEST_CASE("greedy baseline") {
  Instance a = build_instance(instance_a());
  Solution s = greedy_baseline(a);
  CHECK(a.ids_of(s.chosen) == std::vector<std::string>{"a", "d"});
  CHECK(s.value == 6.0);
  CHECK(greedy_baseline(a.with_budget(0)).chosen.empty());
  CHECK(s.branch.find("non-streaming") != std::string::npos);
}

TEST_CASE("run_algorithm names") {
  Instance a = build_instance(instance_a());
  RunOptions o;
  for (const auto& name : algorithm_names()) {
    Solution s = run_algorithm(name, a, o);
    CHECK(s.value <= 6.0);
    CHECK(a.cost(s.chosen) <= a.K());
  }
  CHECK_THROWS_AS(run_algorithm("bogus", a, o), std::invalid_argument);
}

TEST_CASE("benchmark rows, csv and error rows") {
  fs::path d = scratch("bench");
  GeneratorSpec g;
  g.n = 8;
  g.K = 6;
  {
    std::ofstream(d / "one.txt") << serialize_instance(generate_instance(g));
  }
  {
    std::ofstream cfg(d / "cfg.json");
    cfg << R"({"instances":["one.txt","missing.txt"],)"
        << R"("algorithms":["simple-knap","approx-05"],"epsilons":[0.1],)"
        << R"("exact_v":true,"out_prefix":")" << (d / "out").string()
        << "\"}";
  }
  BenchmarkConfig c = read_config((d / "cfg.json").string());
  BenchmarkResult r = run_benchmark(c);
  CHECK(r.rows.size() == 4);
  CHECK(r.errors == 2);
  std::string csv = slurp(d / "out.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(csv.rfind(csv_header(), 0) == 0);
  std::string jsonl = slurp(d / "out.jsonl");
  CHECK(std::count(jsonl.begin(), jsonl.end(), '\n') == 4);
  for (const auto& row : r.rows) {
    if (!row.error.empty()) continue;
    REQUIRE(row.opt);
    CHECK(row.ratio() <= 1.0 + 1e-9);
    CHECK(row.ratio() >= 0.0);
  }
  run_benchmark(c);
  // Wall time is left out of the CSV, so reruns match byte for byte.
  CHECK(slurp(d / "out.csv") == csv);
  fs::remove_all(d);
}

TEST_CASE("verify passes on a generated instance") {
  GeneratorSpec g;
  g.family = "weighted-coverage";
  g.n = 8;
  g.K = 6;
  Instance inst = build_instance(generate_instance(g));
  VerifyResult v = verify_instance(inst, 0.1, 500, 3);
  CHECK(v.pass);
}
