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

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "reference.hpp"
#include "streamsub/cardinality.hpp"

using namespace streamsub;
using namespace reftest;

namespace {

Instance zero_instance(int n, int64_t K) {
  std::vector<Item> items;
  for (int i = 0; i < n; ++i) items.push_back(Item{"z" + std::to_string(i), 1});
  std::vector<std::vector<double>> sim(2, std::vector<double>(size_t(n), 0.0));
  return Instance(items, K, std::make_shared<FacilityLocationOracle>(sim));
}

InstanceFile additive(int n, int64_t K) {
  std::string text = "K " + std::to_string(K) + "\n";
  for (int i = 0; i < n; ++i) {
    text += "item x" + std::to_string(i) + " 1 cover p" + std::to_string(i) + "\n";
  }
  return parse_instance_text(text);
}

}  // namespace

TEST_CASE("simple on instance A takes a and d in one round") {
  InstanceFile fa = instance_a();
  Instance a = build_instance(fa);
  SimpleResult r = simple_cardinality(a, 6.0, 2.0, 0.1);
  CHECK(a.ids_of(r.solution.chosen) == std::vector<std::string>{"a", "d"});
  CHECK(r.solution.value == 6.0);
  REQUIRE(r.rounds.size() == 1);
  CHECK(r.rounds[0].alpha == doctest::Approx(2.7));
  CHECK(r.solution.report.peak_stored <= a.K() + 1);
}

TEST_CASE("simple edge cases") {
  Instance a = build_instance(instance_a());
  CHECK(simple_cardinality(a.with_budget(0), 6.0, 2.0, 0.1).solution.chosen.empty());
  CHECK_THROWS_AS(simple_cardinality(a, 0.0, 2.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(simple_cardinality(a, 6.0, 2.0, 1.0), std::invalid_argument);
  Instance b = build_instance(instance_b());
  CHECK_THROWS_AS(simple_cardinality(b, 6.0, 2.0, 0.1), std::invalid_argument);

  Instance add = build_instance(additive(5, 3));
  SimpleResult r = simple_cardinality(add, 3.0, 3.0, 0.1);
  CHECK(r.solution.value == 3.0);
  CHECK(r.solution.chosen.size() == 3);
  CHECK(r.solution.value >= (1.0 - std::exp(-1.0) - 0.2) * 3.0);
}

TEST_CASE("trace lines name every considered item") {
  Instance a = build_instance(instance_a());
  std::ostringstream tr;
  AlgoOptions o;
  o.trace = &tr;
  simple_cardinality(a, 6.0, 2.0, 0.1, RoundMode::kUntilFull, o);
  std::string text = tr.str();
  CHECK(text.find("pass=1 round=1 item=a alpha=2.7 marginal=3 taken=1") !=
        std::string::npos);
  CHECK(text.find("item=b alpha=2.7 marginal=1 taken=0") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

TEST_CASE("round lemmas with exact v on random instances") {
  const double eps = 0.1;
  auto files = suite({"coverage", "facility", "weighted-coverage"}, 60, 21, 6,
                     12, 1, 5, "unit");
  for (const auto& f : files) {
    Instance inst = build_instance(f);
    RefOpt opt = ref_opt(f);
    if (!(opt.value > 0.0)) continue;
    double W = double(opt.set.size());
    SimpleResult r = simple_cardinality(inst, opt.value, W, eps);
    CHECK(int64_t(r.solution.chosen.size()) <= f.K);
    CHECK(ref_value(f, r.solution.chosen) ==
          doctest::Approx(r.solution.value).epsilon(1e-9));
    CHECK(r.rounds.size() <= size_t(std::ceil(1.0 / eps)) + 1);
    for (const RoundLog& rd : r.rounds) {
      IndexSet s = rd.start;
      s.insert(s.end(), rd.added.begin(), rd.added.end());
      double fs = ref_value(f, s);
      double gain = fs - ref_value(f, rd.start);
      CHECK(gain >= rd.alpha * double(rd.added.size()) - 1e-9);
      double size = double(s.size());
      CHECK(fs >= (1.0 - std::exp(-size / W) - 2.0 * eps) * opt.value - 1e-9);
      if (int64_t(s.size()) < f.K) CHECK(gain >= eps * opt.value - 1e-9);
    }
  }
}

TEST_CASE("binary search on instance A") {
  Instance a = build_instance(instance_a());
  BinarySearchResult r = cardinality_binary_search(a, 0.1);
  CHECK(r.m == 3.0);
  CHECK(r.p == 8);
  CHECK(r.solution.value == 6.0);
  CHECK(r.probes.size() <= 4);
}

TEST_CASE("binary search degenerate inputs") {
  InstanceFile one = parse_instance_text("K 1\nitem s 1 cover q r\n");
  Instance inst = build_instance(one);
  BinarySearchResult r = cardinality_binary_search(inst, 0.1);
  CHECK(inst.ids_of(r.solution.chosen) == std::vector<std::string>{"s"});
  int lg = int(std::ceil(std::log2(double(r.p))));
  CHECK(r.solution.report.passes <= 11 * (lg + 1) + 11);

  BinarySearchResult z = cardinality_binary_search(zero_instance(4, 2), 0.1);
  CHECK(z.solution.chosen.empty());
  CHECK(z.solution.value == 0.0);
}

TEST_CASE("parallel guesses") {
  Instance a = build_instance(instance_a());
  ParallelGuessResult r = cardinality_parallel_guess(a, 0.1);
  CHECK(r.solution.value == 6.0);
  CHECK(r.solution.report.peak_stored <= (a.K() + 1) * r.width);

  ParallelGuessResult z = cardinality_parallel_guess(zero_instance(4, 2), 0.1);
  CHECK(z.solution.chosen.empty());

  Instance all = build_instance(additive(4, 4));
  ParallelGuessResult f = cardinality_parallel_guess(all, 0.1);
  CHECK(f.solution.chosen.size() == 4);
  CHECK(f.solution.value == 4.0);
}

TEST_CASE("parallel guesses with an injected v run one machine") {
  Instance a = build_instance(instance_a());
  AlgoOptions o;
  o.v = 6.0;
  ParallelGuessResult r = cardinality_parallel_guess(a, 0.1, o);
  CHECK(r.grid == std::vector<double>{6.0});
  CHECK(r.solution.value == 6.0);
}
