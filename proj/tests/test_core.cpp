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

#include <bit>
#include <cmath>

#include "doctest.h"
#include "reference.hpp"
#include "streamsub/core.hpp"
#include "streamsub/instance_io.hpp"

using namespace streamsub;
using namespace reftest;

namespace {

class SquareOracle : public ValueOracle {
 public:
  explicit SquareOracle(int n) : n_(n) {}
  int ground_size() const override { return n_; }
  double eval(const IndexSet& s) const override {
    return double(s.size() * s.size());
  }

 private:
  int n_;
};

}  // namespace

TEST_CASE("coverage values on instance A") {
  Instance a = build_instance(instance_a());
  CHECK(oracle_value(a, {"a", "d"}) == 6.0);
  CHECK(oracle_value(a, {"b", "c"}) == 3.0);
  CHECK(oracle_value(a, {}) == 0.0);
  CHECK_THROWS_AS(oracle_value(a, {"zz"}), std::invalid_argument);
}

TEST_CASE("value and marginal each cost one call") {
  Instance a = build_instance(instance_a());
  uint64_t c0 = a.oracle().calls();
  a.oracle().value({0, 3});
  CHECK(a.oracle().calls() == c0 + 1);
  double m = a.oracle().marginal(1, {0});
  CHECK(a.oracle().calls() == c0 + 2);
  CHECK(m == 1.0);
}

TEST_CASE("brute force on the small fixtures") {
  Instance a = build_instance(instance_a());
  BruteForceResult ra = brute_force_opt(a);
  CHECK(a.ids_of(ra.chosen) == std::vector<std::string>{"a", "d"});
  CHECK(ra.value == 6.0);

  InstanceFile fb = instance_b();
  Instance b = build_instance(fb);
  BruteForceResult rb = brute_force_opt(b);
  RefOpt ref = ref_opt(fb);
  CHECK(rb.value == ref.value);
  CHECK(b.cost(rb.chosen) <= 3);

  Instance z = a.with_budget(0);
  BruteForceResult rz = brute_force_opt(z);
  CHECK(rz.chosen.empty());
  CHECK(rz.value == 0.0);
}

TEST_CASE("brute force agrees with the reference on random instances") {
  auto files = suite({"coverage", "weighted-coverage", "facility"}, 30, 11, 6,
                     12, 2, 9, "uniform");
  for (const auto& f : files) {
    Instance inst = build_instance(f);
    BruteForceResult r = brute_force_opt(inst);
    RefOpt ref = ref_opt(f);
    CHECK(r.value == doctest::Approx(ref.value).epsilon(1e-12));
    CHECK(inst.cost(r.chosen) <= f.K);
    CHECK(ref_value(f, r.chosen) == doctest::Approx(r.value).epsilon(1e-12));
    std::vector<int64_t> costs;
    for (Index e : r.chosen) costs.push_back(inst.cost(e));
    std::sort(costs.rbegin(), costs.rend());
    CHECK(costs == r.costs);
  }
}

TEST_CASE("unit-cost brute force equals the best set of size at most K") {
  auto files = suite({"coverage", "facility"}, 20, 5, 6, 11, 1, 4, "unit");
  for (const auto& f : files) {
    Instance inst = build_instance(f);
    double best = 0.0;
    const int n = inst.size();
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (std::popcount(mask) > f.K) continue;
      IndexSet s;
      for (int i = 0; i < n; ++i) {
        if (mask >> i & 1u) s.push_back(i);
      }
      best = std::max(best, ref_value(f, s));
    }
    CHECK(brute_force_opt(inst).value == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("brute force refuses large ground sets") {
  GeneratorSpec g;
  g.n = 25;
  g.K = 5;
  Instance inst = build_instance(generate_instance(g));
  CHECK_THROWS_AS(brute_force_opt(inst), CapacityError);
}

TEST_CASE("oracle law checker") {
  Instance a = build_instance(instance_a());
  IndexSet ground{0, 1, 2, 3};
  CHECK(check_submodular(a.oracle(), ground, 1000, 3).pass);

  SquareOracle sq(4);
  SubmodularCheck bad = check_submodular(sq, ground, 1000, 3);
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.witness);
  CHECK(bad.witness->lhs < bad.witness->rhs);

  GeneratorSpec g;
  g.family = "facility";
  g.n = 10;
  Instance fl = build_instance(generate_instance(g));
  IndexSet all;
  for (Index e = 0; e < fl.size(); ++e) all.push_back(e);
  CHECK(check_submodular(fl.oracle(), all, 1000, 4).pass);
  CHECK_THROWS(check_submodular(fl.oracle(), all, 0, 4));
}

TEST_CASE("residual oracle shares the counter and subtracts the base") {
  Instance a = build_instance(instance_a());
  uint64_t c0 = a.oracle().calls();
  ResidualOracle g(a.oracle_ptr(), {0});
  CHECK(a.oracle().calls() == c0 + 1);
  CHECK(g.base_value() == 3.0);
  CHECK(g.value({3}) == 3.0);
  CHECK(g.marginal(1, {}) == 1.0);
  CHECK(g.marginal(0, {}) == 0.0);
  CHECK(a.oracle().calls() == c0 + 4);
  // f(e + S) = f(e) + f(S | e).
  CHECK(a.oracle().value({0, 3}) == g.base_value() + g.value({3}));
}

TEST_CASE("instance files round-trip exactly") {
  for (const char* fam : {"coverage", "weighted-coverage", "facility", "dust",
                          "planted-heavy-pair", "planted-large-item"}) {
    GeneratorSpec g;
    g.family = fam;
    g.n = 12;
    g.K = 10;
    g.seed = 9;
    InstanceFile f = generate_instance(g);
    std::string text = serialize_instance(f);
    InstanceFile back = parse_instance_text(text);
    CHECK(back == f);
    CHECK(serialize_instance(back) == text);
  }
}

TEST_CASE("instance validation") {
  CHECK_THROWS(parse_instance_text("K 3\nitem a 1.5 cover x\n"));
  CHECK_THROWS(parse_instance_text("K 3\nitem a 4 cover x\nitem a 1 cover y\n"));
  CHECK_THROWS(build_instance(parse_instance_text("K 3\nitem a 4 cover x\n")));
}
