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

// Independent reference evaluation for tests. Values are computed straight
// from the instance file text model, never through the library oracles.

#ifndef STREAMSUB_TESTS_REFERENCE_HPP_
#define STREAMSUB_TESTS_REFERENCE_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "streamsub/core.hpp"
#include "streamsub/harness.hpp"
#include "streamsub/instance_io.hpp"

namespace reftest {

using streamsub::Index;
using streamsub::IndexSet;
using streamsub::InstanceFile;
using streamsub::OracleKind;

inline double ref_value(const InstanceFile& f, const IndexSet& s) {
  if (f.kind == OracleKind::kFacility) {
    double total = 0.0;
    for (const auto& row : f.sim) {
      double best = 0.0;
      for (Index e : s) best = std::max(best, row[size_t(e)]);
      total += best;
    }
    return total;
  }
  std::set<std::string> covered;
  for (Index e : s) {
    covered.insert(f.covers[size_t(e)].begin(), f.covers[size_t(e)].end());
  }
  if (f.kind == OracleKind::kCoverage) return double(covered.size());
  std::map<std::string, double> w;
  for (const auto& [u, x] : f.weights) w[u] = x;
  double total = 0.0;
  for (const auto& u : covered) {
    auto it = w.find(u);
    total += it == w.end() ? 1.0 : it->second;
  }
  return total;
}

inline int64_t ref_cost(const InstanceFile& f, const IndexSet& s) {
  int64_t c = 0;
  for (Index e : s) c += f.items[size_t(e)].cost;
  return c;
}

struct RefOpt {
  IndexSet set;
  double value = 0.0;
  // Costs of the optimal items, nonincreasing.
  std::vector<int64_t> costs;
};

// Exhaustive search over every subset within budget; the smallest-cost set
// wins value ties.
inline RefOpt ref_opt(const InstanceFile& f) {
  const int n = int(f.items.size());
  RefOpt best;
  int64_t best_cost = 0;
  IndexSet cur;
  auto visit = [&](auto&& self, int i, int64_t c) -> void {
    if (i == n) {
      double v = ref_value(f, cur);
      if (v > best.value + 1e-12 ||
          (std::abs(v - best.value) <= 1e-12 && c < best_cost)) {
        best.set = cur;
        best.value = v;
        best_cost = c;
      }
      return;
    }
    const int64_t ci = f.items[size_t(i)].cost;
    if (c + ci <= f.K) {
      cur.push_back(i);
      self(self, i + 1, c + ci);
      cur.pop_back();
    }
    self(self, i + 1, c);
  };
  visit(visit, 0, 0);
  for (Index e : best.set) best.costs.push_back(f.items[size_t(e)].cost);
  std::sort(best.costs.rbegin(), best.costs.rend());
  return best;
}

inline IndexSet indices(const InstanceFile& f,
                        const std::vector<std::string>& ids) {
  IndexSet out;
  for (const auto& id : ids) {
    for (size_t i = 0; i < f.items.size(); ++i) {
      if (f.items[i].id == id) out.push_back(Index(i));
    }
  }
  return out;
}

inline InstanceFile instance_a() {
  return streamsub::parse_instance_text(
      "K 2\n"
      "item a 1 cover 1 2 3\n"
      "item b 1 cover 3 4\n"
      "item c 1 cover 5\n"
      "item d 1 cover 4 5 6\n");
}

inline InstanceFile instance_b() {
  return streamsub::parse_instance_text(
      "K 3\n"
      "item a 2 cover 1 2 3\n"
      "item b 1 cover 3 4\n"
      "item c 1 cover 5\n"
      "item d 2 cover 4 5 6\n");
}

// Seeds spread over the suite so families and sizes vary together.
inline std::vector<InstanceFile> suite(const std::vector<std::string>& families,
                                       int count, uint64_t seed, int n_lo,
                                       int n_hi, int64_t K_lo, int64_t K_hi,
                                       const std::string& costs) {
  std::vector<InstanceFile> out;
  for (int i = 0; i < count; ++i) {
    streamsub::GeneratorSpec g;
    g.family = families[size_t(i) % families.size()];
    g.n = n_lo + int((uint64_t(i) * 7 + seed) % uint64_t(n_hi - n_lo + 1));
    g.K = K_lo + int64_t((uint64_t(i) * 5 + seed) % uint64_t(K_hi - K_lo + 1));
    g.costs = costs;
    g.seed = seed * 1000003ull + uint64_t(i);
    out.push_back(streamsub::generate_instance(g));
  }
  return out;
}

// Wraps an oracle and tallies every evaluation it forwards. Calls routed
// through this wrapper count on the wrapper's own counter, so a replay on
// an instance built with it can be compared against the tally.
class TallyOracle : public streamsub::ValueOracle {
 public:
  explicit TallyOracle(std::shared_ptr<const streamsub::ValueOracle> inner)
      : inner_(std::move(inner)) {}
  int ground_size() const override { return inner_->ground_size(); }
  bool integral() const override { return inner_->integral(); }
  double eval(const IndexSet& s) const override {
    tally_.fetch_add(1);
    return inner_->eval(s);
  }
  double eval_marginal(Index e, const IndexSet& s) const override {
    tally_.fetch_add(1);
    return inner_->eval_marginal(e, s);
  }
  uint64_t tally() const { return tally_.load(); }

 private:
  std::shared_ptr<const streamsub::ValueOracle> inner_;
  mutable std::atomic<uint64_t> tally_{0};
};

}  // namespace reftest

#endif  // STREAMSUB_TESTS_REFERENCE_HPP_
