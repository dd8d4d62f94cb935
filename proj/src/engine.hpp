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

// Internal machinery shared by the cardinality and knapsack drivers.

#ifndef STREAMSUB_SRC_ENGINE_HPP_
#define STREAMSUB_SRC_ENGINE_HPP_

#include <cmath>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "streamsub/core.hpp"
#include "streamsub/simple.hpp"
#include "streamsub/stream.hpp"

namespace streamsub::detail {

// Maximize g(S) = f(S + base) - f(base) subject to c(S) <= cap, streaming
// over the items of the instance that are not in base.
struct Problem {
  const Instance* inst = nullptr;
  std::shared_ptr<const ValueOracle> g;
  int64_t cap = 0;
  IndexSet base;
  std::vector<char> in_base;
  double base_value = 0.0;

  static Problem root(const Instance& inst);
  // Residual problem after also taking `add`; costs one oracle call.
  Problem extend(const IndexSet& add) const;
  bool skip(Index e) const { return in_base[size_t(e)] != 0; }
};

// A candidate answer for a problem: set (disjoint from the base) and its
// objective value under that problem's g.
struct Cand {
  IndexSet set;
  double value = 0.0;
  int64_t cost = 0;
  std::string branch;
  bool empty() const { return set.empty(); }
};

struct Outcome {
  Cand best;
  ResourceReport rep;
};

bool better_cand(const Instance& inst, const Cand& a, const Cand& b);
void offer(const Instance& inst, Cand& best, const Cand& c);

// Lifts a candidate of child (whose base extends parent's base) into parent.
Cand lift(const Problem& parent, const Problem& child, const Cand& c);

Cand make_cand(const Instance& inst, IndexSet set, double value,
               std::string branch);

struct Context {
  explicit Context(double eps_, std::ostream* trace_ = nullptr)
      : eps(eps_), trace(trace_) {}
  double eps;
  std::ostream* trace;
  // Safety cap on threshold rounds for sub-calls inside drivers; -1 = none.
  int driver_round_cap() const { return int(std::ceil(1.0 / eps - 1e-9)) + 1; }

  using SimpleKey = std::tuple<IndexSet, int64_t, double, double, int, int>;
  std::map<SimpleKey, Outcome> simple_memo;
  using AtKey = std::tuple<int, IndexSet, int64_t, double, double>;
  std::map<AtKey, Outcome> at_memo;
};

struct SimpleSpec {
  double v = 0.0;
  double W = 1.0;
  int round_cap = -1;
  bool until_full = false;
  bool gain_stop = true;
  // When >= 0, each round first scans for an item e with
  // g(S + e) >= finisher and returns S + e.
  double finisher = -1.0;
  // When >= 0, stop once c(S) > stop_above.
  double stop_above = -1.0;
};

// Threshold rounds on one problem. Several machines may share a session and
// be stepped in lockstep, one round per pass.
class SimpleMachine {
 public:
  SimpleMachine(const Problem& pb, const SimpleSpec& spec, const Context& ctx,
                StreamSession& session);

  bool done() const { return done_; }
  void start_round();
  void offer(Index e);
  void end_round();

  // Finisher scan hooks (one extra pass per round).
  void finisher_offer(Index e);
  bool finisher_hit() const { return finisher_hit_; }
  Index finisher_item() const { return finisher_item_; }
  // Appends the item found by the finisher scan and ends the run.
  void apply_finisher();

  SimpleResult take_result();
  const IndexSet& set() const { return S_; }
  double value() const { return fS_; }

 private:
  const Problem& pb_;
  SimpleSpec spec_;
  const Context& ctx_;
  StreamSession& session_;
  IndexSet S_;
  std::vector<char> in_S_;
  int64_t cS_ = 0;
  double fS_ = 0.0;
  double fS0_ = 0.0;
  int64_t cS0_ = 0;
  size_t S0_size_ = 0;
  double alpha_ = 0.0;
  int round_ = 0;
  bool done_ = false;
  bool finisher_hit_ = false;
  Index finisher_item_ = -1;
  double finisher_gain_ = 0.0;
  std::vector<RoundLog> log_;
};

// Runs the machine alone in a fresh session (retaining the base first).
SimpleResult run_simple(const Problem& pb, const SimpleSpec& spec,
                        const Context& ctx);

// Driver form: round cap applied, memoized on (base, cap, v, W).
Outcome simple_outcome(const Problem& pb, double v, double W, Context& ctx,
                       const std::string& branch);

struct EstimateOut {
  IndexSet X;
  double fx = 0.0;
  std::vector<double> grid;
  int sieve_guesses = 0;
  // Largest number of guesses alive at once during the pass.
  int max_live = 0;
  ResourceReport rep;
};
EstimateOut estimate(const Problem& pb, const Context& ctx);

std::string format_real(double x);

}  // namespace streamsub::detail

#endif  // STREAMSUB_SRC_ENGINE_HPP_
