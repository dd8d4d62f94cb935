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

#ifndef STREAMSUB_KNAPSACK_HPP_
#define STREAMSUB_KNAPSACK_HPP_

#include <vector>

#include "streamsub/core.hpp"
#include "streamsub/simple.hpp"

namespace streamsub {

// Size window [lo, hi] as fractions of the budget.
struct SizeGuess {
  double lo = 0.0;
  double hi = 0.0;
};

// Geometric windows of ratio 1+eps covering [lo, hi], each shrunk to the
// integer costs it contains (as fractions of cap). Windows holding no
// integer cost are dropped.
std::vector<SizeGuess> size_windows(double lo, double hi, double eps,
                                    int64_t cap);

// Piecewise guarantee of the nice-item routine: 2/3 for t >= 0.5,
// 5/6 - t/3 on [0.4, 0.5], 9/10 - t/2 below 0.4.
double gamma_fn(double t);

// Density-threshold rounds until a round gains less than eps*v.
SimpleResult simple_knapsack(const Instance& inst, double v, double W,
                             double eps, const AlgoOptions& opts = {});

// One pass; the item e with c(e) <= cap maximizing f(base + e), returned
// together with base. No feasible item gives base alone.
Solution best_singleton(const Instance& inst, int64_t cap,
                        const IndexSet& base = {});

// Simple at ((1-tau)v, W - c1_lo*K), or the best singleton when tau > 0.5.
Solution ignore_large(const Instance& inst, double v, double W, double c1_lo,
                      double tau, double eps, const AlgoOptions& opts = {});

struct EstimateResult {
  IndexSet X;
  double fx = 0.0;
  // Candidates f(X)(1+eps)^i spanning [f(X), 3 f(X)].
  std::vector<double> grid;
  ResourceReport report;
};
EstimateResult single_pass_estimate(const Instance& inst, double eps);

struct NiceItems {
  IndexSet Y;
  // Value levels of ratio 1+eps inside [tau*v/(1+eps), tau*v]; |Y| <= levels.
  int levels = 0;
  ResourceReport report;
};
NiceItems pick_nice_item(const Instance& inst, double v, SizeGuess size,
                         double tau, double eps);

enum class LargeMode {
  // T from pick_nice_item (large item of at least half the budget).
  kNice,
  // T = the most valuable item of the window.
  kArbitrary,
};

Solution large_first(const Instance& inst, double v, double W, double tau,
                     SizeGuess c1, SizeGuess c2, double eps, LargeMode mode);

struct HeavyPairResult {
  Solution solution;
  // |X_t| for t = 1..floor(K/2).
  std::vector<int> bucket_sizes;
};
HeavyPairResult heavy_pair(const Instance& inst, double v_prime, double eps);

Solution near_full_pair_case(const Instance& inst, double v, double eps);

// Threshold rounds with a finisher scan before each round; stops once
// c(S) > (1 - c1_hi)K, on a small round gain, or after ceil(1/eps)+1 rounds.
SimpleResult modified_simple(const Instance& inst, double v, double c1_hi,
                             double eps, const AlgoOptions& opts = {});

// Packs against a target of width W' = eta*K. Throws std::invalid_argument
// for eta > 2.5.
Solution large_w(const Instance& inst, double v_prime, double eta,
                 double eps);

// Drivers. With opts.v set the estimate pass is skipped and only that guess
// is tried.
Solution approx_039(const Instance& inst, double eps,
                    const AlgoOptions& opts = {});
Solution approx_046(const Instance& inst, double eps,
                    const AlgoOptions& opts = {});
Solution approx_05(const Instance& inst, double eps,
                   const AlgoOptions& opts = {});

}  // namespace streamsub

#endif  // STREAMSUB_KNAPSACK_HPP_
