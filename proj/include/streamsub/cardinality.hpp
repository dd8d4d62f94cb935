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

#ifndef STREAMSUB_CARDINALITY_HPP_
#define STREAMSUB_CARDINALITY_HPP_

#include <vector>

#include "streamsub/core.hpp"
#include "streamsub/simple.hpp"

namespace streamsub {

enum class RoundMode {
  // Rounds repeat until |S| = K, or until a round adds nothing.
  kUntilFull,
  // At most ceil(1/eps)+1 rounds, stopping early on a round gain < eps*v.
  kBounded,
};

// Threshold rounds with alpha = ((1-eps)v - f(S0)) / W on a unit-cost
// instance. Throws std::invalid_argument on bad eps, v <= 0, W <= 0 or
// non-unit costs.
SimpleResult simple_cardinality(const Instance& inst, double v, double W,
                                double eps,
                                RoundMode mode = RoundMode::kUntilFull,
                                const AlgoOptions& opts = {});

struct Probe {
  int u = 0;
  double v = 0.0;
  double value = 0.0;
  bool full = false;
  int64_t passes = 0;
};

struct BinarySearchResult {
  Solution solution;
  double m = 0.0;
  int p = 0;
  std::vector<Probe> probes;
};

// Bisects the exponent u of v' = m(1+eps)^u over [1, p]. The best probe's
// set is kept while bisecting, so no final rerun is needed.
BinarySearchResult cardinality_binary_search(const Instance& inst, double eps,
                                             const AlgoOptions& opts = {});

struct ParallelGuessResult {
  Solution solution;
  std::vector<double> grid;
  // Most sub-instances alive in one pass (estimate sieves or Simple runs).
  int width = 0;
};

// One estimate pass, then bounded Simple for every grid value in lockstep.
ParallelGuessResult cardinality_parallel_guess(const Instance& inst,
                                               double eps,
                                               const AlgoOptions& opts = {});

}  // namespace streamsub

#endif  // STREAMSUB_CARDINALITY_HPP_
