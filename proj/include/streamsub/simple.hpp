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

// Types shared by the threshold-round algorithms.

#ifndef STREAMSUB_SIMPLE_HPP_
#define STREAMSUB_SIMPLE_HPP_

#include <iosfwd>
#include <optional>
#include <vector>

#include "streamsub/core.hpp"

namespace streamsub {

// One threshold round: S0 at the start, T' added during the pass.
struct RoundLog {
  IndexSet start;
  IndexSet added;
  double alpha = 0.0;
  double value_start = 0.0;
  double value_end = 0.0;
  int64_t cost_start = 0;
  int64_t cost_end = 0;
};

struct SimpleResult {
  Solution solution;
  std::vector<RoundLog> rounds;
  // Set when a finisher scan ended the run.
  bool finisher_hit = false;
};

struct AlgoOptions {
  // Per-item round trace, one line per considered item.
  std::ostream* trace = nullptr;
  // Injected value guess; replaces the estimate grid when set.
  std::optional<double> v;
};

}  // namespace streamsub

#endif  // STREAMSUB_SIMPLE_HPP_
