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

#ifndef STREAMSUB_CORE_HPP_
#define STREAMSUB_CORE_HPP_

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace streamsub {

// Items are addressed by their position in the stream.
using Index = int;
using IndexSet = std::vector<Index>;

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised when a checked invariant fails at run time.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Item {
  std::string id;
  int64_t cost = 1;

  bool operator==(const Item&) const = default;
};

// Monotone submodular set function over item indices. value() and
// marginal() each count as exactly one oracle call. eval() and
// eval_marginal() are the uncounted evaluation hooks implemented by
// concrete oracles; algorithms never call them directly.
class ValueOracle {
 public:
  ValueOracle();
  virtual ~ValueOracle() = default;
  ValueOracle(const ValueOracle&) = delete;
  ValueOracle& operator=(const ValueOracle&) = delete;

  double value(const IndexSet& s) const {
    counter_->fetch_add(1, std::memory_order_relaxed);
    return eval(s);
  }
  double marginal(Index e, const IndexSet& s) const {
    counter_->fetch_add(1, std::memory_order_relaxed);
    return eval_marginal(e, s);
  }
  uint64_t calls() const { return counter_->load(std::memory_order_relaxed); }

  virtual int ground_size() const = 0;
  // True when every value is an integer (exact comparisons are safe).
  virtual bool integral() const { return false; }

  virtual double eval(const IndexSet& s) const = 0;
  virtual double eval_marginal(Index e, const IndexSet& s) const;

 protected:
  // Wrappers such as ResidualOracle share the wrapped oracle's counter.
  void share_counter(const ValueOracle& other) { counter_ = other.counter_; }

 private:
  std::shared_ptr<std::atomic<uint64_t>> counter_;
};

class CoverageOracle : public ValueOracle {
 public:
  // covers[e] lists universe elements in [0, universe).
  CoverageOracle(const std::vector<std::vector<int>>& covers, int universe);

  int ground_size() const override { return n_; }
  bool integral() const override { return true; }
  double eval(const IndexSet& s) const override;
  double eval_marginal(Index e, const IndexSet& s) const override;

 protected:
  const uint64_t* row(Index e) const { return bits_.data() + size_t(e) * words_; }
  void cover_of(const IndexSet& s, std::vector<uint64_t>& acc) const;

  int n_;
  int universe_;
  int words_;
  std::vector<uint64_t> bits_;
};

class WeightedCoverageOracle : public CoverageOracle {
 public:
  WeightedCoverageOracle(const std::vector<std::vector<int>>& covers,
                         const std::vector<double>& weights);

  bool integral() const override { return integral_; }
  double eval(const IndexSet& s) const override;
  double eval_marginal(Index e, const IndexSet& s) const override;

 private:
  double weigh(const std::vector<uint64_t>& bits) const;
  std::vector<double> weights_;
  bool integral_;
};

// value(S) = sum over points u of max_{e in S} sim[u][e].
class FacilityLocationOracle : public ValueOracle {
 public:
  // sim has one row per point and one column per item.
  explicit FacilityLocationOracle(std::vector<std::vector<double>> sim);

  int ground_size() const override { return n_; }
  double eval(const IndexSet& s) const override;
  double eval_marginal(Index e, const IndexSet& s) const override;

 private:
  int n_;
  std::vector<std::vector<double>> sim_;
};

// g(S) = f(S + Y) - f(Y). Building it costs one call for f(Y); each later
// call costs one call on the shared counter.
class ResidualOracle : public ValueOracle {
 public:
  ResidualOracle(std::shared_ptr<const ValueOracle> base, IndexSet y);

  int ground_size() const override { return base_->ground_size(); }
  bool integral() const override { return base_->integral(); }
  double eval(const IndexSet& s) const override;
  double eval_marginal(Index e, const IndexSet& s) const override;

  const IndexSet& base_set() const { return y_; }
  double base_value() const { return fy_; }

 private:
  IndexSet joined(const IndexSet& s) const;
  std::shared_ptr<const ValueOracle> base_;
  IndexSet y_;
  double fy_;
};

class Instance {
 public:
  Instance(std::vector<Item> items, int64_t K,
           std::shared_ptr<const ValueOracle> oracle);

  const std::vector<Item>& items() const { return items_; }
  int size() const { return int(items_.size()); }
  int64_t K() const { return K_; }
  const ValueOracle& oracle() const { return *oracle_; }
  const std::shared_ptr<const ValueOracle>& oracle_ptr() const {
    return oracle_;
  }
  int64_t cost(Index e) const { return items_[size_t(e)].cost; }
  int64_t cost(const IndexSet& s) const;
  const std::string& id(Index e) const { return items_[size_t(e)].id; }
  bool unit_costs() const;

  // Throws std::invalid_argument for unknown ids.
  Index index_of(const std::string& id) const;
  IndexSet indices_of(const std::vector<std::string>& ids) const;
  // Ids sorted lexicographically.
  std::vector<std::string> ids_of(const IndexSet& s) const;

  // Same items and order with a different oracle or budget.
  Instance with_oracle(std::shared_ptr<const ValueOracle> oracle) const;
  Instance with_budget(int64_t K) const;

 private:
  std::vector<Item> items_;
  int64_t K_;
  std::shared_ptr<const ValueOracle> oracle_;
  std::unordered_map<std::string, Index> index_;
};

struct ResourceReport {
  int64_t passes = 0;
  uint64_t oracle_calls = 0;
  int64_t peak_stored = 0;
  double wall_time_ms = 0.0;
};

// Branches that run side by side over the same passes.
ResourceReport parallel(const ResourceReport& a, const ResourceReport& b);
// Phases that run one after another.
ResourceReport sequential(const ResourceReport& a, const ResourceReport& b);

struct Solution {
  IndexSet chosen;
  double value = 0.0;
  int64_t cost = 0;
  ResourceReport report;
  std::string branch;
};

// Strict order used whenever several candidates compete: larger value, then
// smaller cost, then lexicographically smaller sorted id list.
bool better(const Instance& inst, const Solution& a, const Solution& b);

double oracle_value(const Instance& inst, const std::vector<std::string>& ids);

struct BruteForceResult {
  IndexSet chosen;
  double value = 0.0;
  // Costs of the chosen items, nonincreasing.
  std::vector<int64_t> costs;
};

inline constexpr int kBruteForceLimit = 24;

// Exhaustive optimum over sets with c(S) <= K.
BruteForceResult brute_force_opt(const Instance& inst);

struct SubmodularWitness {
  IndexSet S;
  IndexSet T;
  Index e = -1;
  // "submodular" or "monotone".
  std::string kind;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct SubmodularCheck {
  bool pass = true;
  int trials = 0;
  std::optional<SubmodularWitness> witness;
};

SubmodularCheck check_submodular(const ValueOracle& oracle,
                                 const IndexSet& ground, int trials,
                                 uint64_t seed, double tol = 1e-9);

}  // namespace streamsub

#endif  // STREAMSUB_CORE_HPP_
