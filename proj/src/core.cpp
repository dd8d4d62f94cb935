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

#include "streamsub/core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

namespace streamsub {

ValueOracle::ValueOracle()
    : counter_(std::make_shared<std::atomic<uint64_t>>(0)) {}

double ValueOracle::eval_marginal(Index e, const IndexSet& s) const {
  IndexSet t = s;
  t.push_back(e);
  return eval(t) - eval(s);
}

// ---------------------------------------------------------------------------
// Coverage.

CoverageOracle::CoverageOracle(const std::vector<std::vector<int>>& covers,
                               int universe)
    : n_(int(covers.size())),
      universe_(universe),
      words_(std::max(1, (universe + 63) / 64)) {
  if (universe < 0) throw std::invalid_argument("negative universe size");
  bits_.assign(size_t(n_) * words_, 0);
  for (int e = 0; e < n_; ++e) {
    for (int u : covers[size_t(e)]) {
      if (u < 0 || u >= universe) {
        throw std::invalid_argument("cover element outside universe");
      }
      bits_[size_t(e) * words_ + u / 64] |= uint64_t(1) << (u % 64);
    }
  }
}

void CoverageOracle::cover_of(const IndexSet& s,
                              std::vector<uint64_t>& acc) const {
  acc.assign(size_t(words_), 0);
  for (Index e : s) {
    const uint64_t* r = row(e);
    for (int w = 0; w < words_; ++w) acc[size_t(w)] |= r[w];
  }
}

double CoverageOracle::eval(const IndexSet& s) const {
  thread_local std::vector<uint64_t> acc;
  cover_of(s, acc);
  int64_t total = 0;
  for (uint64_t w : acc) total += std::popcount(w);
  return double(total);
}

double CoverageOracle::eval_marginal(Index e, const IndexSet& s) const {
  thread_local std::vector<uint64_t> acc;
  cover_of(s, acc);
  const uint64_t* r = row(e);
  int64_t fresh = 0;
  for (int w = 0; w < words_; ++w) fresh += std::popcount(r[w] & ~acc[size_t(w)]);
  return double(fresh);
}

WeightedCoverageOracle::WeightedCoverageOracle(
    const std::vector<std::vector<int>>& covers,
    const std::vector<double>& weights)
    : CoverageOracle(covers, int(weights.size())), weights_(weights) {
  integral_ = true;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("universe weights must be nonnegative");
    }
    if (w != std::floor(w)) integral_ = false;
  }
}

double WeightedCoverageOracle::weigh(const std::vector<uint64_t>& bits) const {
  double total = 0.0;
  for (int w = 0; w < words_; ++w) {
    uint64_t word = bits[size_t(w)];
    while (word) {
      int b = std::countr_zero(word);
      total += weights_[size_t(w) * 64 + b];
      word &= word - 1;
    }
  }
  return total;
}

double WeightedCoverageOracle::eval(const IndexSet& s) const {
  thread_local std::vector<uint64_t> acc;
  cover_of(s, acc);
  return weigh(acc);
}

double WeightedCoverageOracle::eval_marginal(Index e,
                                             const IndexSet& s) const {
  thread_local std::vector<uint64_t> acc;
  cover_of(s, acc);
  const uint64_t* r = row(e);
  for (int w = 0; w < words_; ++w) acc[size_t(w)] = r[w] & ~acc[size_t(w)];
  return weigh(acc);
}

// ---------------------------------------------------------------------------
// Facility location.

FacilityLocationOracle::FacilityLocationOracle(
    std::vector<std::vector<double>> sim)
    : n_(sim.empty() ? 0 : int(sim.front().size())), sim_(std::move(sim)) {
  for (const auto& row : sim_) {
    if (int(row.size()) != n_) {
      throw std::invalid_argument("ragged similarity matrix");
    }
    for (double x : row) {
      if (!(x >= 0.0) || !std::isfinite(x)) {
        throw std::invalid_argument("similarities must be nonnegative");
      }
    }
  }
}

double FacilityLocationOracle::eval(const IndexSet& s) const {
  if (s.empty()) return 0.0;
  double total = 0.0;
  for (const auto& row : sim_) {
    double best = 0.0;
    for (Index e : s) best = std::max(best, row[size_t(e)]);
    total += best;
  }
  return total;
}

double FacilityLocationOracle::eval_marginal(Index e, const IndexSet& s) const {
  double total = 0.0;
  for (const auto& row : sim_) {
    double best = 0.0;
    for (Index x : s) best = std::max(best, row[size_t(x)]);
    if (row[size_t(e)] > best) total += row[size_t(e)] - best;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Residual.

ResidualOracle::ResidualOracle(std::shared_ptr<const ValueOracle> base,
                               IndexSet y)
    : base_(std::move(base)), y_(std::move(y)) {
  share_counter(*base_);
  fy_ = base_->value(y_);
}

IndexSet ResidualOracle::joined(const IndexSet& s) const {
  IndexSet t;
  t.reserve(s.size() + y_.size());
  t.insert(t.end(), y_.begin(), y_.end());
  for (Index e : s) {
    if (std::find(y_.begin(), y_.end(), e) == y_.end()) t.push_back(e);
  }
  return t;
}

double ResidualOracle::eval(const IndexSet& s) const {
  return base_->eval(joined(s)) - fy_;
}

double ResidualOracle::eval_marginal(Index e, const IndexSet& s) const {
  if (std::find(y_.begin(), y_.end(), e) != y_.end()) return 0.0;
  return base_->eval_marginal(e, joined(s));
}

// ---------------------------------------------------------------------------
// Instance.

Instance::Instance(std::vector<Item> items, int64_t K,
                   std::shared_ptr<const ValueOracle> oracle)
    : items_(std::move(items)), K_(K), oracle_(std::move(oracle)) {
  if (K_ < 0) throw std::invalid_argument("budget must be nonnegative");
  if (!oracle_) throw std::invalid_argument("instance needs an oracle");
  if (oracle_->ground_size() != int(items_.size())) {
    throw std::invalid_argument("oracle and item list disagree in size");
  }
  for (size_t i = 0; i < items_.size(); ++i) {
    const Item& it = items_[i];
    if (it.cost < 1) throw std::invalid_argument("item cost must be >= 1: " + it.id);
    if (K_ > 0 && it.cost > K_) {
      throw std::invalid_argument("item cost exceeds budget: " + it.id);
    }
    if (!index_.emplace(it.id, Index(i)).second) {
      throw std::invalid_argument("duplicate item id: " + it.id);
    }
  }
}

int64_t Instance::cost(const IndexSet& s) const {
  int64_t total = 0;
  for (Index e : s) total += cost(e);
  return total;
}

bool Instance::unit_costs() const {
  return std::all_of(items_.begin(), items_.end(),
                     [](const Item& it) { return it.cost == 1; });
}

Index Instance::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw std::invalid_argument("unknown item id: " + id);
  return it->second;
}

IndexSet Instance::indices_of(const std::vector<std::string>& ids) const {
  IndexSet out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(index_of(id));
  return out;
}

std::vector<std::string> Instance::ids_of(const IndexSet& s) const {
  std::vector<std::string> out;
  out.reserve(s.size());
  for (Index e : s) out.push_back(id(e));
  std::sort(out.begin(), out.end());
  return out;
}

Instance Instance::with_oracle(std::shared_ptr<const ValueOracle> oracle) const {
  return Instance(items_, K_, std::move(oracle));
}

Instance Instance::with_budget(int64_t K) const {
  return Instance(items_, K, oracle_);
}

// ---------------------------------------------------------------------------
// Reports and solutions.

ResourceReport parallel(const ResourceReport& a, const ResourceReport& b) {
  ResourceReport r;
  r.passes = std::max(a.passes, b.passes);
  r.oracle_calls = a.oracle_calls + b.oracle_calls;
  r.peak_stored = a.peak_stored + b.peak_stored;
  r.wall_time_ms = a.wall_time_ms + b.wall_time_ms;
  return r;
}

ResourceReport sequential(const ResourceReport& a, const ResourceReport& b) {
  ResourceReport r;
  r.passes = a.passes + b.passes;
  r.oracle_calls = a.oracle_calls + b.oracle_calls;
  r.peak_stored = std::max(a.peak_stored, b.peak_stored);
  r.wall_time_ms = a.wall_time_ms + b.wall_time_ms;
  return r;
}

bool better(const Instance& inst, const Solution& a, const Solution& b) {
  if (a.value != b.value) return a.value > b.value;
  if (a.cost != b.cost) return a.cost < b.cost;
  return inst.ids_of(a.chosen) < inst.ids_of(b.chosen);
}

double oracle_value(const Instance& inst, const std::vector<std::string>& ids) {
  return inst.oracle().value(inst.indices_of(ids));
}

// ---------------------------------------------------------------------------
// Brute force.

namespace {

struct BruteSearch {
  const Instance& inst;
  IndexSet cur;
  int64_t cur_cost = 0;
  bool have = false;
  Solution best;

  void consider() {
    Solution s;
    s.chosen = cur;
    s.cost = cur_cost;
    s.value = inst.oracle().value(cur);
    if (!have || better(inst, s, best)) {
      best = std::move(s);
      have = true;
    }
  }

  void dfs(int i) {
    if (i == inst.size()) {
      consider();
      return;
    }
    dfs(i + 1);
    if (cur_cost + inst.cost(i) <= inst.K()) {
      cur.push_back(i);
      cur_cost += inst.cost(i);
      dfs(i + 1);
      cur.pop_back();
      cur_cost -= inst.cost(i);
    }
  }
};

}  // namespace

BruteForceResult brute_force_opt(const Instance& inst) {
  if (inst.size() > kBruteForceLimit) {
    throw CapacityError("brute force refused: " + std::to_string(inst.size()) +
                        " items exceeds " + std::to_string(kBruteForceLimit));
  }
  BruteSearch search{inst, {}, 0, false, {}};
  search.dfs(0);
  BruteForceResult r;
  r.chosen = search.best.chosen;
  std::sort(r.chosen.begin(), r.chosen.end());
  r.value = search.best.value;
  for (Index e : r.chosen) r.costs.push_back(inst.cost(e));
  std::sort(r.costs.rbegin(), r.costs.rend());
  return r;
}

// ---------------------------------------------------------------------------
// Submodularity check.

SubmodularCheck check_submodular(const ValueOracle& oracle,
                                 const IndexSet& ground, int trials,
                                 uint64_t seed, double tol) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  SubmodularCheck out;
  double empty = oracle.value({});
  if (std::abs(empty) > tol) {
    out.pass = false;
    out.witness = SubmodularWitness{{}, {}, -1, "normalization", empty, 0.0};
    return out;
  }
  if (ground.empty()) {
    out.trials = trials;
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    out.trials = t + 1;
    double p = unit(rng);
    IndexSet S, T, rest;
    for (Index x : ground) {
      if (unit(rng) < p) {
        T.push_back(x);
        if (unit(rng) < 0.5) S.push_back(x);
      } else {
        rest.push_back(x);
      }
    }
    if (rest.empty()) {
      // T is the whole ground set; drop one element to free an e.
      size_t k = size_t(rng() % T.size());
      Index x = T[k];
      T.erase(T.begin() + long(k));
      S.erase(std::remove(S.begin(), S.end(), x), S.end());
      rest.push_back(x);
    }
    Index e = rest[size_t(rng() % rest.size())];
    IndexSet Se = S, Te = T;
    Se.push_back(e);
    Te.push_back(e);
    double fS = oracle.value(S), fT = oracle.value(T);
    double fSe = oracle.value(Se), fTe = oracle.value(Te);
    if (fS > fT + tol || fT > fTe + tol) {
      out.pass = false;
      out.witness = SubmodularWitness{S, T, e, "monotone", fS, fT};
      return out;
    }
    if (fSe - fS < fTe - fT - tol) {
      out.pass = false;
      out.witness = SubmodularWitness{S, T, e, "submodular", fSe - fS, fTe - fT};
      return out;
    }
  }
  return out;
}

}  // namespace streamsub
