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

#include "streamsub/cardinality.hpp"

#include <chrono>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "engine.hpp"

namespace streamsub {

using detail::Context;
using detail::Problem;
using detail::SimpleMachine;
using detail::SimpleSpec;

namespace {

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("eps must lie in (0, 1)");
  }
}

SimpleSpec bounded_spec(double v, double W, const Context& ctx) {
  SimpleSpec spec;
  spec.v = v;
  spec.W = W;
  spec.until_full = true;
  spec.gain_stop = true;
  spec.round_cap = ctx.driver_round_cap();
  return spec;
}

// Replaces the summed call count and wall time with the measured totals.
void finish_report(ResourceReport& rep, const Instance& inst, uint64_t calls0,
                   std::chrono::steady_clock::time_point t0) {
  rep.oracle_calls = inst.oracle().calls() - calls0;
  rep.wall_time_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
}

}  // namespace

SimpleResult simple_cardinality(const Instance& inst, double v, double W,
                                double eps, RoundMode mode,
                                const AlgoOptions& opts) {
  check_eps(eps);
  if (!(v > 0.0)) throw std::invalid_argument("v must be positive");
  if (!(W > 0.0)) throw std::invalid_argument("W must be positive");
  if (!inst.unit_costs()) {
    throw std::invalid_argument("cardinality algorithms need unit costs");
  }
  if (inst.K() == 0) return SimpleResult{};
  Context ctx(eps, opts.trace);
  Problem pb = Problem::root(inst);
  SimpleSpec spec;
  if (mode == RoundMode::kBounded) {
    spec = bounded_spec(v, W, ctx);
  } else {
    spec.v = v;
    spec.W = W;
    spec.until_full = true;
    spec.gain_stop = false;
  }
  SimpleResult r = detail::run_simple(pb, spec, ctx);
  r.solution.branch = "simple";
  return r;
}

BinarySearchResult cardinality_binary_search(const Instance& inst, double eps,
                                             const AlgoOptions& opts) {
  check_eps(eps);
  if (!inst.unit_costs()) {
    throw std::invalid_argument("cardinality algorithms need unit costs");
  }
  BinarySearchResult out;
  if (inst.K() == 0) return out;
  auto t0 = std::chrono::steady_clock::now();
  uint64_t calls0 = inst.oracle().calls();
  Context ctx(eps, opts.trace);
  Problem pb = Problem::root(inst);

  ResourceReport rep;
  {
    StreamSession session(inst);
    Index arg = -1;
    {
      auto pass = session.open_pass();
      for (Index e : pass) {
        double fe = inst.oracle().marginal(e, {});
        if (fe > out.m) {
          out.m = fe;
          if (arg >= 0) session.release(arg);
          arg = e;
          session.retain(e);
        }
      }
    }
    rep = session.report();
  }
  if (!(out.m > 0.0)) {
    out.solution.report = rep;
    finish_report(out.solution.report, inst, calls0, t0);
    return out;
  }

  int p = 0;
  while (std::pow(1.0 + eps, p) < double(inst.K())) ++p;
  out.p = std::max(1, p);

  Solution best;
  std::vector<char> probed(size_t(out.p) + 1, 0);
  auto probe = [&](int u) {
    double v = out.m * std::pow(1.0 + eps, u);
    SimpleResult r = detail::run_simple(pb, bounded_spec(v, inst.K(), ctx), ctx);
    Probe pr;
    pr.u = u;
    pr.v = v;
    pr.value = r.solution.value;
    pr.full = r.solution.cost == inst.K();
    pr.passes = r.solution.report.passes;
    out.probes.push_back(pr);
    probed[size_t(u)] = 1;
    // The incumbent set stays stored while this probe runs.
    ResourceReport pr_rep = r.solution.report;
    pr_rep.peak_stored += int64_t(best.chosen.size());
    rep = sequential(rep, pr_rep);
    r.solution.branch = "probe u=" + std::to_string(u);
    if (better(inst, r.solution, best)) best = std::move(r.solution);
    return pr.full;
  };

  int s = 1, t = out.p;
  while (t - s > 1) {
    int u = (s + t) / 2;
    if (probe(u)) {
      s = u;
    } else {
      t = u;
    }
  }
  if (!probed[size_t(s)]) probe(s);

  out.solution = std::move(best);
  out.solution.report = rep;
  finish_report(out.solution.report, inst, calls0, t0);
  return out;
}

ParallelGuessResult cardinality_parallel_guess(const Instance& inst,
                                               double eps,
                                               const AlgoOptions& opts) {
  check_eps(eps);
  if (!inst.unit_costs()) {
    throw std::invalid_argument("cardinality algorithms need unit costs");
  }
  ParallelGuessResult out;
  if (inst.K() == 0) return out;
  auto t0 = std::chrono::steady_clock::now();
  uint64_t calls0 = inst.oracle().calls();
  Context ctx(eps, opts.trace);
  Problem pb = Problem::root(inst);

  ResourceReport rep;
  if (opts.v) {
    out.grid = {*opts.v};
  } else {
    detail::EstimateOut est = detail::estimate(pb, ctx);
    out.grid = est.grid;
    out.width = est.max_live;
    rep = est.rep;
  }
  out.width = std::max(out.width, int(out.grid.size()));

  StreamSession session(inst);
  std::vector<std::unique_ptr<SimpleMachine>> machines;
  for (double v : out.grid) {
    if (!(v > 0.0)) throw std::invalid_argument("v must be positive");
    machines.push_back(std::make_unique<SimpleMachine>(
        pb, bounded_spec(v, double(inst.K()), ctx), ctx, session));
  }
  auto any_live = [&] {
    for (const auto& m : machines) {
      if (!m->done()) return true;
    }
    return false;
  };
  while (any_live()) {
    for (auto& m : machines) m->start_round();
    {
      auto pass = session.open_pass();
      for (Index e : pass) {
        for (auto& m : machines) m->offer(e);
      }
    }
    for (auto& m : machines) m->end_round();
  }
  Solution best;
  for (size_t i = 0; i < machines.size(); ++i) {
    Solution s = machines[i]->take_result().solution;
    s.branch = "guess v=" + detail::format_real(out.grid[i]);
    if (better(inst, s, best)) best = std::move(s);
  }
  rep = sequential(rep, session.report());
  out.solution = std::move(best);
  out.solution.report = rep;
  finish_report(out.solution.report, inst, calls0, t0);
  return out;
}

}  // namespace streamsub
