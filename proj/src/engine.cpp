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

#include "engine.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace streamsub::detail {

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

Problem Problem::root(const Instance& inst) {
  Problem p;
  p.inst = &inst;
  p.g = inst.oracle_ptr();
  p.cap = inst.K();
  p.in_base.assign(size_t(inst.size()), 0);
  return p;
}

Problem Problem::extend(const IndexSet& add) const {
  Problem p;
  p.inst = inst;
  p.base = base;
  p.in_base = in_base;
  for (Index e : add) {
    if (p.in_base[size_t(e)]) throw UsageError("extend: item already in base");
    p.in_base[size_t(e)] = 1;
    p.base.push_back(e);
  }
  std::sort(p.base.begin(), p.base.end());
  auto residual = std::make_shared<ResidualOracle>(inst->oracle_ptr(), p.base);
  p.base_value = residual->base_value();
  p.g = std::move(residual);
  p.cap = inst->K() - inst->cost(p.base);
  return p;
}

bool better_cand(const Instance& inst, const Cand& a, const Cand& b) {
  if (a.value != b.value) return a.value > b.value;
  if (a.cost != b.cost) return a.cost < b.cost;
  return inst.ids_of(a.set) < inst.ids_of(b.set);
}

void offer(const Instance& inst, Cand& best, const Cand& c) {
  if (better_cand(inst, c, best)) best = c;
}

Cand make_cand(const Instance& inst, IndexSet set, double value,
               std::string branch) {
  std::sort(set.begin(), set.end());
  Cand c;
  c.cost = inst.cost(set);
  c.set = std::move(set);
  c.value = value;
  c.branch = std::move(branch);
  return c;
}

Cand lift(const Problem& parent, const Problem& child, const Cand& c) {
  IndexSet set = c.set;
  for (Index e : child.base) {
    if (!parent.skip(e)) set.push_back(e);
  }
  return make_cand(*parent.inst, std::move(set),
                   child.base_value - parent.base_value + c.value, c.branch);
}

// ---------------------------------------------------------------------------

SimpleMachine::SimpleMachine(const Problem& pb, const SimpleSpec& spec,
                             const Context& ctx, StreamSession& session)
    : pb_(pb), spec_(spec), ctx_(ctx), session_(session) {
  in_S_.assign(size_t(pb.inst->size()), 0);
  if (pb.cap <= 0) done_ = true;
}

void SimpleMachine::start_round() {
  if (done_) return;
  ++round_;
  S0_size_ = S_.size();
  fS0_ = fS_;
  cS0_ = cS_;
  alpha_ = ((1.0 - ctx_.eps) * spec_.v - fS0_) / spec_.W;
}

void SimpleMachine::offer(Index e) {
  if (done_ || pb_.skip(e) || in_S_[size_t(e)]) return;
  const Instance& inst = *pb_.inst;
  int64_t ce = inst.cost(e);
  double m = 0.0;
  bool fits = cS_ + ce <= pb_.cap;
  bool take = false;
  double t = alpha_ * double(ce);
  if (fits) {
    m = pb_.g->marginal(e, S_);
    take = m >= t - 1e-12 * std::max(1.0, std::abs(t));
  }
  if (ctx_.trace) {
    *ctx_.trace << "pass=" << session_.passes() << " round=" << round_
                << " item=" << inst.id(e) << " alpha=" << format_real(alpha_)
                << " marginal=" << (fits ? format_real(m) : std::string("nan"))
                << " taken=" << (take ? 1 : 0) << '\n';
  }
  if (!take) return;
  S_.push_back(e);
  in_S_[size_t(e)] = 1;
  cS_ += ce;
  fS_ += m;
  session_.retain(e);
}

void SimpleMachine::end_round() {
  if (done_) return;
  IndexSet added(S_.begin() + long(S0_size_), S_.end());
  if (added.empty()) {
    fS_ = fS0_;
  } else {
    fS_ = pb_.g->value(S_);
  }
  double bound = alpha_ * double(cS_ - cS0_);
  double tol = 1e-9 * std::max({1.0, std::abs(bound), std::abs(fS_)});
  if (fS_ - fS0_ < bound - tol) {
    throw InvariantError("threshold round gained less than alpha * c(T')");
  }
  RoundLog r;
  r.start.assign(S_.begin(), S_.begin() + long(S0_size_));
  r.added = added;
  r.alpha = alpha_;
  r.value_start = fS0_;
  r.value_end = fS_;
  r.cost_start = cS0_;
  r.cost_end = cS_;
  log_.push_back(std::move(r));

  if (added.empty()) done_ = true;
  if (spec_.until_full && cS_ >= pb_.cap) done_ = true;
  if (spec_.gain_stop && fS_ - fS0_ < ctx_.eps * spec_.v) done_ = true;
  if (spec_.stop_above >= 0.0 && double(cS_) > spec_.stop_above) done_ = true;
  if (spec_.round_cap > 0 && round_ >= spec_.round_cap) done_ = true;
}

void SimpleMachine::finisher_offer(Index e) {
  if (done_ || finisher_item_ >= 0 || pb_.skip(e) || in_S_[size_t(e)]) return;
  int64_t ce = pb_.inst->cost(e);
  if (cS_ + ce > pb_.cap) return;
  double m = pb_.g->marginal(e, S_);
  double t = spec_.finisher;
  if (fS_ + m >= t - 1e-12 * std::max(1.0, std::abs(t))) {
    finisher_item_ = e;
    finisher_gain_ = m;
  }
}

void SimpleMachine::apply_finisher() {
  if (finisher_item_ < 0 || finisher_hit_) return;
  Index e = finisher_item_;
  S_.push_back(e);
  in_S_[size_t(e)] = 1;
  cS_ += pb_.inst->cost(e);
  fS_ += finisher_gain_;
  session_.retain(e);
  finisher_hit_ = true;
  done_ = true;
}

SimpleResult SimpleMachine::take_result() {
  SimpleResult r;
  r.solution.chosen = S_;
  std::sort(r.solution.chosen.begin(), r.solution.chosen.end());
  r.solution.value = fS_;
  r.solution.cost = cS_;
  r.rounds = std::move(log_);
  r.finisher_hit = finisher_hit_;
  return r;
}

SimpleResult run_simple(const Problem& pb, const SimpleSpec& spec,
                        const Context& ctx) {
  StreamSession session(*pb.inst);
  session.retain(pb.base);
  SimpleMachine m(pb, spec, ctx, session);
  bool fin = spec.finisher >= 0.0;
  while (!m.done()) {
    if (fin) {
      {
        auto pass = session.open_pass();
        for (Index e : pass) m.finisher_offer(e);
      }
      if (m.finisher_item() >= 0) break;
    }
    m.start_round();
    {
      auto pass = session.open_pass();
      for (Index e : pass) m.offer(e);
    }
    m.end_round();
  }
  if (fin && m.finisher_item() >= 0) m.apply_finisher();
  SimpleResult r = m.take_result();
  r.solution.report = session.report();
  return r;
}

Outcome simple_outcome(const Problem& pb, double v, double W, Context& ctx,
                       const std::string& branch) {
  Outcome out;
  if (!(v > 0.0) || !(W > 0.0) || pb.cap <= 0) return out;
  int cap = ctx.driver_round_cap();
  Context::SimpleKey key{pb.base, pb.cap, v, W, cap, 0};
  auto it = ctx.simple_memo.find(key);
  if (it != ctx.simple_memo.end()) {
    out = it->second;
    out.best.branch = branch;
    return out;
  }
  SimpleSpec spec;
  spec.v = v;
  spec.W = W;
  spec.round_cap = cap;
  SimpleResult r = run_simple(pb, spec, ctx);
  out.best = make_cand(*pb.inst, r.solution.chosen, r.solution.value, branch);
  out.rep = r.solution.report;
  ctx.simple_memo.emplace(key, out);
  return out;
}

// ---------------------------------------------------------------------------

EstimateOut estimate(const Problem& pb, const Context& ctx) {
  struct Sieve {
    IndexSet S;
    double value = 0.0;
    int64_t cost = 0;
  };
  const Instance& inst = *pb.inst;
  const double lr = std::log1p(ctx.eps);
  StreamSession session(inst);
  session.retain(pb.base);
  std::map<int, Sieve> sieves;
  double m = 0.0;
  Index best_single = -1;
  int created = 0;
  int max_live = 0;
  int64_t K = pb.cap;
  if (K > 0) {
    auto pass = session.open_pass();
    for (Index e : pass) {
      if (pb.skip(e) || inst.cost(e) > K) continue;
      double fe = pb.g->marginal(e, {});
      if (fe > m) {
        m = fe;
        if (best_single >= 0) session.release(best_single);
        best_single = e;
        session.retain(e);
      }
      if (!(m > 0.0)) continue;
      int lo = int(std::ceil(std::log(m) / lr - 1e-9));
      int hi = int(std::floor(std::log(2.0 * double(K) * m) / lr + 1e-9));
      while (!sieves.empty() && sieves.begin()->first < lo) {
        session.release(sieves.begin()->second.S);
        sieves.erase(sieves.begin());
      }
      for (int i = lo; i <= hi; ++i) {
        if (sieves.emplace(i, Sieve{}).second) ++created;
      }
      max_live = std::max(max_live, int(sieves.size()));
      for (auto& [i, sv] : sieves) {
        int64_t ce = inst.cost(e);
        if (sv.cost + ce > K) continue;
        double vhat = std::exp(lr * i);
        double t = vhat / (2.0 * double(K)) * double(ce);
        double mg = sv.S.empty() ? fe : pb.g->marginal(e, sv.S);
        if (mg >= t - 1e-12 * std::max(1.0, t)) {
          sv.S.push_back(e);
          sv.value += mg;
          sv.cost += ce;
          session.retain(e);
        }
      }
    }
  }
  EstimateOut out;
  out.sieve_guesses = created;
  out.max_live = max_live;
  const Sieve* top = nullptr;
  for (const auto& [i, sv] : sieves) {
    if (!top || sv.value > top->value) top = &sv;
  }
  if (top && !top->S.empty()) {
    out.X = top->S;
    out.fx = top->S.size() == 1 ? top->value : pb.g->value(top->S);
  }
  if (best_single >= 0 && m > out.fx) {
    out.X = {best_single};
    out.fx = m;
  }
  std::sort(out.X.begin(), out.X.end());
  if (out.fx > 0.0) {
    int L = int(std::ceil(std::log(3.0) / lr - 1e-9));
    for (int i = 0; i <= L; ++i) out.grid.push_back(out.fx * std::exp(lr * i));
  }
  out.rep = session.report();
  return out;
}

}  // namespace streamsub::detail
