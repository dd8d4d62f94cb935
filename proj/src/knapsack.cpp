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

#include "streamsub/knapsack.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "engine.hpp"

namespace streamsub {

using detail::Cand;
using detail::Context;
using detail::Outcome;
using detail::Problem;
using detail::SimpleSpec;
using detail::format_real;

namespace {

enum MemoKind {
  kSingleton = 1,
  kNearFull = 3,
  kAt046 = 4,
  kLargeW = 5,
};

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("eps must lie in (0, 1)");
  }
}

void par(const Instance& inst, Outcome& acc, const Outcome& o) {
  detail::offer(inst, acc.best, o.best);
  acc.rep = parallel(acc.rep, o.rep);
}

Outcome lifted(const Problem& parent, const Problem& child, Outcome o) {
  o.best = detail::lift(parent, child, o.best);
  return o;
}

Problem capped(const Problem& pb, int64_t cap) {
  Problem q = pb;
  q.cap = std::min(cap, pb.cap);
  return q;
}

template <class F>
Outcome memo(Context& ctx, int kind, const Problem& pb, double v, double W,
             F&& f) {
  Context::AtKey key{kind, pb.base, pb.cap, v, W};
  auto it = ctx.at_memo.find(key);
  if (it != ctx.at_memo.end()) return it->second;
  Outcome o = f();
  ctx.at_memo.emplace(std::move(key), o);
  return o;
}

Solution to_solution(const Cand& c, const ResourceReport& rep) {
  Solution s;
  s.chosen = c.set;
  std::sort(s.chosen.begin(), s.chosen.end());
  s.value = c.value;
  s.cost = c.cost;
  s.report = rep;
  s.branch = c.branch;
  return s;
}

std::vector<double> tau_grid(double lo, double hi, double eps) {
  std::vector<double> out;
  for (double t = lo; t < hi * (1.0 - 1e-12); t *= 1.0 + eps) {
    out.push_back(std::min(t * (1.0 + eps), hi));
  }
  if (out.empty()) out.push_back(hi);
  return out;
}

std::string wtag(const char* name, const SizeGuess& w) {
  return std::string(" ") + name + "=[" + format_real(w.lo) + "," +
         format_real(w.hi) + "]";
}

// ---------------------------------------------------------------------------
// Building blocks on a problem.

Outcome singleton_at(const Problem& pb, Context& ctx) {
  return memo(ctx, kSingleton, pb, 0.0, 0.0, [&] {
    Outcome out;
    if (pb.cap <= 0) return out;
    const Instance& inst = *pb.inst;
    StreamSession session(inst);
    session.retain(pb.base);
    Index best = -1;
    double bv = 0.0;
    {
      auto pass = session.open_pass();
      for (Index e : pass) {
        if (pb.skip(e) || inst.cost(e) > pb.cap) continue;
        double fe = pb.g->marginal(e, {});
        if (best < 0 || fe > bv) {
          if (best >= 0) session.release(best);
          best = e;
          bv = fe;
          session.retain(e);
        }
      }
    }
    if (best >= 0) out.best = detail::make_cand(inst, {best}, bv, "singleton");
    out.rep = session.report();
    return out;
  });
}

Outcome ignore_large_at(const Problem& pb, double v, double W, double c1_lo,
                        double tau, Context& ctx) {
  if (tau > 0.5) return singleton_at(pb, ctx);
  double W1 = W - c1_lo * double(pb.cap);
  if (!(W1 > 0.0)) return {};
  return detail::simple_outcome(
      pb, (1.0 - tau) * v, W1, ctx,
      "ignore_large tau=" + format_real(tau) + " c1>=" + format_real(c1_lo));
}

struct Pick {
  Index e = -1;
  double fe = 0.0;
  ResourceReport rep;
};

// One pass over items with cost in the window. Nice mode keeps the cheapest
// item with value in [tau v/(1+eps), tau v]; arbitrary mode keeps the most
// valuable one. Earlier arrivals win ties.
Pick pick_at(const Problem& pb, double v, const SizeGuess& w, double tau,
             bool nice, const Context& ctx) {
  Pick out;
  if (pb.cap <= 0) return out;
  const Instance& inst = *pb.inst;
  const double cap = double(pb.cap);
  const double lo_v = tau * v / (1.0 + ctx.eps);
  const double hi_v = tau * v;
  const double tol = 1e-9 * std::max(1.0, std::abs(v));
  StreamSession session(inst);
  session.retain(pb.base);
  {
    auto pass = session.open_pass();
    for (Index e : pass) {
      if (pb.skip(e)) continue;
      double ce = double(inst.cost(e));
      if (ce > cap || ce < w.lo * cap - 1e-9 || ce > w.hi * cap + 1e-9) {
        continue;
      }
      double fe = pb.g->marginal(e, {});
      bool keep;
      if (nice) {
        if (fe < lo_v - tol || fe > hi_v + tol) continue;
        keep = out.e < 0 || inst.cost(e) < inst.cost(out.e);
      } else {
        keep = out.e < 0 || fe > out.fe;
      }
      if (keep) {
        if (out.e >= 0) session.release(out.e);
        out.e = e;
        out.fe = fe;
        session.retain(e);
      }
    }
  }
  out.rep = session.report();
  return out;
}

// Large-item-first packing around a fixed item e of the problem: the best
// pair containing e, then Simple on g(.|e) at (p1 v, W1) and at (p2 v, w)
// for each w in W2s. p1 and p2 are computed from beta = g(S0)/v.
using PFn = std::function<std::pair<double, double>(double beta)>;

Outcome large_first_on(const Problem& pb, double v, Index e, double fe,
                       double W1, const std::vector<double>& W2s,
                       const PFn& ps, Context& ctx, const std::string& tag) {
  const Instance& inst = *pb.inst;
  Outcome out;
  StreamSession session(inst);
  session.retain(pb.base);
  session.retain(e);
  Index partner = -1;
  double pv = fe;
  {
    auto pass = session.open_pass();
    for (Index x : pass) {
      if (pb.skip(x) || x == e) continue;
      if (inst.cost(e) + inst.cost(x) > pb.cap) continue;
      double val = pb.g->value({e, x});
      if (val > pv) {
        if (partner >= 0) session.release(partner);
        partner = x;
        pv = val;
        session.retain(x);
      }
    }
  }
  ResourceReport head = session.report();
  IndexSet s0{e};
  if (partner >= 0) s0.push_back(partner);
  out.best = detail::make_cand(inst, s0, pv, "large_first pair" + tag);

  double beta = pv / v + 1e-12;
  auto [p1, p2] = ps(beta);
  Problem pe = pb.extend({e});
  Outcome tail;
  par(inst, tail,
      lifted(pb, pe,
             detail::simple_outcome(pe, p1 * v, W1, ctx,
                                    "large_first rest1" + tag)));
  for (double W2 : W2s) {
    par(inst, tail,
        lifted(pb, pe,
               detail::simple_outcome(pe, p2 * v, W2, ctx,
                                      "large_first rest2" + tag)));
  }
  detail::offer(inst, out.best, tail.best);
  out.rep = sequential(head, tail.rep);
  return out;
}

std::vector<SizeGuess> c2_windows(const SizeGuess& c1,
                                  const std::vector<SizeGuess>& all) {
  std::vector<SizeGuess> out;
  for (const SizeGuess& w : all) {
    if (w.lo <= c1.hi + 1e-12 && c1.lo + w.lo <= 1.0 + 1e-12) out.push_back(w);
  }
  return out;
}

// LargeFirst with the candidate item drawn from c1 and one Simple run per
// c2 window.
Outcome large_first_at(const Problem& pb, double v, double W, double tau,
                       const SizeGuess& c1, const std::vector<SizeGuess>& c2s,
                       bool nice, Context& ctx) {
  Outcome out;
  if (!(v > 0.0) || pb.cap <= 0) return out;
  Pick pk = pick_at(pb, v, c1, tau, nice, ctx);
  out.rep = pk.rep;
  if (pk.e < 0) return out;
  const double cap = double(pb.cap);
  double W1 = W - c1.lo * cap;
  std::vector<double> W2s;
  for (const SizeGuess& c2 : c2s) W2s.push_back(W1 - c2.lo * cap);
  double fe = pk.fe;
  PFn ps;
  if (nice) {
    double G = gamma_fn(tau);
    ps = [G, tau](double beta) { return std::make_pair(G - tau, G - beta); };
  } else {
    double t = fe / v;
    ps = [t](double beta) {
      return std::make_pair(1.0 - beta, 1.0 - 2.0 * beta + t);
    };
  }
  std::string tag = (nice ? " nice tau=" + format_real(tau) : " any") +
                    wtag("c1", c1);
  Outcome lf = large_first_on(pb, v, pk.e, fe, W1, W2s, ps, ctx, tag);
  out.best = lf.best;
  out.rep = sequential(pk.rep, lf.rep);
  return out;
}

// ---------------------------------------------------------------------------

struct HeavyOut {
  Outcome out;
  std::vector<int> bucket_sizes;
};

HeavyOut heavy_pair_at(const Problem& pb, double vp, const Context& ctx) {
  HeavyOut res;
  if (pb.cap <= 0 || !(vp > 0.0)) return res;
  const Instance& inst = *pb.inst;
  const int64_t K = pb.cap;
  const int T = int(K / 2);
  const double lr = std::log1p(ctx.eps);
  const int L = int(std::ceil(std::log(2.0) / lr - 1e-9));
  const double lo = vp / 3.0, hi = 2.0 * vp / 3.0;
  const double tol = 1e-12 * std::max(1.0, vp);
  // buckets[t][j]: costliest item of level j among E_t, first arrival on
  // ties; level L holds values above 2v'/3. Every member of E_t fits beside
  // a cost-t item, and preferring cost keeps a cost-t scan item from
  // shadowing its own partner.
  std::vector<std::vector<Index>> buckets(size_t(T) + 1,
                                          std::vector<Index>(size_t(L) + 1, -1));
  std::vector<double> fval(size_t(inst.size()), 0.0);
  StreamSession session(inst);
  session.retain(pb.base);
  Cand best;
  {
    auto pass = session.open_pass();
    for (Index e : pass) {
      if (pb.skip(e) || inst.cost(e) > K) continue;
      double fe = pb.g->marginal(e, {});
      fval[size_t(e)] = fe;
      if (fe < lo - tol) continue;
      int j;
      if (fe > hi + tol) {
        j = L;
      } else {
        j = int(std::floor(std::log(std::max(fe, lo) / lo) / lr));
        j = std::clamp(j, 0, L - 1);
      }
      int64_t ce = inst.cost(e);
      for (int t = 1; t <= T; ++t) {
        if (ce < t || ce > K - t) continue;
        Index& slot = buckets[size_t(t)][size_t(j)];
        if (slot >= 0 && inst.cost(slot) >= ce) continue;
        if (slot >= 0) session.release(slot);
        slot = e;
        session.retain(e);
      }
      if (j == L) {
        detail::offer(inst, best,
                      detail::make_cand(inst, {e}, fe, "heavy_pair single"));
      }
    }
  }
  Index b0 = -1, b1 = -1;
  double bv = -1.0;
  {
    auto pass = session.open_pass();
    for (Index e : pass) {
      if (pb.skip(e)) continue;
      int64_t ce = inst.cost(e);
      if (ce < 1 || ce > T) continue;
      for (Index x : buckets[size_t(ce)]) {
        if (x < 0 || x == e || ce + inst.cost(x) > K) continue;
        double val = pb.g->value({e, x});
        if (val > bv) {
          if (b0 >= 0) session.release(IndexSet{b0, b1});
          b0 = e;
          b1 = x;
          bv = val;
          session.retain(IndexSet{b0, b1});
        }
      }
    }
  }
  if (b0 >= 0) {
    detail::offer(inst, best,
                  detail::make_cand(inst, {b0, b1}, bv, "heavy_pair"));
  }
  for (int t = 1; t <= T; ++t) {
    int n = 0;
    for (Index x : buckets[size_t(t)]) n += x >= 0;
    res.bucket_sizes.push_back(n);
  }
  res.out.best = best;
  res.out.rep = session.report();
  return res;
}

Outcome near_full_at(const Problem& pb, double v, Context& ctx) {
  return memo(ctx, kNearFull, pb, v, 0.0, [&] {
    const Instance& inst = *pb.inst;
    Outcome out;
    if (!(v > 0.0) || pb.cap <= 0) return out;
    const double cap = double(pb.cap);
    const double r = std::sqrt(ctx.eps);
    par(inst, out, heavy_pair_at(pb, 0.75 * v, ctx).out);
    par(inst, out,
        detail::simple_outcome(pb, 0.5 * v, r * cap, ctx, "near_full large"));
    par(inst, out, singleton_at(pb, ctx));

    Problem small = capped(pb, int64_t(std::floor(r * cap + 1e-9)));
    Outcome y = detail::simple_outcome(small, 0.25 * v, ctx.eps * cap, ctx,
                                       "near_full small");
    if (!y.best.empty()) {
      Problem py = pb.extend(y.best.set);
      Outcome rest;
      par(inst, rest, lifted(pb, py, singleton_at(py, ctx)));
      par(inst, rest,
          lifted(pb, py,
                 detail::simple_outcome(py, 0.25 * v, ctx.eps * cap, ctx,
                                        "near_full small rest")));
      par(inst, rest,
          lifted(pb, py,
                 detail::simple_outcome(py, y.best.value, ctx.eps * cap, ctx,
                                        "near_full small rest")));
      detail::offer(inst, rest.best, y.best);
      rest.rep = sequential(y.rep, rest.rep);
      par(inst, out, rest);
    } else {
      par(inst, out, y);
    }
    return out;
  });
}

Outcome approx_046_at(const Problem& pb, double v, double W, Context& ctx);

// ---------------------------------------------------------------------------

Outcome large_w_at(const Problem& pb, double vp, double W, Context& ctx) {
  if (!(vp > 0.0) || !(W > 0.0) || pb.cap <= 0) return {};
  const double cap = double(pb.cap);
  const double eta = W / cap;
  if (eta <= 1.0 + 1e-12) return approx_046_at(pb, vp, W, ctx);
  if (eta > 2.5 + 1e-12) return {};
  return memo(ctx, kLargeW, pb, vp, W, [&] {
    const Instance& inst = *pb.inst;
    Outcome out;
    par(inst, out, singleton_at(pb, ctx));
    par(inst, out, detail::simple_outcome(pb, vp, W, ctx, "large_w simple"));
    if (eta <= 1.5 + 1e-12) {
      double f = eta > 1.4 ? 0.72 : 0.685;
      for (const SizeGuess& c1 :
           size_windows(std::max(eta - 1.0, 1.0 / cap), 1.0, ctx.eps,
                        pb.cap)) {
        double W1 = W - c1.lo * cap;
        if (W1 > 0.0) par(inst, out, approx_046_at(pb, f * vp, W1, ctx));
      }
    } else {
      double f = eta > 2.0 ? 0.82 : 0.78;
      for (const SizeGuess& c1 : size_windows(0.5, 1.0, ctx.eps, pb.cap)) {
        double W1 = W - c1.lo * cap;
        if (W1 > 0.0) par(inst, out, large_w_at(pb, f * vp, W1, ctx));
      }
    }
    return out;
  });
}

Outcome approx_039_at(const Problem& pb, double v, Context& ctx) {
  const Instance& inst = *pb.inst;
  Outcome out;
  const double cap = double(pb.cap);
  par(inst, out, detail::simple_outcome(pb, v, cap, ctx, "simple"));
  par(inst, out, singleton_at(pb, ctx));
  for (const SizeGuess& c1 : size_windows(0.505, 1.0, ctx.eps, pb.cap)) {
    par(inst, out, ignore_large_at(pb, v, cap, c1.lo, 0.39, ctx));
  }
  return out;
}

Outcome approx_046_at(const Problem& pb, double v, double W, Context& ctx) {
  if (!(v > 0.0) || !(W > 0.0) || pb.cap <= 0) return {};
  return memo(ctx, kAt046, pb, v, W, [&] {
    const Instance& inst = *pb.inst;
    const double cap = double(pb.cap);
    Outcome out;
    par(inst, out, detail::simple_outcome(pb, v, W, ctx, "simple"));
    par(inst, out, singleton_at(pb, ctx));
    if (W >= cap - 1e-9) par(inst, out, near_full_at(pb, v, ctx));
    auto c2all = size_windows(1.0 / cap, 1.0, ctx.eps, pb.cap);
    for (const SizeGuess& c1 : size_windows(0.383, 0.5, ctx.eps, pb.cap)) {
      par(inst, out, ignore_large_at(pb, v, W, c1.lo, 0.272, ctx));
      par(inst, out,
          large_first_at(pb, v, W, 0.0, c1, c2_windows(c1, c2all), false,
                         ctx));
    }
    auto taus = tau_grid(0.224, 0.49, ctx.eps);
    for (const SizeGuess& c1 : size_windows(0.5, 1.0, ctx.eps, pb.cap)) {
      par(inst, out, ignore_large_at(pb, v, W, c1.lo, 0.224, ctx));
      auto c2s = c2_windows(c1, c2all);
      for (double tau : taus) {
        par(inst, out, large_first_at(pb, v, W, tau, c1, c2s, true, ctx));
      }
    }
    return out;
  });
}

// Small-items-first: Y packs inside a reduced capacity, then the rest is
// packed on g(.|Y).
Outcome small_first(const Problem& pb, double vy, int64_t cap_y, double w_y,
                    const std::function<void(const Problem&, Outcome&)>& rest,
                    Context& ctx, const std::string& tag) {
  const Instance& inst = *pb.inst;
  Outcome y = detail::simple_outcome(capped(pb, cap_y), vy, w_y, ctx,
                                     "small_first" + tag);
  Problem py = y.best.empty() ? pb : pb.extend(y.best.set);
  Outcome r;
  par(inst, r, singleton_at(py, ctx));
  rest(py, r);
  r.best = detail::lift(pb, py, r.best);
  detail::offer(inst, r.best, y.best);
  r.rep = sequential(y.rep, r.rep);
  return r;
}

Outcome approx_05_at(const Problem& pb, double v, Context& ctx) {
  const Instance& inst = *pb.inst;
  const double cap = double(pb.cap);
  const double eps = ctx.eps;
  Outcome out;
  if (!(v > 0.0) || pb.cap <= 0) return out;
  par(inst, out, approx_046_at(pb, v, cap, ctx));

  auto mid = size_windows(0.3, 0.5, eps, pb.cap);
  auto big = size_windows(0.5, 1.0, eps, pb.cap);
  std::vector<SizeGuess> c1all = mid;
  c1all.insert(c1all.end(), big.begin(), big.end());
  auto c2all = size_windows(1.0 / cap, 1.0, eps, pb.cap);

  for (const SizeGuess& c1 : c1all) {
    par(inst, out, ignore_large_at(pb, v, cap, c1.lo, 0.15, ctx));
  }
  auto taus = tau_grid(0.362, 0.5, eps);
  for (const SizeGuess& c1 : big) {
    auto c2s = c2_windows(c1, c2all);
    for (double tau : taus) {
      par(inst, out, large_first_at(pb, v, cap, tau, c1, c2s, true, ctx));
    }
  }
  for (const SizeGuess& c1 : mid) {
    par(inst, out,
        large_first_at(pb, v, cap, 0.0, c1, c2_windows(c1, c2all), false,
                       ctx));
  }
  // LargeFirst anchored at an item of the second-largest size class.
  for (const SizeGuess& c2 : c2all) {
    Pick pk = pick_at(pb, v, c2, 0.0, false, ctx);
    if (pk.e < 0) {
      par(inst, out, Outcome{Cand{}, pk.rep});
      continue;
    }
    std::vector<double> W2s;
    for (const SizeGuess& c1 : c1all) {
      if (c2.lo <= c1.hi + 1e-12 && c1.lo + c2.lo <= 1.0 + 1e-12) {
        W2s.push_back(cap - c1.lo * cap - c2.lo * cap);
      }
    }
    double t = pk.fe / v;
    PFn ps = [t](double beta) {
      return std::make_pair(1.0 - beta, 1.0 - 2.0 * beta + t);
    };
    Outcome lf = large_first_on(pb, v, pk.e, pk.fe, cap - c2.lo * cap, W2s,
                                ps, ctx, " second" + wtag("c2", c2));
      lf.rep = sequential(pk.rep, lf.rep);
    par(inst, out, lf);
  }

  auto pack = [&](const Problem& py, double vp, double Wp, Outcome& acc) {
    if (vp > 0.0 && Wp > 0.0) par(inst, acc, large_w_at(py, vp, Wp, ctx));
  };

  // Small items first, large item of at least half the budget.
  for (const SizeGuess& c1 : big) {
    for (const SizeGuess& c2 : c2_windows(c1, c2all)) {
      double cs_lo = 1.0 - c1.hi - c2.hi;
      double cs_hi = 1.0 - c1.lo - c2.lo;
      if (!(cs_lo > 0.0) || 1.0 - c1.hi < 1.98 * cs_lo) continue;
      int64_t cap_y = int64_t(std::floor(1.98 * cs_lo * cap + 1e-9));
      std::string tag = " 1.98" + wtag("c1", c1) + wtag("c2", c2);
      double W1 = (1.0 - c1.lo) * cap;
      par(inst, out,
          small_first(
              pb, 0.33 * v, cap_y, cs_hi * cap,
              [&](const Problem& py, Outcome& acc) {
                par(inst, acc,
                    detail::simple_outcome(py, 0.5 * v, W1, ctx,
                                           "small_first rest" + tag));
                pack(py, 0.5 * v, W1, acc);
              },
              ctx, tag));
    }
  }
  // Small items first, largest item in [0.3, 0.5] of the budget.
  for (const SizeGuess& c1 : mid) {
    for (const SizeGuess& c2 : c2_windows(c1, c2all)) {
      double cs_lo = 1.0 - c1.hi - c2.hi;
      double cs_hi = 1.0 - c1.lo - c2.lo;
      if (!(cs_lo > 0.0) || 2.4 * cs_lo > 1.0 - c1.hi) continue;
      int64_t cap_y = int64_t(std::floor(2.4 * cs_lo * cap + 1e-9));
      std::string tag = " 2.4" + wtag("c1", c1) + wtag("c2", c2);
      double W1 = (1.0 - c1.lo) * cap;
      par(inst, out,
          small_first(
              pb, 0.386 * v, cap_y, cs_hi * cap,
              [&](const Problem& py, Outcome& acc) {
                pack(py, 0.5 * v, W1, acc);
                for (double vp = 0.5 * v; vp >= 0.29 * v * (1.0 - 1e-12);
                     vp /= 1.0 + eps) {
                  par(inst, acc,
                      detail::simple_outcome(py, vp, cs_hi * cap, ctx,
                                             "small_first rest" + tag));
                  pack(py, vp, cs_hi * cap, acc);
                }
              },
              ctx, tag));
    }
  }
  // Threshold rounds with a finisher, then the remainder by case on c(Y).
  auto c2mid = size_windows(0.09, 0.5, eps, pb.cap);
  for (const SizeGuess& c1 : mid) {
    SimpleSpec spec;
    spec.v = v;
    spec.W = cap;
    spec.finisher = 0.5 * v;
    spec.stop_above = (1.0 - c1.hi) * cap;
    spec.round_cap = ctx.driver_round_cap();
    SimpleResult ys = detail::run_simple(pb, spec, ctx);
    std::string tag = wtag("c1", c1);
    Outcome y;
    y.best = detail::make_cand(inst, ys.solution.chosen, ys.solution.value,
                               "modified_simple" + tag);
    y.rep = ys.solution.report;
    Problem py = y.best.empty() ? pb : pb.extend(y.best.set);
    const double fy = y.best.value;
    const double cy = double(y.best.cost);
    Outcome r;
    for (const SizeGuess& c2 : c2mid) {
      if (c2.lo > c1.hi + 1e-12) continue;
      if ((1.0 - c2.hi) / (1.0 - c1.hi) >= 1.3) {
        par(inst, out, ignore_large_at(pb, v, cap, c1.lo, 0.307, ctx));
      }
      if (ys.finisher_hit) continue;
      if (cy >= (1.0 - c1.hi) * cap - 1e-9 && cy <= (1.0 - c2.hi) * cap + 1e-9) {
        pack(py, 0.693 * v - fy, (1.0 - c1.lo) * cap, r);
      }
      if (cy >= (1.0 - c2.hi) * cap - 1e-9) {
        pack(py, 0.54 * v - fy, (1.0 - c1.lo - c2.lo) * cap, r);
      }
      for (const SizeGuess& c3 : c2all) {
        if (c3.lo > c2.hi + 1e-12) break;
        if (cy >= (1.0 - c3.hi) * cap - 1e-9) {
          pack(py, 0.567 * v - fy, (1.0 - c1.lo - c2.lo - c3.lo) * cap, r);
        }
      }
    }
    r.best = detail::lift(pb, py, r.best);
      detail::offer(inst, r.best, y.best);
    r.rep = sequential(y.rep, r.rep);
    par(inst, out, r);
  }
  return out;
}

// ---------------------------------------------------------------------------

template <class At>
Solution drive(const Instance& inst, double eps, const AlgoOptions& opts,
               const std::string& name, At at) {
  check_eps(eps);
  auto t0 = std::chrono::steady_clock::now();
  uint64_t calls0 = inst.oracle().calls();
  Context ctx(eps, opts.trace);
  Problem pb = Problem::root(inst);
  ResourceReport head;
  std::vector<double> grid;
  if (opts.v) {
    if (*opts.v > 0.0) grid.push_back(*opts.v);
  } else {
    detail::EstimateOut est = detail::estimate(pb, ctx);
    grid = est.grid;
    head = est.rep;
  }
  Outcome all;
  for (double v : grid) {
    Outcome o = at(pb, v, ctx);
    if (!o.best.branch.empty()) o.best.branch += " v=" + format_real(v);
    par(inst, all, o);
  }
  Solution s = to_solution(all.best, sequential(head, all.rep));
  if (!s.chosen.empty()) s.value = inst.oracle().value(s.chosen);
  if (s.cost > inst.K()) throw InvariantError(name + " returned an infeasible set");
  s.report.oracle_calls = inst.oracle().calls() - calls0;
  s.report.wall_time_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
  return s;
}

Problem problem_with_base(const Instance& inst, const IndexSet& base) {
  Problem pb = Problem::root(inst);
  return base.empty() ? pb : pb.extend(base);
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<SizeGuess> size_windows(double lo, double hi, double eps,
                                    int64_t cap) {
  std::vector<SizeGuess> out;
  if (cap <= 0 || lo > hi) return out;
  std::vector<std::pair<double, double>> raw;
  if (hi <= lo) {
    raw.emplace_back(lo, hi);
  } else {
    for (double a = lo; a < hi * (1.0 - 1e-12); a *= 1.0 + eps) {
      raw.emplace_back(a, std::min(a * (1.0 + eps), hi));
    }
  }
  const double c = double(cap);
  int64_t last_lo = -1, last_hi = -1;
  for (auto [a, b] : raw) {
    int64_t clo = std::max<int64_t>(1, int64_t(std::ceil(a * c - 1e-9)));
    int64_t chi = std::min<int64_t>(cap, int64_t(std::floor(b * c + 1e-9)));
    if (clo > chi || (clo == last_lo && chi == last_hi)) continue;
    out.push_back(SizeGuess{double(clo) / c, double(chi) / c});
    last_lo = clo;
    last_hi = chi;
  }
  return out;
}

double gamma_fn(double t) {
  if (t >= 0.5) return 2.0 / 3.0;
  if (t >= 0.4) return 5.0 / 6.0 - t / 3.0;
  return 0.9 - t / 2.0;
}

SimpleResult simple_knapsack(const Instance& inst, double v, double W,
                             double eps, const AlgoOptions& opts) {
  check_eps(eps);
  if (!(v > 0.0)) throw std::invalid_argument("v must be positive");
  if (!(W > 0.0)) throw std::invalid_argument("W must be positive");
  Context ctx(eps, opts.trace);
  SimpleSpec spec;
  spec.v = v;
  spec.W = W;
  spec.gain_stop = true;
  SimpleResult r = detail::run_simple(Problem::root(inst), spec, ctx);
  r.solution.branch = "simple";
  return r;
}

Solution best_singleton(const Instance& inst, int64_t cap,
                        const IndexSet& base) {
  Context ctx(0.5);
  Problem pb = problem_with_base(inst, base);
  pb.cap = cap;
  Outcome o = singleton_at(pb, ctx);
  Problem root = Problem::root(inst);
  Cand c = detail::lift(root, pb, o.best);
  c.branch = "singleton";
  return to_solution(c, o.rep);
}

Solution ignore_large(const Instance& inst, double v, double W, double c1_lo,
                      double tau, double eps, const AlgoOptions& opts) {
  check_eps(eps);
  Context ctx(eps, opts.trace);
  Problem pb = Problem::root(inst);
  if (tau <= 0.5 && !(W - c1_lo * double(inst.K()) > 0.0)) {
    throw std::invalid_argument("ignore_large needs W - c1_lo*K > 0");
  }
  if (tau <= 0.5 && !(v > 0.0)) throw std::invalid_argument("v must be positive");
  Outcome o = ignore_large_at(pb, v, W, c1_lo, tau, ctx);
  return to_solution(o.best, o.rep);
}

EstimateResult single_pass_estimate(const Instance& inst, double eps) {
  check_eps(eps);
  Context ctx(eps);
  detail::EstimateOut e = detail::estimate(Problem::root(inst), ctx);
  EstimateResult r;
  r.X = e.X;
  r.fx = e.fx;
  r.grid = e.grid;
  r.report = e.rep;
  return r;
}

NiceItems pick_nice_item(const Instance& inst, double v, SizeGuess size,
                         double tau, double eps) {
  check_eps(eps);
  Context ctx(eps);
  Pick pk = pick_at(Problem::root(inst), v, size, tau, true, ctx);
  NiceItems out;
  if (pk.e >= 0) out.Y = {pk.e};
  out.levels = 1;
  out.report = pk.rep;
  return out;
}

Solution large_first(const Instance& inst, double v, double W, double tau,
                     SizeGuess c1, SizeGuess c2, double eps, LargeMode mode) {
  check_eps(eps);
  if (!(v > 0.0)) throw std::invalid_argument("v must be positive");
  Context ctx(eps);
  Outcome o = large_first_at(Problem::root(inst), v, W, tau, c1, {c2},
                             mode == LargeMode::kNice, ctx);
  return to_solution(o.best, o.rep);
}

HeavyPairResult heavy_pair(const Instance& inst, double v_prime, double eps) {
  check_eps(eps);
  Context ctx(eps);
  HeavyOut h = heavy_pair_at(Problem::root(inst), v_prime, ctx);
  HeavyPairResult r;
  r.solution = to_solution(h.out.best, h.out.rep);
  r.bucket_sizes = std::move(h.bucket_sizes);
  return r;
}

Solution near_full_pair_case(const Instance& inst, double v, double eps) {
  check_eps(eps);
  Context ctx(eps);
  Outcome o = near_full_at(Problem::root(inst), v, ctx);
  return to_solution(o.best, o.rep);
}

SimpleResult modified_simple(const Instance& inst, double v, double c1_hi,
                             double eps, const AlgoOptions& opts) {
  check_eps(eps);
  if (!(v > 0.0)) throw std::invalid_argument("v must be positive");
  Context ctx(eps, opts.trace);
  SimpleSpec spec;
  spec.v = v;
  spec.W = double(inst.K());
  spec.finisher = 0.5 * v;
  spec.stop_above = (1.0 - c1_hi) * double(inst.K());
  spec.round_cap = ctx.driver_round_cap();
  SimpleResult r = detail::run_simple(Problem::root(inst), spec, ctx);
  r.solution.branch = "modified_simple";
  return r;
}

Solution large_w(const Instance& inst, double v_prime, double eta,
                 double eps) {
  check_eps(eps);
  if (eta > 2.5) throw std::invalid_argument("eta must not exceed 2.5");
  auto t0 = std::chrono::steady_clock::now();
  uint64_t calls0 = inst.oracle().calls();
  Context ctx(eps);
  Outcome o = large_w_at(Problem::root(inst), v_prime,
                         eta * double(inst.K()), ctx);
  Solution s = to_solution(o.best, o.rep);
  s.report.oracle_calls = inst.oracle().calls() - calls0;
  s.report.wall_time_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
  return s;
}

Solution approx_039(const Instance& inst, double eps,
                    const AlgoOptions& opts) {
  return drive(inst, eps, opts, "approx_039",
               [](const Problem& pb, double v, Context& ctx) {
                 return approx_039_at(pb, v, ctx);
               });
}

Solution approx_046(const Instance& inst, double eps,
                    const AlgoOptions& opts) {
  return drive(inst, eps, opts, "approx_046",
               [](const Problem& pb, double v, Context& ctx) {
                 return approx_046_at(pb, v, double(pb.cap), ctx);
               });
}

Solution approx_05(const Instance& inst, double eps, const AlgoOptions& opts) {
  return drive(inst, eps, opts, "approx_05",
               [](const Problem& pb, double v, Context& ctx) {
                 return approx_05_at(pb, v, ctx);
               });
}

}  // namespace streamsub
