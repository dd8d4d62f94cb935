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

#include "streamsub/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "streamsub/cardinality.hpp"
#include "streamsub/knapsack.hpp"
#include "streamsub/stream.hpp"

namespace streamsub {

namespace {

using json = nlohmann::json;

// Small deterministic helpers on top of mt19937_64, whose output sequence is
// fixed by the standard (the std distributions are not).
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}
  // Uniform integer in [lo, hi].
  int64_t range(int64_t lo, int64_t hi) {
    uint64_t span = uint64_t(hi - lo) + 1;
    return lo + int64_t(gen_() % span);
  }
  double unit() { return double(gen_() >> 11) * 0x1.0p-53; }
  // Value in [0, 1] rounded to the given number of decimals.
  double rounded(int decimals) {
    double s = std::pow(10.0, decimals);
    return double(range(0, int64_t(s))) / s;
  }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[size_t(range(0, int64_t(i) - 1))]);
    }
  }
  // k distinct values from [0, n).
  std::vector<int> sample(int n, int k) {
    std::vector<int> all(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) all[size_t(i)] = i;
    shuffle(all);
    all.resize(size_t(std::min(k, n)));
    std::sort(all.begin(), all.end());
    return all;
  }

 private:
  std::mt19937_64 gen_;
};

std::string item_id(int i) { return "e" + std::to_string(i); }
std::string elem(int u) { return "u" + std::to_string(u); }

std::vector<std::string> elems(const std::vector<int>& us) {
  std::vector<std::string> out;
  for (int u : us) out.push_back(elem(u));
  return out;
}

int64_t draw_cost(Rng& rng, const GeneratorSpec& spec) {
  if (spec.costs == "unit") return 1;
  int64_t hi = spec.cost_max > 0 ? std::min(spec.cost_max, spec.K) : spec.K;
  return rng.range(1, hi);
}

void add_cover_item(InstanceFile& f, int64_t cost, std::vector<int> us) {
  f.items.push_back(Item{item_id(int(f.items.size())), cost});
  f.covers.push_back(elems(us));
}

InstanceFile gen_coverage(const GeneratorSpec& s, Rng& rng, bool weighted) {
  InstanceFile f;
  f.K = s.K;
  f.kind = weighted ? OracleKind::kWeightedCoverage : OracleKind::kCoverage;
  int U = std::max(4, 2 * s.n);
  for (int i = 0; i < s.n; ++i) {
    int k = int(rng.range(1, std::max(1, U / 3)));
    add_cover_item(f, draw_cost(rng, s), rng.sample(U, k));
  }
  if (weighted) {
    for (int u = 0; u < U; ++u) {
      f.weights.emplace_back(elem(u), 0.01 + rng.rounded(2) * 4.0);
    }
  }
  return f;
}

InstanceFile gen_facility(const GeneratorSpec& s, Rng& rng) {
  InstanceFile f;
  f.K = s.K;
  f.kind = OracleKind::kFacility;
  for (int i = 0; i < s.n; ++i) {
    f.items.push_back(Item{item_id(i), draw_cost(rng, s)});
  }
  int P = std::max(3, s.n);
  for (int p = 0; p < P; ++p) {
    std::vector<double> row;
    for (int i = 0; i < s.n; ++i) row.push_back(rng.rounded(3));
    f.sim.push_back(std::move(row));
  }
  return f;
}

InstanceFile gen_dust(const GeneratorSpec& s, Rng& rng) {
  InstanceFile f;
  f.K = s.K;
  f.kind = OracleKind::kWeightedCoverage;
  for (int i = 0; i < s.n; ++i) {
    add_cover_item(f, draw_cost(rng, s), {i});
    f.weights.emplace_back(elem(i), 0.01 + rng.rounded(2) * 9.0);
  }
  return f;
}

// Two items of half the budget covering disjoint halves of the universe,
// decoys of comparable value overlapping both halves, and small noise items.
InstanceFile gen_heavy_pair(const GeneratorSpec& s, Rng& rng) {
  if (s.K < 2) throw std::invalid_argument("planted-heavy-pair needs K >= 2");
  if (s.n < 2) throw std::invalid_argument("planted-heavy-pair needs n >= 2");
  InstanceFile f;
  f.K = s.K;
  f.kind = OracleKind::kCoverage;
  const int H = 12;
  const int U = 2 * H;
  std::vector<int> a, b;
  for (int u = 0; u < H; ++u) a.push_back(u);
  for (int u = H; u < U; ++u) b.push_back(u);
  int n_decoy = std::min(s.n - 2, int(rng.range(0, 3)));
  int n_noise = s.n - 2 - n_decoy;
  // Stream order is shuffled; kinds: 0 planted, 1 decoy, 2 noise.
  std::vector<int> kinds = {0, 0};
  kinds.insert(kinds.end(), size_t(n_decoy), 1);
  kinds.insert(kinds.end(), size_t(n_noise), 2);
  rng.shuffle(kinds);
  std::vector<std::string> pair;
  bool first = true;
  for (int k : kinds) {
    if (k == 0) {
      int64_t c = first ? s.K / 2 : s.K - s.K / 2;
      pair.push_back(item_id(int(f.items.size())));
      add_cover_item(f, c, first ? a : b);
      first = false;
    } else if (k == 1) {
      int size = int(rng.range(9, H));
      add_cover_item(f, rng.range(1, s.K), rng.sample(U, size));
    } else {
      int size = int(rng.range(1, H / 3));
      add_cover_item(f, rng.range(1, s.K), rng.sample(U, size));
    }
  }
  f.comments.push_back(" planted heavy_pair " + pair[0] + " " + pair[1]);
  return f;
}

// One large item x1 (cost in [K/2, K-2]) plus small items completing the
// planted set X; decoys match x1's value and cost, overlap x1 freely and
// overlap the rest of X by at most half; unit dust fills the stream.
InstanceFile gen_large_item(const GeneratorSpec& s, Rng& rng) {
  if (s.K < 4) throw std::invalid_argument("planted-large-item needs K >= 4");
  if (s.n < 4) throw std::invalid_argument("planted-large-item needs n >= 4");
  InstanceFile f;
  f.K = s.K;
  f.kind = OracleKind::kCoverage;
  int64_t c1 = rng.range((s.K + 1) / 2, s.K - 2);
  int64_t room = s.K - c1;
  int n_rest = int(std::min<int64_t>(room, rng.range(1, 3)));
  int A = int(rng.range(6, 12));
  // f(x1)/f(X) in [0.2, 0.6].
  double t = 0.2 + 0.4 * rng.unit();
  int B = std::max(n_rest, int(std::lround(A * (1.0 - t) / t)));
  int U = A + B + 8;
  std::vector<int> a, b;
  for (int u = 0; u < A; ++u) a.push_back(u);
  for (int u = A; u < A + B; ++u) b.push_back(u);
  int n_decoy = std::min(s.n - 1 - n_rest, int(rng.range(1, 3)));
  int n_dust = s.n - 1 - n_rest - n_decoy;
  std::vector<int> kinds = {0};
  kinds.insert(kinds.end(), size_t(n_rest), 1);
  kinds.insert(kinds.end(), size_t(n_decoy), 2);
  kinds.insert(kinds.end(), size_t(n_dust), 3);
  rng.shuffle(kinds);
  // Split b into n_rest blocks; costs split room.
  std::vector<int64_t> rest_cost(size_t(n_rest), 1);
  for (int64_t r = room - n_rest; r > 0; --r) {
    rest_cost[size_t(rng.range(0, n_rest - 1))] += 1;
  }
  int next_rest = 0;
  std::string x1;
  std::vector<std::string> rest_ids;
  for (int k : kinds) {
    std::string id = item_id(int(f.items.size()));
    if (k == 0) {
      x1 = id;
      add_cover_item(f, c1, a);
    } else if (k == 1) {
      std::vector<int> blk;
      for (int u = A + next_rest; u < A + B; u += n_rest) blk.push_back(u);
      add_cover_item(f, rest_cost[size_t(next_rest)], blk);
      rest_ids.push_back(id);
      ++next_rest;
    } else if (k == 2) {
      // A elements: some from b (at most half of them), the rest outside b.
      int from_b = int(rng.range(0, std::min(A, B / 2)));
      std::vector<int> pick;
      for (int i : rng.sample(B, from_b)) pick.push_back(A + i);
      std::vector<int> others;
      for (int u = 0; u < A; ++u) others.push_back(u);
      for (int u = A + B; u < U; ++u) others.push_back(u);
      rng.shuffle(others);
      for (int i = 0; int(pick.size()) < A; ++i) pick.push_back(others[size_t(i)]);
      std::sort(pick.begin(), pick.end());
      add_cover_item(f, c1, pick);
    } else {
      add_cover_item(f, 1, {int(rng.range(A + B, U - 1))});
    }
  }
  std::string line = " planted large_item " + x1;
  for (const auto& r : rest_ids) line += " " + r;
  f.comments.push_back(line);
  return f;
}

double ratio_of(double value, std::optional<double> opt) {
  if (!opt) return value;
  if (*opt <= 0.0) return 1.0;
  return value / *opt;
}

// Best over the estimate grid (or the injected v) of one Simple variant.
template <class Run>
Solution over_grid(const Instance& inst, const RunOptions& o, Run run) {
  auto t0 = std::chrono::steady_clock::now();
  uint64_t calls0 = inst.oracle().calls();
  std::vector<double> grid;
  ResourceReport head;
  if (o.algo.v) {
    grid.push_back(*o.algo.v);
  } else {
    EstimateResult est = single_pass_estimate(inst, o.eps);
    grid = est.grid;
    head = est.report;
  }
  Solution best;
  ResourceReport all;
  for (double v : grid) {
    if (!(v > 0.0)) continue;
    Solution s = run(v);
    all = parallel(all, s.report);
    if (better(inst, s, best)) best = std::move(s);
  }
  best.report = sequential(head, all);
  best.report.oracle_calls = inst.oracle().calls() - calls0;
  best.report.wall_time_ms = std::chrono::duration<double, std::milli>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();
  return best;
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(10);
  out << x;
  return out.str();
}

}  // namespace

InstanceFile generate_instance(const GeneratorSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("n must be >= 1");
  if (spec.K < 1) throw std::invalid_argument("K must be >= 1");
  if (spec.costs != "unit" && spec.costs != "uniform") {
    throw std::invalid_argument("costs must be 'unit' or 'uniform'");
  }
  if (spec.cost_max < 0) throw std::invalid_argument("cost_max must be >= 0");
  Rng rng(spec.seed);
  InstanceFile f;
  if (spec.family == "coverage") {
    f = gen_coverage(spec, rng, false);
  } else if (spec.family == "weighted-coverage") {
    f = gen_coverage(spec, rng, true);
  } else if (spec.family == "facility") {
    f = gen_facility(spec, rng);
  } else if (spec.family == "dust") {
    f = gen_dust(spec, rng);
  } else if (spec.family == "planted-heavy-pair") {
    f = gen_heavy_pair(spec, rng);
  } else if (spec.family == "planted-large-item") {
    f = gen_large_item(spec, rng);
  } else {
    throw std::invalid_argument("unknown family: " + spec.family);
  }
  f.comments.insert(f.comments.begin(),
                    " family=" + spec.family + " n=" + std::to_string(spec.n) +
                        " K=" + std::to_string(spec.K) + " costs=" +
                        spec.costs + " seed=" + std::to_string(spec.seed));
  return f;
}

std::vector<std::string> planted_ids(const InstanceFile& file,
                                     const std::string& label) {
  for (const auto& c : file.comments) {
    std::istringstream in(c);
    std::string w, l;
    if (!(in >> w >> l) || w != "planted" || l != label) continue;
    std::vector<std::string> ids;
    for (std::string id; in >> id;) ids.push_back(id);
    return ids;
  }
  return {};
}

Solution greedy_baseline(const Instance& inst) {
  auto t0 = std::chrono::steady_clock::now();
  StreamSession session(inst);
  Solution s;
  std::vector<char> in(size_t(inst.size()), 0);
  double fs = 0.0;
  while (true) {
    Index best = -1;
    double bd = 0.0, bm = 0.0;
    {
      auto pass = session.open_pass();
      for (Index e : pass) {
        if (in[size_t(e)] || s.cost + inst.cost(e) > inst.K()) continue;
        double m = inst.oracle().marginal(e, s.chosen);
        double d = m / double(inst.cost(e));
        if (m > 0.0 && d > bd) {
          best = e;
          bd = d;
          bm = m;
        }
      }
    }
    if (best < 0) break;
    s.chosen.push_back(best);
    in[size_t(best)] = 1;
    s.cost += inst.cost(best);
    fs += bm;
    session.retain(best);
  }
  std::sort(s.chosen.begin(), s.chosen.end());
  s.value = s.chosen.empty() ? 0.0 : inst.oracle().value(s.chosen);
  s.branch = "greedy (non-streaming)";
  s.report = session.report();
  s.report.wall_time_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
  return s;
}

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = {
      "simple-card", "card-bsearch", "card-parallel", "simple-knap",
      "approx-039",  "approx-046",   "approx-05",     "greedy"};
  return names;
}

Solution run_algorithm(const std::string& name, const Instance& inst,
                       const RunOptions& o) {
  double W = o.W ? *o.W : double(inst.K());
  if (name == "simple-card") {
    return over_grid(inst, o, [&](double v) {
      return simple_cardinality(inst, v, W, o.eps, RoundMode::kUntilFull,
                                o.algo)
          .solution;
    });
  }
  if (name == "card-bsearch") {
    return cardinality_binary_search(inst, o.eps, o.algo).solution;
  }
  if (name == "card-parallel") {
    return cardinality_parallel_guess(inst, o.eps, o.algo).solution;
  }
  if (name == "simple-knap") {
    return over_grid(inst, o, [&](double v) {
      return simple_knapsack(inst, v, W, o.eps, o.algo).solution;
    });
  }
  if (name == "approx-039") return approx_039(inst, o.eps, o.algo);
  if (name == "approx-046") return approx_046(inst, o.eps, o.algo);
  if (name == "approx-05") return approx_05(inst, o.eps, o.algo);
  if (name == "greedy") return greedy_baseline(inst);
  throw std::invalid_argument("unknown algorithm: " + name);
}

double RunReport::ratio() const { return ratio_of(value, opt); }

BenchmarkConfig read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config: " + path);
  json j = json::parse(in);
  BenchmarkConfig c;
  std::filesystem::path dir = std::filesystem::path(path).parent_path();
  for (const auto& p : j.at("instances")) {
    std::filesystem::path ip = p.get<std::string>();
    if (ip.is_relative() && !dir.empty()) ip = dir / ip;
    c.instances.push_back(ip.string());
  }
  c.algorithms = j.at("algorithms").get<std::vector<std::string>>();
  c.epsilons = j.value("epsilons", std::vector<double>{0.1});
  c.exact_v = j.value("exact_v", false);
  c.out_prefix = j.value("out_prefix", std::string("bench"));
  if (std::filesystem::path(c.out_prefix).is_relative() && !dir.empty()) {
    c.out_prefix = (dir / c.out_prefix).string();
  }
  return c;
}

std::string report_json(const RunReport& r) {
  json j;
  j["instance"] = r.instance;
  j["algorithm"] = r.algorithm;
  j["eps"] = r.eps;
  if (!r.error.empty()) {
    j["error"] = r.error;
    return j.dump();
  }
  j["value"] = r.value;
  j["opt"] = r.opt ? json(*r.opt) : json(nullptr);
  j["ratio"] = r.ratio();
  j["chosen"] = r.chosen;
  j["branch"] = r.branch;
  j["streaming"] = r.streaming;
  j["passes"] = r.report.passes;
  j["oracle_calls"] = r.report.oracle_calls;
  j["peak_stored"] = r.report.peak_stored;
  j["wall_time_ms"] = r.report.wall_time_ms;
  return j.dump();
}

std::string csv_header() {
  return "instance,algo,eps,ratio,passes,oracle_calls,peak_stored";
}

std::string csv_row(const RunReport& r) {
  std::ostringstream out;
  out << r.instance << ',' << r.algorithm << ',' << fmt(r.eps) << ','
      << fmt(r.ratio()) << ',' << r.report.passes << ','
      << r.report.oracle_calls << ',' << r.report.peak_stored;
  return out.str();
}

BenchmarkResult run_benchmark(const BenchmarkConfig& config) {
  BenchmarkResult res;
  for (const auto& path : config.instances) {
    std::optional<Instance> inst;
    std::optional<double> opt;
    std::string load_error;
    try {
      inst.emplace(load_instance(path));
      if (inst->size() <= 20 || config.exact_v) {
        opt = brute_force_opt(*inst).value;
      }
    } catch (const std::exception& e) {
      load_error = e.what();
    }
    for (const auto& algo : config.algorithms) {
      for (double eps : config.epsilons) {
        RunReport r;
        r.instance = path;
        r.algorithm = algo;
        r.eps = eps;
        r.streaming = algo != "greedy";
        if (!inst) {
          r.error = load_error;
        } else {
          try {
            RunOptions o;
            o.eps = eps;
            if (config.exact_v) o.algo.v = *opt;
            Solution s = run_algorithm(algo, *inst, o);
            r.value = s.value;
            r.opt = opt;
            r.chosen = inst->ids_of(s.chosen);
            r.branch = s.branch;
            r.report = s.report;
          } catch (const std::exception& e) {
            r.error = e.what();
          }
        }
        if (!r.error.empty()) ++res.errors;
        res.rows.push_back(std::move(r));
      }
    }
  }
  std::ofstream jl(config.out_prefix + ".jsonl", std::ios::binary);
  std::ofstream csv(config.out_prefix + ".csv", std::ios::binary);
  if (!jl || !csv) {
    throw std::runtime_error("cannot write reports at " + config.out_prefix);
  }
  csv << csv_header() << '\n';
  for (const auto& r : res.rows) {
    jl << report_json(r) << '\n';
    if (r.error.empty()) csv << csv_row(r) << '\n';
  }
  return res;
}

VerifyResult verify_instance(const Instance& inst, double eps, int trials,
                             uint64_t seed) {
  VerifyResult out;
  auto note = [&](bool ok, const std::string& what) {
    out.lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    if (!ok) out.pass = false;
  };
  IndexSet ground;
  for (Index e = 0; e < inst.size(); ++e) ground.push_back(e);
  SubmodularCheck sc = check_submodular(inst.oracle(), ground, trials, seed);
  note(sc.pass, "oracle laws over " + std::to_string(sc.trials) + " trials" +
                    (sc.witness ? " (" + sc.witness->kind + " witness)" : ""));
  std::optional<double> opt;
  if (inst.size() <= 20) opt = brute_force_opt(inst).value;
  for (const auto& name : algorithm_names()) {
    if (!inst.unit_costs() && (name == "simple-card" || name == "card-bsearch" ||
                               name == "card-parallel")) {
      continue;
    }
    try {
      RunOptions o;
      o.eps = eps;
      Solution s = run_algorithm(name, inst, o);
      bool feasible = inst.cost(s.chosen) <= inst.K();
      double fv = s.chosen.empty() ? 0.0 : inst.oracle().value(s.chosen);
      bool exact = std::abs(fv - s.value) <= 1e-9 * std::max(1.0, fv);
      bool bounded = !opt || s.value <= *opt * (1.0 + 1e-9) + 1e-12;
      note(feasible && exact && bounded,
           name + ": value=" + fmt(s.value) + " cost=" +
               std::to_string(s.cost) + "/" + std::to_string(inst.K()) +
               (opt ? " ratio=" + fmt(ratio_of(s.value, opt)) : ""));
    } catch (const std::exception& e) {
      note(false, name + ": " + e.what());
    }
  }
  return out;
}

}  // namespace streamsub
