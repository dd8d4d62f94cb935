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

#include "streamsub/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace streamsub {
namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw std::invalid_argument("line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

int64_t parse_int(const std::string& tok, int line, const char* what) {
  int64_t x = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
  if (ec != std::errc() || p != tok.data() + tok.size()) {
    fail(line, std::string(what) + " must be an integer, got '" + tok + "'");
  }
  return x;
}

double parse_real(const std::string& tok, int line, const char* what) {
  double x = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
  if (ec != std::errc() || p != tok.data() + tok.size()) {
    fail(line, std::string(what) + " must be a number, got '" + tok + "'");
  }
  return x;
}

}  // namespace

const char* oracle_kind_name(OracleKind kind) {
  switch (kind) {
    case OracleKind::kCoverage: return "coverage";
    case OracleKind::kWeightedCoverage: return "weighted-coverage";
    case OracleKind::kFacility: return "facility";
  }
  return "?";
}

std::string format_double(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw std::runtime_error("cannot format double");
  return std::string(buf, p);
}

InstanceFile parse_instance(std::istream& in) {
  InstanceFile f;
  bool have_k = false, have_cover = false, have_facility = false;
  int rows_left = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      f.comments.push_back(line.substr(first + 1));
      continue;
    }
    auto tok = split(line);
    if (rows_left > 0) {
      if (tok.size() != f.items.size()) {
        fail(lineno, "facility row needs one entry per item");
      }
      std::vector<double> row;
      for (const auto& t : tok) row.push_back(parse_real(t, lineno, "similarity"));
      f.sim.push_back(std::move(row));
      --rows_left;
      continue;
    }
    const std::string& head = tok[0];
    if (!have_k) {
      if (head != "K" || tok.size() != 2) fail(lineno, "expected header 'K <int>'");
      f.K = parse_int(tok[1], lineno, "K");
      if (f.K < 0) fail(lineno, "K must be nonnegative");
      have_k = true;
      continue;
    }
    if (head == "item") {
      if (have_facility) fail(lineno, "items must precede the facility section");
      if (tok.size() < 3) fail(lineno, "expected 'item <id> <cost> ...'");
      Item it{tok[1], parse_int(tok[2], lineno, "cost")};
      if (it.cost < 1) fail(lineno, "cost must be >= 1");
      if (f.K > 0 && it.cost > f.K) fail(lineno, "cost exceeds K");
      std::vector<std::string> cover;
      if (tok.size() > 3) {
        if (tok[3] != "cover") fail(lineno, "expected 'cover' after cost");
        have_cover = true;
        cover.assign(tok.begin() + 4, tok.end());
      }
      f.items.push_back(std::move(it));
      f.covers.push_back(std::move(cover));
    } else if (head == "weight") {
      if (tok.size() != 3) fail(lineno, "expected 'weight <u> <w>'");
      double w = parse_real(tok[2], lineno, "weight");
      if (!(w >= 0.0)) fail(lineno, "weight must be nonnegative");
      f.weights.emplace_back(tok[1], w);
    } else if (head == "facility") {
      if (tok.size() != 2) fail(lineno, "expected 'facility <rows>'");
      if (have_facility) fail(lineno, "duplicate facility section");
      have_facility = true;
      rows_left = int(parse_int(tok[1], lineno, "row count"));
      if (rows_left < 0) fail(lineno, "row count must be nonnegative");
    } else {
      fail(lineno, "unknown directive '" + head + "'");
    }
  }
  if (!have_k) fail(lineno, "missing 'K' header");
  if (rows_left > 0) fail(lineno, "facility section is short");
  if (have_facility) {
    if (have_cover || !f.weights.empty()) {
      fail(lineno, "facility section cannot be mixed with covers or weights");
    }
    f.kind = OracleKind::kFacility;
    f.covers.clear();
  } else {
    f.kind = f.weights.empty() ? OracleKind::kCoverage
                               : OracleKind::kWeightedCoverage;
  }
  return f;
}

InstanceFile parse_instance_text(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

InstanceFile read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  return parse_instance(in);
}

std::string serialize_instance(const InstanceFile& f) {
  std::ostringstream out;
  for (const auto& c : f.comments) out << '#' << c << '\n';
  out << "K " << f.K << '\n';
  for (size_t i = 0; i < f.items.size(); ++i) {
    out << "item " << f.items[i].id << ' ' << f.items[i].cost;
    if (f.kind != OracleKind::kFacility) {
      out << " cover";
      for (const auto& u : f.covers[i]) out << ' ' << u;
    }
    out << '\n';
  }
  for (const auto& [u, w] : f.weights) {
    out << "weight " << u << ' ' << format_double(w) << '\n';
  }
  if (f.kind == OracleKind::kFacility) {
    out << "facility " << f.sim.size() << '\n';
    for (const auto& row : f.sim) {
      for (size_t j = 0; j < row.size(); ++j) {
        if (j) out << ' ';
        out << format_double(row[j]);
      }
      out << '\n';
    }
  }
  return out.str();
}

void write_instance_file(const std::string& path, const InstanceFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write instance file: " + path);
  out << serialize_instance(file);
}

Instance build_instance(const InstanceFile& f) {
  std::shared_ptr<const ValueOracle> oracle;
  if (f.kind == OracleKind::kFacility) {
    oracle = std::make_shared<FacilityLocationOracle>(f.sim);
  } else {
    std::map<std::string, int> universe;
    auto label = [&](const std::string& u) {
      auto it = universe.find(u);
      if (it != universe.end()) return it->second;
      int id = int(universe.size());
      universe.emplace(u, id);
      return id;
    };
    std::vector<std::vector<int>> covers;
    for (const auto& c : f.covers) {
      std::vector<int> row;
      for (const auto& u : c) row.push_back(label(u));
      covers.push_back(std::move(row));
    }
    if (f.kind == OracleKind::kCoverage) {
      oracle = std::make_shared<CoverageOracle>(covers, int(universe.size()));
    } else {
      for (const auto& [u, w] : f.weights) label(u);
      std::vector<double> weights(universe.size(), 1.0);
      for (const auto& [u, w] : f.weights) weights[size_t(universe.at(u))] = w;
      oracle = std::make_shared<WeightedCoverageOracle>(covers, weights);
    }
  }
  return Instance(f.items, f.K, std::move(oracle));
}

Instance load_instance(const std::string& path) {
  return build_instance(read_instance_file(path));
}

}  // namespace streamsub
