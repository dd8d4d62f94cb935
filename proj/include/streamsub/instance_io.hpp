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

// Line-oriented instance files.
//
//   # free-form comment (kept verbatim)
//   K 10
//   item a 2 cover u1 u2 u3
//   item b 1 cover u3 u4
//   weight u1 2.5
//
// or, for facility location, items without covers followed by a dense
// matrix with one row per point and one column per item:
//
//   K 3
//   item a 1
//   item b 2
//   facility 2
//   0.5 0.25
//   0.125 0.75

#ifndef STREAMSUB_INSTANCE_IO_HPP_
#define STREAMSUB_INSTANCE_IO_HPP_

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "streamsub/core.hpp"

namespace streamsub {

enum class OracleKind { kCoverage, kWeightedCoverage, kFacility };

const char* oracle_kind_name(OracleKind kind);

struct InstanceFile {
  int64_t K = 0;
  std::vector<std::string> comments;
  std::vector<Item> items;
  OracleKind kind = OracleKind::kCoverage;
  std::vector<std::vector<std::string>> covers;
  std::vector<std::pair<std::string, double>> weights;
  std::vector<std::vector<double>> sim;

  bool operator==(const InstanceFile&) const = default;
};

InstanceFile parse_instance(std::istream& in);
InstanceFile parse_instance_text(const std::string& text);
InstanceFile read_instance_file(const std::string& path);
std::string serialize_instance(const InstanceFile& file);
void write_instance_file(const std::string& path, const InstanceFile& file);

Instance build_instance(const InstanceFile& file);
Instance load_instance(const std::string& path);

// Shortest text that parses back to exactly the same double.
std::string format_double(double x);

}  // namespace streamsub

#endif  // STREAMSUB_INSTANCE_IO_HPP_
