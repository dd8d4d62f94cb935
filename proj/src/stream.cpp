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

#include "streamsub/stream.hpp"

namespace streamsub {

StreamSession::StreamSession(const Instance& inst)
    : inst_(&inst),
      calls_at_start_(inst.oracle().calls()),
      start_(std::chrono::steady_clock::now()) {}

StreamSession::Pass StreamSession::open_pass() {
  if (open_) throw UsageError("a pass is already open on this session");
  open_ = true;
  ++passes_;
  return Pass(this);
}

void StreamSession::retain(Index e) {
  if (e < 0 || e >= inst_->size()) throw UsageError("retain: unknown item");
  ++held_[e];
  ++stored_;
  if (stored_ > peak_) peak_ = stored_;
}

void StreamSession::retain(const IndexSet& s) {
  for (Index e : s) retain(e);
}

void StreamSession::release(Index e) {
  auto it = held_.find(e);
  if (it == held_.end()) throw UsageError("release: item is not retained");
  if (--it->second == 0) held_.erase(it);
  --stored_;
}

void StreamSession::release(const IndexSet& s) {
  for (Index e : s) release(e);
}

ResourceReport StreamSession::report() const {
  ResourceReport r;
  r.passes = passes_;
  r.oracle_calls = inst_->oracle().calls() - calls_at_start_;
  r.peak_stored = peak_;
  r.wall_time_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start_)
                       .count();
  return r;
}

}  // namespace streamsub
