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

#ifndef STREAMSUB_STREAM_HPP_
#define STREAMSUB_STREAM_HPP_

#include <chrono>
#include <cstdint>
#include <map>

#include "streamsub/core.hpp"

namespace streamsub {

// Replays the items of an instance in their fixed order and meters passes
// and the number of item ids held by the algorithm.
class StreamSession {
 public:
  explicit StreamSession(const Instance& inst);
  StreamSession(const StreamSession&) = delete;
  StreamSession& operator=(const StreamSession&) = delete;

  class Pass;

  // Throws UsageError while another pass of this session is open.
  Pass open_pass();

  // Stored ids are reference counted so that sub-algorithms sharing a pass
  // may each hold the same item.
  void retain(Index e);
  void retain(const IndexSet& s);
  void release(Index e);
  void release(const IndexSet& s);

  const Instance& instance() const { return *inst_; }
  int64_t passes() const { return passes_; }
  int64_t peak_stored() const { return peak_; }
  int64_t stored_now() const { return stored_; }
  bool in_pass() const { return open_; }

  // Passes and peak of this session plus the oracle calls and wall time
  // since construction.
  ResourceReport report() const;

 private:
  friend class Pass;
  void touch() {
    if (stored_ + 1 > peak_) peak_ = stored_ + 1;
  }

  const Instance* inst_;
  int64_t passes_ = 0;
  int64_t peak_ = 0;
  int64_t stored_ = 0;
  bool open_ = false;
  std::map<Index, int> held_;
  uint64_t calls_at_start_;
  std::chrono::steady_clock::time_point start_;
};

// One in-order traversal. Dereferencing an iterator counts the item under
// consideration toward the peak.
class StreamSession::Pass {
 public:
  class iterator {
   public:
    using value_type = Index;
    iterator(StreamSession* s, Index i) : s_(s), i_(i) {}
    Index operator*() const {
      s_->touch();
      return i_;
    }
    iterator& operator++() {
      ++i_;
      return *this;
    }
    bool operator!=(const iterator& o) const { return i_ != o.i_; }
    bool operator==(const iterator& o) const { return i_ == o.i_; }

   private:
    StreamSession* s_;
    Index i_;
  };

  Pass(const Pass&) = delete;
  Pass& operator=(const Pass&) = delete;
  Pass(Pass&& o) noexcept : s_(o.s_) { o.s_ = nullptr; }
  ~Pass() {
    if (s_) s_->open_ = false;
  }

  iterator begin() { return iterator(s_, 0); }
  iterator end() { return iterator(s_, s_->inst_->size()); }

 private:
  friend class StreamSession;
  explicit Pass(StreamSession* s) : s_(s) {}
  StreamSession* s_;
};

}  // namespace streamsub

#endif  // STREAMSUB_STREAM_HPP_
