// Copyright 2026 The ratprog Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

#include "ratprog/configspace.hpp"

namespace ratprog {

struct HistoryEntry {
  LaunchConfig config;
  Rational predicted;
  std::uint64_t timestamp = 0;  // logical clock, not wall time

  friend bool operator==(const HistoryEntry&, const HistoryEntry&) = default;
};

/// Per-device memo of past selections keyed by data size. One writer at a
/// time; lookups may run concurrently with each other.
class HistoryCache {
 public:
  HistoryCache() = default;
  HistoryCache(const HistoryCache& other);
  HistoryCache& operator=(const HistoryCache& other);

  void record(std::int64_t n, const LaunchConfig& config, const Rational& predicted);
  std::optional<HistoryEntry> lookup(std::int64_t n) const;
  std::size_t size() const;
  std::map<std::int64_t, HistoryEntry> entries() const;

  /// JSON document. Equal caches serialize to identical bytes.
  std::string persist() const;
  /// Throws ParseError on a malformed document.
  static HistoryCache load(std::string_view text);

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::int64_t, HistoryEntry> entries_;
  std::uint64_t clock_ = 0;
};

}  // namespace ratprog
