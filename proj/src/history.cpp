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

#include "ratprog/history.hpp"

#include <mutex>

#include <nlohmann/json.hpp>

#include "ratprog/errors.hpp"
#include "ratprog/ir.hpp"

namespace ratprog {

HistoryCache::HistoryCache(const HistoryCache& other) {
  std::shared_lock lock(other.mutex_);
  entries_ = other.entries_;
  clock_ = other.clock_;
}

HistoryCache& HistoryCache::operator=(const HistoryCache& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mutex_);
  std::shared_lock other_lock(other.mutex_);
  entries_ = other.entries_;
  clock_ = other.clock_;
  return *this;
}

void HistoryCache::record(std::int64_t n, const LaunchConfig& config, const Rational& predicted) {
  std::unique_lock lock(mutex_);
  entries_[n] = HistoryEntry{config, predicted, ++clock_};
}

std::optional<HistoryEntry> HistoryCache::lookup(std::int64_t n) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(n);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::size_t HistoryCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

std::map<std::int64_t, HistoryEntry> HistoryCache::entries() const {
  std::shared_lock lock(mutex_);
  return entries_;
}

std::string HistoryCache::persist() const {
  std::shared_lock lock(mutex_);
  nlohmann::json entries = nlohmann::json::object();
  for (const auto& [n, e] : entries_) {
    const auto& b = e.config.block;
    const auto& g = e.config.grid;
    entries[std::to_string(n)] = {{"bx", b.bx},
                                  {"by", b.by},
                                  {"bz", b.bz},
                                  {"gx", g.gx},
                                  {"gy", g.gy},
                                  {"gz", g.gz},
                                  {"predicted", to_string(e.predicted)},
                                  {"timestamp", e.timestamp}};
  }
  nlohmann::json doc = {{"version", "ratprog-history/1"}, {"clock", clock_}, {"entries", entries}};
  return doc.dump(2) + "\n";
}

HistoryCache HistoryCache::load(std::string_view text) {
  auto corrupt = [](const std::string& msg) { return ParseError("corrupt history cache: " + msg); };
  nlohmann::json doc;
  try {
    doc = parse_json(text);
  } catch (const ParseError& e) {
    throw corrupt(e.what());
  }
  if (!doc.is_object() || doc.value("version", "") != "ratprog-history/1") throw corrupt("bad or missing version");
  if (!doc.contains("entries") || !doc["entries"].is_object()) throw corrupt("missing 'entries' object");
  HistoryCache cache;
  try {
    cache.clock_ = doc.at("clock").get<std::uint64_t>();
    for (const auto& [key, e] : doc["entries"].items()) {
      std::size_t used = 0;
      std::int64_t n = std::stoll(key, &used);
      if (used != key.size() || n < 1) throw corrupt("bad data size key '" + key + "'");
      HistoryEntry entry;
      entry.config.block = {e.at("bx").get<std::int64_t>(), e.at("by").get<std::int64_t>(),
                            e.at("bz").get<std::int64_t>()};
      entry.config.grid = {e.at("gx").get<std::int64_t>(), e.at("gy").get<std::int64_t>(),
                           e.at("gz").get<std::int64_t>()};
      entry.predicted = parse_rational(e.at("predicted").get<std::string>());
      entry.timestamp = e.at("timestamp").get<std::uint64_t>();
      cache.entries_[n] = entry;
    }
  } catch (const nlohmann::json::exception& e) {
    throw corrupt(e.what());
  } catch (const std::invalid_argument&) {
    throw corrupt("non-numeric data size key");
  } catch (const std::out_of_range&) {
    throw corrupt("data size key out of range");
  }
  return cache;
}

}  // namespace ratprog
