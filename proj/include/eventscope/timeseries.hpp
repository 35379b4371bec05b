// Copyright 2026 The eventscope Authors.
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

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eventscope/ingest.hpp"

namespace eventscope {

inline constexpr std::int64_t kHourSeconds = 3600;
inline constexpr std::int64_t kDaySeconds = 86400;

/// Bucketed activity counts. `origin` is the UTC start of bucket 0 and is
/// aligned so that (origin + tz_offset) is a multiple of bucket_width.
struct TimeSeries {
  std::int64_t origin = 0;
  std::int64_t bucket_width = kHourSeconds;
  std::int64_t tz_offset = 0;
  std::vector<std::int64_t> counts;

  std::size_t size() const { return counts.size(); }
  std::int64_t bucket_start(std::size_t i) const {
    return origin + static_cast<std::int64_t>(i) * bucket_width;
  }
  std::int64_t total() const;
  std::vector<double> values() const;
};

// Floor division and modulo for possibly negative numerators.
std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t floor_mod(std::int64_t a, std::int64_t b);

TimeSeries bucketize(std::span<const PostRecord> records,
                     std::int64_t bucket_width = kHourSeconds,
                     std::int64_t tz_offset = 0, unsigned threads = 1);

TimeSeries bucketize_timestamps(std::span<const std::int64_t> timestamps,
                                std::int64_t bucket_width = kHourSeconds,
                                std::int64_t tz_offset = 0,
                                unsigned threads = 1);

/// Coarsens to `new_width`, which must be a multiple of the current width.
TimeSeries rebucket(const TimeSeries& ts, std::int64_t new_width);

void write_series_csv(std::ostream& out, const TimeSeries& ts);

/// Reads "bucket_start_utc,count" rows. Counts may be fractional; rows must
/// be evenly spaced. Returns the bucket starts and the values.
struct SeriesTable {
  std::vector<std::int64_t> starts;
  std::vector<double> values;
};
SeriesTable read_series_csv(std::istream& in);

struct Overlay {
  std::vector<std::size_t> days;
  std::vector<std::vector<std::int64_t>> matrix;  // [hour][column]
  std::array<double, 24> profile{};               // mean over columns
};

/// Number of local calendar days touched by an hourly series.
std::size_t day_count(const TimeSeries& ts);

Overlay daywise_overlay(const TimeSeries& ts, std::span<const std::size_t> days);
void write_overlay_csv(std::ostream& out, const Overlay& overlay);

struct BucketRange {
  std::size_t first = 0;
  std::size_t last = 0;  // inclusive
};

/// Fraction of event activity in `window` (indices into `event`) attributed
/// to the sub-event series. The whole event series is used when no window is
/// given.
double subevent_share(const TimeSeries& event, const TimeSeries& sub,
                      std::optional<BucketRange> window = std::nullopt);

struct UserCounts {
  std::map<std::string, std::int64_t> by_user;
  std::map<std::int64_t, std::int64_t> distribution;  // posts -> users
};

UserCounts per_user_counts(std::span<const PostRecord> records);
void write_distribution_csv(std::ostream& out,
                            const std::map<std::int64_t, std::int64_t>& dist);

}  // namespace eventscope
