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

#include "eventscope/timeseries.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <thread>

#include "eventscope/csv.hpp"
#include "eventscope/error.hpp"
#include "eventscope/text.hpp"

namespace eventscope {
namespace {

// Upper bound on the number of buckets a single series may hold.
constexpr std::int64_t kMaxBuckets = 50'000'000;

void require_hourly(const TimeSeries& ts) {
  if (ts.bucket_width != kHourSeconds) {
    throw InputError("operation requires an hourly series (bucket_width 3600)");
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::int64_t TimeSeries::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

std::vector<double> TimeSeries::values() const {
  return {counts.begin(), counts.end()};
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
  return a - floor_div(a, b) * b;
}

TimeSeries bucketize_timestamps(std::span<const std::int64_t> timestamps,
                                std::int64_t bucket_width,
                                std::int64_t tz_offset, unsigned threads) {
  if (timestamps.empty()) throw InputError("cannot bucketize zero records");
  if (bucket_width <= 0) throw InputError("bucket_width must be positive");

  const auto [lo, hi] = std::minmax_element(timestamps.begin(), timestamps.end());
  const std::int64_t first = floor_div(*lo + tz_offset, bucket_width);
  const std::int64_t last = floor_div(*hi + tz_offset, bucket_width);
  if (last - first + 1 > kMaxBuckets) {
    throw InputError("time span needs more than " +
                     std::to_string(kMaxBuckets) + " buckets");
  }
  const auto n = static_cast<std::size_t>(last - first + 1);

  TimeSeries ts;
  ts.bucket_width = bucket_width;
  ts.tz_offset = tz_offset;
  ts.origin = first * bucket_width - tz_offset;

  const std::size_t workers = std::max<std::size_t>(
      1, std::min<std::size_t>(threads, timestamps.size()));
  std::vector<std::vector<std::int64_t>> partial(workers);
  auto work = [&](std::size_t w) {
    auto& counts = partial[w];
    counts.assign(n, 0);
    const std::size_t begin = timestamps.size() * w / workers;
    const std::size_t end = timestamps.size() * (w + 1) / workers;
    for (std::size_t i = begin; i < end; ++i) {
      ++counts[static_cast<std::size_t>(
          floor_div(timestamps[i] + tz_offset, bucket_width) - first)];
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  ts.counts = std::move(partial[0]);
  for (std::size_t w = 1; w < workers; ++w) {
    for (std::size_t i = 0; i < n; ++i) ts.counts[i] += partial[w][i];
  }
  return ts;
}

TimeSeries bucketize(std::span<const PostRecord> records,
                     std::int64_t bucket_width, std::int64_t tz_offset,
                     unsigned threads) {
  std::vector<std::int64_t> stamps;
  stamps.reserve(records.size());
  for (const auto& r : records) stamps.push_back(r.timestamp);
  return bucketize_timestamps(stamps, bucket_width, tz_offset, threads);
}

TimeSeries rebucket(const TimeSeries& ts, std::int64_t new_width) {
  if (new_width <= 0 || new_width % ts.bucket_width != 0) {
    throw InputError("new bucket width must be a positive multiple of " +
                     std::to_string(ts.bucket_width));
  }
  if (ts.counts.empty()) throw InputError("cannot rebucket an empty series");
  const std::int64_t local0 = ts.origin + ts.tz_offset;
  const std::int64_t first = floor_div(local0, new_width);
  const std::int64_t last = floor_div(
      local0 + static_cast<std::int64_t>(ts.size() - 1) * ts.bucket_width,
      new_width);
  TimeSeries out;
  out.bucket_width = new_width;
  out.tz_offset = ts.tz_offset;
  out.origin = first * new_width - ts.tz_offset;
  out.counts.assign(static_cast<std::size_t>(last - first + 1), 0);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const std::int64_t local =
        local0 + static_cast<std::int64_t>(i) * ts.bucket_width;
    out.counts[static_cast<std::size_t>(floor_div(local, new_width) - first)] +=
        ts.counts[i];
  }
  return out;
}

void write_series_csv(std::ostream& out, const TimeSeries& ts) {
  out << "bucket_start_utc,count\n";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    out << ts.bucket_start(i) << ',' << ts.counts[i] << '\n';
  }
}

SeriesTable read_series_csv(std::istream& in) {
  SeriesTable table;
  std::string raw;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = csv::chomp(raw);
    if (text::trim(line).empty()) continue;
    const auto fields = csv::split_line(line);
    if (!fields || fields->size() != 2) {
      throw InputError("line " + std::to_string(line_no) +
                       ": expected two CSV fields");
    }
    if (!header) {
      if (text::trim((*fields)[0]) != "bucket_start_utc" ||
          text::trim((*fields)[1]) != "count") {
        throw InputError("series CSV must start with 'bucket_start_utc,count'");
      }
      header = true;
      continue;
    }
    try {
      std::size_t pos = 0;
      const std::string a(text::trim((*fields)[0]));
      const std::string b(text::trim((*fields)[1]));
      const long long start = std::stoll(a, &pos);
      if (pos != a.size()) throw std::invalid_argument(a);
      const double value = std::stod(b, &pos);
      if (pos != b.size() || !(value >= 0.0)) throw std::invalid_argument(b);
      table.starts.push_back(start);
      table.values.push_back(value);
    } catch (const std::logic_error&) {
      throw InputError("line " + std::to_string(line_no) + ": bad series row");
    }
  }
  for (std::size_t i = 2; i < table.starts.size(); ++i) {
    if (table.starts[i] - table.starts[i - 1] !=
        table.starts[1] - table.starts[0]) {
      throw InputError("series rows are not evenly spaced");
    }
  }
  if (table.starts.size() >= 2 && table.starts[1] <= table.starts[0]) {
    throw InputError("series rows must be increasing in time");
  }
  return table;
}

std::size_t day_count(const TimeSeries& ts) {
  require_hourly(ts);
  if (ts.counts.empty()) return 0;
  const std::int64_t local0 = ts.origin + ts.tz_offset;
  const std::int64_t local_last =
      local0 + static_cast<std::int64_t>(ts.size() - 1) * kHourSeconds;
  return static_cast<std::size_t>(floor_div(local_last, kDaySeconds) -
                                  floor_div(local0, kDaySeconds) + 1);
}

Overlay daywise_overlay(const TimeSeries& ts, std::span<const std::size_t> days) {
  require_hourly(ts);
  if (days.empty()) throw InputError("no days selected for the overlay");
  const std::size_t n_days = day_count(ts);
  const std::int64_t local0 = ts.origin + ts.tz_offset;
  const std::int64_t first_day = floor_div(local0, kDaySeconds);

  Overlay overlay;
  overlay.days.assign(days.begin(), days.end());
  overlay.matrix.assign(24, std::vector<std::int64_t>(days.size(), 0));
  for (std::size_t col = 0; col < days.size(); ++col) {
    if (days[col] >= n_days) {
      throw InputError("day index " + std::to_string(days[col]) +
                       " out of range (series has " + std::to_string(n_days) +
                       " days)");
    }
    const std::int64_t day_start =
        (first_day + static_cast<std::int64_t>(days[col])) * kDaySeconds;
    for (std::int64_t h = 0; h < 24; ++h) {
      const std::int64_t idx = (day_start + h * kHourSeconds - local0) / kHourSeconds;
      if (idx >= 0 && idx < static_cast<std::int64_t>(ts.size())) {
        overlay.matrix[static_cast<std::size_t>(h)][col] =
            ts.counts[static_cast<std::size_t>(idx)];
      }
    }
  }
  for (std::size_t h = 0; h < 24; ++h) {
    const auto& row = overlay.matrix[h];
    overlay.profile[h] =
        static_cast<double>(std::accumulate(row.begin(), row.end(), std::int64_t{0})) /
        static_cast<double>(days.size());
  }
  return overlay;
}

void write_overlay_csv(std::ostream& out, const Overlay& overlay) {
  out << "hour";
  for (std::size_t d : overlay.days) out << ",day_" << d;
  out << ",mean\n";
  for (std::size_t h = 0; h < 24; ++h) {
    out << h;
    for (std::int64_t c : overlay.matrix[h]) out << ',' << c;
    out << ',' << format_double(overlay.profile[h]) << '\n';
  }
}

double subevent_share(const TimeSeries& event, const TimeSeries& sub,
                      std::optional<BucketRange> window) {
  if (event.counts.empty()) throw InputError("event series is empty");
  if (event.bucket_width != sub.bucket_width) {
    throw InputError("event and sub-event series have different bucket widths");
  }
  const std::int64_t shift = sub.origin - event.origin;
  if (floor_mod(shift, event.bucket_width) != 0) {
    throw InputError("sub-event series is not on the event bucket grid");
  }
  const BucketRange range = window.value_or(BucketRange{0, event.size() - 1});
  if (range.first > range.last || range.last >= event.size()) {
    throw InputError("bucket window out of range");
  }
  const std::int64_t offset = shift / event.bucket_width;
  std::int64_t event_sum = 0;
  std::int64_t sub_sum = 0;
  for (std::size_t i = range.first; i <= range.last; ++i) {
    event_sum += event.counts[i];
    const std::int64_t j = static_cast<std::int64_t>(i) - offset;
    if (j >= 0 && j < static_cast<std::int64_t>(sub.size())) {
      sub_sum += sub.counts[static_cast<std::size_t>(j)];
    }
  }
  if (event_sum == 0) throw AnalysisError("no event activity in the window");
  return static_cast<double>(sub_sum) / static_cast<double>(event_sum);
}

UserCounts per_user_counts(std::span<const PostRecord> records) {
  UserCounts out;
  for (const auto& r : records) ++out.by_user[r.user_id];
  for (const auto& [user, count] : out.by_user) ++out.distribution[count];
  return out;
}

void write_distribution_csv(std::ostream& out,
                            const std::map<std::int64_t, std::int64_t>& dist) {
  out << "posts_per_user,users\n";
  for (const auto& [posts, users] : dist) out << posts << ',' << users << '\n';
}

}  // namespace eventscope
