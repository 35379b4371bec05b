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

// Net decay factor of an activity series.
//
// The post-peak activity χ(t), t = 1, 2, ... hours after the peak, is modelled
// piecewise by χ = α ln t + β. Each fitted region contributes d = −α/β
// (positive for decay, negative for growth). The pipeline is
//
//   peak -> sustained-threshold window -> spike removal -> recursive
//   midpoint segmentation until R² > gate -> decay/growth pair merging ->
//   weighted mean of contributions.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "eventscope/timeseries.hpp"

namespace eventscope::decay {

struct Point {
  std::int64_t t = 0;  // hours after the peak, t >= 1
  double value = 0.0;
};

struct Peak {
  std::size_t index = 0;
  double value = 0.0;
};

/// Index of the maximum; ties go to the earliest index.
Peak find_peak(std::span<const double> values);
Peak find_peak(const TimeSeries& ts);

/// Points t = 1..T after `peak_index`. T stops just before the first run of
/// `sustain_k` consecutive buckets below threshold_frac × peak value; without
/// such a run the window reaches the end of the series. Throws AnalysisError
/// ("insufficient decay data") below three points.
std::vector<Point> extract_decay_window(std::span<const double> values,
                                        std::size_t peak_index,
                                        double threshold_frac = 0.01,
                                        std::size_t sustain_k = 3);

struct SpikeRemoval {
  std::vector<Point> cleaned;
  std::vector<std::int64_t> spike_indices;  // t values removed
};

/// Deletes short surges: a run of at most `max_width` points is removed when
/// every point in it exceeds ratio_theta × max(left neighbour, right
/// neighbour). Surviving points keep their t.
SpikeRemoval remove_spikes(std::span<const Point> window,
                           double ratio_theta = 2.0,
                           std::size_t max_width = 3);

struct LogFit {
  double alpha = 0.0;
  double beta = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares of value on ln t. A constant series fits exactly
/// with alpha = 0 and r2 = 1.
LogFit fit_log(std::span<const Point> points);

enum class Weighting {
  length,  // buckets spanned by the region
  points,  // surviving (non-spike) points
  mass,    // summed activity of surviving points
};

Weighting parse_weighting(std::string_view name);
std::string_view to_string(Weighting w);

struct RegionFit {
  std::int64_t start_idx = 0;  // t of the first bucket, inclusive
  std::int64_t end_idx = 0;    // t of the last bucket, inclusive
  double alpha = 0.0;          // NaN for merged regions
  double beta = 0.0;           // NaN for merged regions
  double r2 = 0.0;
  double contribution = 0.0;   // −alpha/beta
  double weight = 0.0;
  std::size_t points = 0;
  unsigned depth = 0;          // recursion depth, 0 = whole window
  bool flagged = false;        // accepted without reaching the R² gate

  std::int64_t length() const { return end_idx - start_idx + 1; }
};

/// −alpha/beta, or 0 when beta <= 0.
double contribution(double alpha, double beta);

struct SegmentOptions {
  double r2_gate = 0.8;
  std::size_t min_len = 4;
  Weighting weighting = Weighting::length;
};

/// Recursive midpoint segmentation. Every region is fitted in its own local
/// time, t' = t − start_idx + 1.
std::vector<RegionFit> segment(std::span<const Point> window,
                               const SegmentOptions& options = {});

struct MergeResult {
  std::vector<RegionFit> regions;
  std::vector<std::pair<std::size_t, std::size_t>> merged_pairs;
};

/// Repeatedly fuses the leftmost adjacent pair with opposite-sign
/// contributions into one weighted region. Σw and Σw·d are conserved.
MergeResult merge_growth_pairs(std::vector<RegionFit> regions);

/// Σ w·d / Σ w. Returns 0 when every weight is zero.
double net_decay_factor(std::span<const RegionFit> regions);

struct Config {
  double threshold_frac = 0.01;
  std::size_t sustain_k = 3;
  double ratio_theta = 2.0;
  std::size_t max_width = 3;
  std::size_t min_len = 4;
  double r2_gate = 0.8;
  Weighting weighting = Weighting::length;

  /// Throws InputError on an out-of-range parameter.
  void validate() const;
};

struct Report {
  Peak peak;
  std::int64_t window_end_idx = 0;
  std::vector<std::int64_t> spike_indices;
  std::vector<RegionFit> segments;  // before merging
  std::vector<RegionFit> regions;   // after merging
  std::vector<std::pair<std::size_t, std::size_t>> merged_pairs;
  double net_factor = 0.0;
};

Report analyze_decay(std::span<const double> values, const Config& config = {});
Report analyze_decay(const TimeSeries& ts, const Config& config = {});

nlohmann::ordered_json to_json(const RegionFit& region);
nlohmann::ordered_json to_json(const Report& report);

/// Net factor (4 d.p.), region table and removed spikes.
std::string summary(const Report& report);

}  // namespace eventscope::decay
