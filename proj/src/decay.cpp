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

#include "eventscope/decay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "eventscope/error.hpp"

namespace eventscope::decay {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

class Segmenter {
 public:
  explicit Segmenter(const SegmentOptions& options) : options_(options) {}

  void run(std::span<const Point> pts, std::int64_t start, std::int64_t end,
           unsigned depth) {
    std::vector<Point> local(pts.begin(), pts.end());
    for (auto& p : local) p.t = p.t - start + 1;
    const LogFit fit = fit_log(local);
    if (fit.r2 > options_.r2_gate) {
      emit(pts, start, end, depth, fit, false);
      return;
    }
    const std::int64_t mid = start + (end - start) / 2;
    const auto split = std::partition_point(
        pts.begin(), pts.end(), [mid](const Point& p) { return p.t <= mid; });
    const auto left = static_cast<std::size_t>(split - pts.begin());
    const std::size_t right = pts.size() - left;
    if (pts.size() < options_.min_len || left < 3 || right < 3) {
      emit(pts, start, end, depth, fit, true);
      return;
    }
    run(pts.first(left), start, mid, depth + 1);
    run(pts.last(right), mid + 1, end, depth + 1);
  }

  std::vector<RegionFit> take() { return std::move(regions_); }

 private:
  void emit(std::span<const Point> pts, std::int64_t start, std::int64_t end,
            unsigned depth, const LogFit& fit, bool flagged) {
    RegionFit r;
    r.start_idx = start;
    r.end_idx = end;
    r.alpha = fit.alpha;
    r.beta = fit.beta;
    r.r2 = fit.r2;
    r.contribution = contribution(fit.alpha, fit.beta);
    r.points = pts.size();
    r.depth = depth;
    r.flagged = flagged;
    switch (options_.weighting) {
      case Weighting::length:
        r.weight = static_cast<double>(r.length());
        break;
      case Weighting::points:
        r.weight = static_cast<double>(pts.size());
        break;
      case Weighting::mass:
        r.weight = 0.0;
        for (const auto& p : pts) r.weight += p.value;
        break;
    }
    regions_.push_back(r);
  }

  SegmentOptions options_;
  std::vector<RegionFit> regions_;
};

}  // namespace

Peak find_peak(std::span<const double> values) {
  if (values.empty()) throw InputError("cannot find the peak of an empty series");
  const auto it = std::max_element(values.begin(), values.end());
  return {static_cast<std::size_t>(it - values.begin()), *it};
}

Peak find_peak(const TimeSeries& ts) { return find_peak(ts.values()); }

std::vector<Point> extract_decay_window(std::span<const double> values,
                                        std::size_t peak_index,
                                        double threshold_frac,
                                        std::size_t sustain_k) {
  if (peak_index >= values.size()) throw InputError("peak index out of range");
  if (!(threshold_frac > 0.0 && threshold_frac < 1.0)) {
    throw InputError("threshold_frac must lie in (0, 1)");
  }
  if (sustain_k < 1) throw InputError("sustain_k must be at least 1");

  const double cutoff = threshold_frac * values[peak_index];
  std::size_t end = values.size();
  std::size_t run = 0;
  for (std::size_t j = peak_index + 1; j < values.size(); ++j) {
    run = values[j] < cutoff ? run + 1 : 0;
    if (run == sustain_k) {
      end = j + 1 - sustain_k;
      break;
    }
  }
  std::vector<Point> window;
  for (std::size_t j = peak_index + 1; j < end; ++j) {
    window.push_back({static_cast<std::int64_t>(j - peak_index), values[j]});
  }
  if (window.size() < 3) throw AnalysisError("insufficient decay data");
  return window;
}

SpikeRemoval remove_spikes(std::span<const Point> window, double ratio_theta,
                           std::size_t max_width) {
  const std::size_t n = window.size();
  std::vector<bool> spike(n, false);
  std::size_t i = 1;
  while (i + 1 < n) {
    std::size_t best = 0;
    double run_min = std::numeric_limits<double>::infinity();
    for (std::size_t w = 1; w <= max_width && i + w < n; ++w) {
      run_min = std::min(run_min, window[i + w - 1].value);
      const double bound =
          ratio_theta * std::max(window[i - 1].value, window[i + w].value);
      if (run_min > bound) best = w;
    }
    if (best > 0) {
      for (std::size_t k = i; k < i + best; ++k) spike[k] = true;
      i += best;
    } else {
      ++i;
    }
  }
  SpikeRemoval out;
  for (std::size_t k = 0; k < n; ++k) {
    if (spike[k]) {
      out.spike_indices.push_back(window[k].t);
    } else {
      out.cleaned.push_back(window[k]);
    }
  }
  return out;
}

LogFit fit_log(std::span<const Point> points) {
  if (points.size() < 3) {
    throw AnalysisError("log fit needs at least 3 points, got " +
                        std::to_string(points.size()));
  }
  const auto n = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  double vmin = points.front().value, vmax = points.front().value;
  bool distinct_t = false;
  for (const auto& p : points) {
    if (p.t < 1) throw InputError("log fit needs t >= 1");
    distinct_t = distinct_t || p.t != points.front().t;
    mx += std::log(static_cast<double>(p.t));
    my += p.value;
    vmin = std::min(vmin, p.value);
    vmax = std::max(vmax, p.value);
  }
  if (!distinct_t) throw AnalysisError("log fit needs two distinct t values");
  mx /= n;
  my /= n;
  if (vmin == vmax) return {0.0, vmin, 1.0};

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& p : points) {
    const double dx = std::log(static_cast<double>(p.t)) - mx;
    const double dy = p.value - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  LogFit fit;
  fit.alpha = sxy / sxx;
  fit.beta = my - fit.alpha * mx;
  double ss_res = 0.0;
  for (const auto& p : points) {
    const double e =
        p.value - (fit.alpha * std::log(static_cast<double>(p.t)) + fit.beta);
    ss_res += e * e;
  }
  fit.r2 = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  return fit;
}

Weighting parse_weighting(std::string_view name) {
  if (name == "length") return Weighting::length;
  if (name == "points") return Weighting::points;
  if (name == "mass") return Weighting::mass;
  throw InputError("unknown weighting '" + std::string(name) +
                   "' (expected length, points or mass)");
}

std::string_view to_string(Weighting w) {
  switch (w) {
    case Weighting::length: return "length";
    case Weighting::points: return "points";
    case Weighting::mass: return "mass";
  }
  return "length";
}

double contribution(double alpha, double beta) {
  if (!(beta > 0.0)) return 0.0;
  const double d = -alpha / beta;
  return d == 0.0 ? 0.0 : d;
}

std::vector<RegionFit> segment(std::span<const Point> window,
                               const SegmentOptions& options) {
  if (window.empty()) throw InputError("cannot segment an empty window");
  Segmenter s(options);
  s.run(window, window.front().t, window.back().t, 0);
  return s.take();
}

MergeResult merge_growth_pairs(std::vector<RegionFit> regions) {
  MergeResult out;
  auto opposite = [](double a, double b) {
    return (a > 0.0 && b < 0.0) || (a < 0.0 && b > 0.0);
  };
  for (;;) {
    std::size_t i = 0;
    while (i + 1 < regions.size() &&
           !opposite(regions[i].contribution, regions[i + 1].contribution)) {
      ++i;
    }
    if (i + 1 >= regions.size()) break;
    const RegionFit& a = regions[i];
    const RegionFit& b = regions[i + 1];
    RegionFit m;
    m.start_idx = a.start_idx;
    m.end_idx = b.end_idx;
    m.alpha = kNaN;
    m.beta = kNaN;
    m.r2 = std::min(a.r2, b.r2);
    m.weight = a.weight + b.weight;
    m.contribution = m.weight > 0.0
                         ? (a.weight * a.contribution + b.weight * b.contribution) /
                               m.weight
                         : 0.0;
    m.points = a.points + b.points;
    m.depth = std::min(a.depth, b.depth);
    m.flagged = a.flagged || b.flagged;
    regions[i] = m;
    regions.erase(regions.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    out.merged_pairs.emplace_back(i, i + 1);
  }
  out.regions = std::move(regions);
  return out;
}

double net_decay_factor(std::span<const RegionFit> regions) {
  if (regions.empty()) throw InputError("net decay factor needs a region");
  double num = 0.0, den = 0.0;
  for (const auto& r : regions) {
    num += r.weight * r.contribution;
    den += r.weight;
  }
  return den > 0.0 ? num / den : 0.0;
}

void Config::validate() const {
  auto fail = [](const std::string& what) { throw InputError(what); };
  if (!(threshold_frac > 0.0 && threshold_frac < 1.0)) {
    fail("threshold_frac must lie in (0, 1)");
  }
  if (sustain_k < 1) fail("sustain_k must be at least 1");
  if (!(ratio_theta >= 1.0) || !std::isfinite(ratio_theta)) {
    fail("ratio_theta must be a finite value >= 1");
  }
  if (max_width < 1) fail("max_width must be at least 1");
  if (min_len < 3) fail("min_len must be at least 3");
  if (!(r2_gate > 0.0 && r2_gate < 1.0)) fail("r2_gate must lie in (0, 1)");
}

Report analyze_decay(std::span<const double> values, const Config& config) {
  config.validate();
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InputError("activity values must be finite and non-negative");
    }
  }
  Report report;
  report.peak = find_peak(values);
  const auto window = extract_decay_window(values, report.peak.index,
                                           config.threshold_frac,
                                           config.sustain_k);
  report.window_end_idx = window.back().t;
  auto spikes = remove_spikes(window, config.ratio_theta, config.max_width);
  report.spike_indices = std::move(spikes.spike_indices);
  report.segments = segment(
      spikes.cleaned, {config.r2_gate, config.min_len, config.weighting});
  auto merged = merge_growth_pairs(report.segments);
  report.regions = std::move(merged.regions);
  report.merged_pairs = std::move(merged.merged_pairs);
  report.net_factor = net_decay_factor(report.regions);
  return report;
}

Report analyze_decay(const TimeSeries& ts, const Config& config) {
  const auto values = ts.values();
  return analyze_decay(values, config);
}

nlohmann::ordered_json to_json(const RegionFit& r) {
  nlohmann::ordered_json j;
  j["start_idx"] = r.start_idx;
  j["end_idx"] = r.end_idx;
  j["alpha"] = r.alpha;
  j["beta"] = r.beta;
  j["r2"] = r.r2;
  j["contribution"] = r.contribution;
  j["weight"] = r.weight;
  j["flagged"] = r.flagged;
  return j;
}

nlohmann::ordered_json to_json(const Report& report) {
  nlohmann::ordered_json j;
  j["peak_idx"] = report.peak.index;
  j["peak_value"] = report.peak.value;
  j["window_end_idx"] = report.window_end_idx;
  j["spike_indices"] = report.spike_indices;
  auto regions = nlohmann::ordered_json::array();
  for (const auto& r : report.regions) regions.push_back(to_json(r));
  j["regions"] = std::move(regions);
  auto pairs = nlohmann::ordered_json::array();
  for (const auto& [a, b] : report.merged_pairs) pairs.push_back({a, b});
  j["merged_pairs"] = std::move(pairs);
  j["net_factor"] = report.net_factor;
  auto segments = nlohmann::ordered_json::array();
  for (const auto& r : report.segments) segments.push_back(to_json(r));
  j["segments"] = std::move(segments);
  return j;
}

std::string summary(const Report& report) {
  std::string s = "net_decay_factor: " + fmt("%.4f", report.net_factor) + "\n";
  s += "peak: index " + std::to_string(report.peak.index) + ", value " +
       fmt("%g", report.peak.value) + "\n";
  s += "window: t = 1.." + std::to_string(report.window_end_idx) + "\n";
  s += "spikes removed: " + std::to_string(report.spike_indices.size());
  if (!report.spike_indices.empty()) {
    s += " (t =";
    for (auto t : report.spike_indices) s += " " + std::to_string(t);
    s += ")";
  }
  s += "\nregions:\n";
  char line[160];
  std::snprintf(line, sizeof line, "  %6s %6s %8s %10s %10s %7s %12s\n",
                "start", "end", "weight", "alpha", "beta", "r2", "contribution");
  s += line;
  for (const auto& r : report.regions) {
    std::snprintf(line, sizeof line,
                  "  %6lld %6lld %8.2f %10.4f %10.4f %7.4f %12.4f%s\n",
                  static_cast<long long>(r.start_idx),
                  static_cast<long long>(r.end_idx), r.weight, r.alpha, r.beta,
                  r.r2, r.contribution, r.flagged ? "  (flagged)" : "");
    s += line;
  }
  if (!report.merged_pairs.empty()) {
    s += "decay/growth merges: " + std::to_string(report.merged_pairs.size()) +
         "\n";
  }
  return s;
}

}  // namespace eventscope::decay
