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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eventscope/commands.hpp"
#include "eventscope/decay.hpp"
#include "eventscope/geo.hpp"
#include "eventscope/ingest.hpp"
#include "eventscope/stats.hpp"
#include "eventscope/timeseries.hpp"
#include "test_util.hpp"

namespace {

namespace fs = std::filesystem;
namespace dc = eventscope::decay;
using eventscope::testing::oracle_log_fit;
using eventscope::testing::slurp;
using eventscope::testing::TempDir;

const std::string kData = EVENTSCOPE_DATA_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      out_.pass = false;
      if (!out_.detail.empty()) out_.detail += "; ";
      out_.detail += what;
    }
  }
  void note(const std::string& s) {
    if (out_.pass) {
      if (!note_.empty()) note_ += ", ";
      note_ += s;
    }
  }
  Outcome result() const {
    Outcome o = out_;
    if (o.pass) o.detail = note_;
    return o;
  }

 private:
  Outcome out_;
  std::string note_;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Peak of 1000 followed by 100 - 20 ln t for t = 1..72.
std::vector<double> log_law_series() {
  std::vector<double> v = {1000};
  for (int t = 1; t <= 72; ++t) v.push_back(100 - 20 * std::log(t));
  return v;
}

// 100 - 20 ln t then 80 - 5 ln t, each on local t = 1..24, with 1% noise.
std::vector<double> two_law_series() {
  std::mt19937_64 rng(2013);
  std::normal_distribution<double> noise(0.0, 0.01);
  std::vector<double> v = {1000};
  for (int t = 1; t <= 24; ++t) v.push_back((100 - 20 * std::log(t)) * (1 + noise(rng)));
  for (int t = 1; t <= 24; ++t) v.push_back((80 - 5 * std::log(t)) * (1 + noise(rng)));
  return v;
}

Outcome exact_recovery() {
  Check c;
  const auto v = log_law_series();
  const auto t0 = std::chrono::steady_clock::now();
  const auto rep = dc::analyze_decay(v);
  const double secs = seconds_since(t0);
  c.expect(rep.regions.size() == 1, "expected one region, got " + std::to_string(rep.regions.size()));
  if (!rep.regions.empty()) c.expect(rep.regions[0].r2 >= 0.999, "r2 " + fmt("%.6f", rep.regions[0].r2));
  c.expect(std::abs(rep.net_factor - 0.2) <= 1e-6, "net " + fmt("%.9f", rep.net_factor));
  c.expect(secs < 1.0, "runtime " + fmt("%.3f s", secs));
  c.note("net " + fmt("%.9f", rep.net_factor));
  c.note("runtime " + fmt("%.4f s", secs));
  return c.result();
}

Outcome segmentation() {
  Check c;
  const auto v = two_law_series();
  const auto rep = dc::analyze_decay(v);
  c.expect(rep.regions.size() >= 2, "regions " + std::to_string(rep.regions.size()));
  for (const auto& r : rep.regions) {
    std::vector<double> t, y;
    for (auto k = r.start_idx; k <= r.end_idx; ++k) {
      t.push_back(static_cast<double>(k - r.start_idx + 1));
      y.push_back(v[static_cast<std::size_t>(k)]);
    }
    const auto o = oracle_log_fit(t, y);
    c.expect(o.r2 > 0.8, "region " + std::to_string(r.start_idx) + ".." +
                             std::to_string(r.end_idx) + " re-fit r2 " + fmt("%.4f", o.r2));
  }
  // Length-weighted mean of 20/100 and 5/80 over two 24-hour halves.
  const double analytic = (24 * 0.2 + 24 * 0.0625) / 48;
  const double rel = std::abs(rep.net_factor - analytic) / analytic;
  c.expect(rel < 0.05, "net " + fmt("%.4f", rep.net_factor) + " vs " + fmt("%.5f", analytic));
  c.note(std::to_string(rep.regions.size()) + " regions");
  c.note("net " + fmt("%.5f", rep.net_factor) + " vs analytic " + fmt("%.5f", analytic));
  return c.result();
}

Outcome spike_robustness() {
  Check c;
  auto v = log_law_series();
  const auto base = dc::analyze_decay(v);
  v[10] *= 5;  // t = 10
  const auto rep = dc::analyze_decay(v);
  const double delta = std::abs(rep.net_factor - base.net_factor);
  c.expect(delta < 0.01, "net changed by " + fmt("%.6f", delta));
  bool found = false;
  for (auto t : rep.spike_indices) found = found || t == 10;
  c.expect(found, "t=10 missing from spike_indices");
  c.note("delta " + fmt("%.2e", delta));
  return c.result();
}

Outcome threshold_semantics() {
  Check c;
  // Above 1% of the peak through t = 30, three buckets at 5, then a rebound.
  std::vector<double> v = {1000};
  for (int t = 1; t <= 30; ++t) v.push_back(100 - 20 * std::log(t));
  for (int k = 0; k < 3; ++k) v.push_back(5);
  for (int k = 0; k < 5; ++k) v.push_back(40);
  auto rep = dc::analyze_decay(v);
  c.expect(rep.window_end_idx == 30, "window_end_idx " + std::to_string(rep.window_end_idx));

  auto dipped = v;
  dipped[15] = 5;
  rep = dc::analyze_decay(dipped);
  c.expect(rep.window_end_idx == 30,
           "single dip moved window_end_idx to " + std::to_string(rep.window_end_idx));
  c.note("window_end_idx 30 with and without a 1-bucket dip");
  return c.result();
}

Outcome scale_invariance() {
  Check c;
  const auto v = two_law_series();
  const auto base = dc::analyze_decay(v);
  for (double k : {0.5, 3.0, 10.0}) {
    std::vector<double> s(v);
    for (auto& x : s) x *= k;
    const auto rep = dc::analyze_decay(s);
    c.expect(std::abs(rep.net_factor - base.net_factor) <= 1e-9,
             "c=" + fmt("%g", k) + " net " + fmt("%.12f", rep.net_factor));
    bool same = rep.regions.size() == base.regions.size();
    for (std::size_t i = 0; same && i < rep.regions.size(); ++i) {
      same = rep.regions[i].start_idx == base.regions[i].start_idx &&
             rep.regions[i].end_idx == base.regions[i].end_idx;
    }
    c.expect(same, "c=" + fmt("%g", k) + " region boundaries differ");
  }
  c.note("c in {0.5, 3, 10}");
  return c.result();
}

Outcome pearson_oracle() {
  Check c;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-100, 100);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(10), y(10);
    for (auto& a : x) a = u(rng);
    for (auto& b : y) b = u(rng);
    double mx = 0, my = 0;
    for (int i = 0; i < 10; ++i) {
      mx += x[i] / 10;
      my += y[i] / 10;
    }
    double sxy = 0, sxx = 0, syy = 0;
    for (int i = 0; i < 10; ++i) {
      sxy += (x[i] - mx) * (y[i] - my);
      sxx += (x[i] - mx) * (x[i] - mx);
      syy += (y[i] - my) * (y[i] - my);
    }
    worst = std::max(worst, std::abs(eventscope::stats::pearson(x, y) - sxy / std::sqrt(sxx * syy)));
    std::vector<double> neg(x);
    for (auto& a : neg) a = -a;
    c.expect(eventscope::stats::pearson(x, x) == 1.0, "pearson(x,x) != 1");
    c.expect(eventscope::stats::pearson(x, neg) == -1.0, "pearson(x,-x) != -1");
  }
  c.expect(worst <= 1e-12, "max deviation " + fmt("%.3e", worst));
  c.note("max deviation " + fmt("%.2e", worst));
  return c.result();
}

Outcome filter_correctness() {
  using eventscope::PostRecord;
  Check c;
  const auto set = eventscope::load_keyword_file(kData + "/keywords/ipl_collection.txt");
  const std::vector<std::string> filler = {"the", "match", "was", "great", "today",
                                           "cricket", "fans", "cheer", "loud", "stadium",
                                           "win", "bat", "ball", "six", "four", "wicket"};
  const std::vector<std::string> planted = {"#IPL", "#ipl6", "Mumbai Indians", "CSK",
                                            "(kkr)", "RCB!", "kings xi punjab,",
                                            "#KorboLorboJeetbo", "ipl2013", "#Sunrisers",
                                            "ROYAL CHALLENGERS BANGALORE", "dd:"};
  std::mt19937_64 rng(7);
  std::vector<PostRecord> records;
  std::vector<bool> is_planted;
  for (int i = 0; i < 20000; ++i) {
    std::string text;
    const bool plant = rng() % 5 == 0;
    const int words = 3 + static_cast<int>(rng() % 10);
    const int at = static_cast<int>(rng() % words);
    for (int w = 0; w < words; ++w) {
      if (plant && w == at) {
        text += planted[rng() % planted.size()];
      } else {
        text += filler[rng() % filler.size()];
      }
      text += ' ';
    }
    records.push_back(eventscope::testing::make_post(std::to_string(i), 1366000000 + i, text));
    is_planted.push_back(plant);
  }
  const auto result = eventscope::filter_records(records, set, 4);
  std::size_t hits = 0, planted_total = 0, false_pos = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const bool kept = j < result.matched.size() && result.matched[j].id == records[i].id;
    if (kept) ++j;
    if (is_planted[i]) {
      ++planted_total;
      if (kept) ++hits;
    } else if (kept) {
      ++false_pos;
    }
  }
  c.expect(hits == planted_total, "recall " + std::to_string(hits) + "/" + std::to_string(planted_total));
  c.expect(false_pos == 0, std::to_string(false_pos) + " unplanted posts matched");

  const std::vector<PostRecord> mi = {eventscope::testing::make_post("1", 5, "I moved to MI, USA")};
  const std::vector<std::string> phrase = {"mumbai indians"}, token = {"mi"};
  c.expect(eventscope::filter_records(mi, eventscope::compile_keyword_set(phrase)).matched.empty(),
           "phrase-only set matched 'I moved to MI, USA'");
  c.expect(eventscope::filter_records(mi, eventscope::compile_keyword_set(token)).matched.size() == 1,
           "token 'mi' missed 'I moved to MI, USA'");
  c.note("recall " + std::to_string(hits) + "/" + std::to_string(planted_total));
  return c.result();
}

Outcome geo_shares() {
  using eventscope::testing::at_point;
  namespace geo = eventscope::geo;
  Check c;
  const auto g = geo::Gazetteer::load(kData + "/gazetteer/india.csv");

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> lat(-10, 60), lon(-20, 120);
  std::vector<eventscope::PostRecord> records;
  for (int i = 0; i < 5000; ++i) records.push_back(at_point(std::to_string(i), lat(rng), lon(rng)));
  const auto shares = geo::country_share(records, g);
  double sum = 0;
  for (const auto& [name, s] : shares.countries) sum += s.percent;
  c.expect(std::abs(sum - 100.0) <= 1e-9, "percent sum " + fmt("%.12f", sum));

  const auto a = geo::assign({28.6139, 77.209}, g);
  c.expect(a.country && a.state && a.city && a.country->name == "India" &&
               a.state->name == "Delhi" && a.city->name == "Delhi",
           "Delhi center not assigned to (India, Delhi, Delhi)");

  const std::vector<eventscope::PostRecord> mix = {
      at_point("1", 28.61, 77.2), at_point("2", 19.07, 72.87), at_point("3", 22.57, 88.36),
      at_point("4", 51.5, -0.12)};
  const auto s = geo::country_share(mix, g);
  c.expect(s.countries.count("India") && s.countries.at("India").percent == 75.0 &&
               s.countries.count("United Kingdom") &&
               s.countries.at("United Kingdom").percent == 25.0,
           "3:1 fixture did not give 75/25");
  c.note("percent sum " + fmt("%.12f", sum));
  return c.result();
}

Outcome mass_conservation() {
  Check c;
  constexpr std::size_t kN = 1'000'000;
  std::mt19937_64 rng(9);
  std::vector<eventscope::PostRecord> records(kN);
  for (std::size_t i = 0; i < kN; ++i) {
    records[i].id = std::to_string(i);
    records[i].timestamp = 1364774400 + static_cast<std::int64_t>(rng() % (60 * 86400));
  }
  std::uniform_int_distribution<std::int64_t> width(60, 86400);
  double total_secs = 0;
  std::string widths;
  for (int k = 0; k < 5; ++k) {
    const std::int64_t w = width(rng);
    const auto t0 = std::chrono::steady_clock::now();
    const auto ts = eventscope::bucketize(records, w, 19800);
    total_secs += seconds_since(t0);
    c.expect(ts.total() == static_cast<std::int64_t>(kN),
             "w=" + std::to_string(w) + " total " + std::to_string(ts.total()));
    widths += (k ? "," : "") + std::to_string(w);
  }
  c.expect(total_secs < 10.0, "runtime " + fmt("%.3f s", total_secs));
  c.note("widths " + widths);
  c.note("runtime " + fmt("%.3f s", total_secs));
  return c.result();
}

Outcome determinism() {
  Check c;
  TempDir tmp("acceptance");
  const std::string cfg = kData + "/demo/report.json";
  std::vector<fs::path> dirs;
  for (const char* threads : {"1", "1", "4", "4"}) {
    const auto dir = tmp.path() / ("run" + std::to_string(dirs.size()));
    std::ostringstream out, err;
    const std::vector<std::string> args = {"report", "--config", cfg, "-o", dir.string(),
                                           "--threads", threads};
    const int code = eventscope::cli::run(args, out, err);
    c.expect(code == 0, "report exited " + std::to_string(code) + ": " + err.str());
    dirs.push_back(dir);
  }
  std::vector<fs::path> files;
  if (fs::exists(dirs[0])) {
    for (const auto& e : fs::directory_iterator(dirs[0])) files.push_back(e.path().filename());
  }
  c.expect(files.size() == 6, std::to_string(files.size()) + " files in the bundle");
  for (std::size_t d = 1; d < dirs.size(); ++d) {
    for (const auto& f : files) {
      c.expect(fs::exists(dirs[d] / f) && slurp(dirs[0] / f) == slurp(dirs[d] / f),
               f.string() + " differs in run " + std::to_string(d));
    }
  }
  c.note(std::to_string(files.size()) + " files identical over threads 1,1,4,4");
  return c.result();
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"exact log-law recovery", exact_recovery},
      {"segmentation of two log laws", segmentation},
      {"spike robustness", spike_robustness},
      {"threshold semantics", threshold_semantics},
      {"scale invariance", scale_invariance},
      {"pearson oracle", pearson_oracle},
      {"filter correctness", filter_correctness},
      {"geo shares", geo_shares},
      {"mass conservation", mass_conservation},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("criterion %2zu %-30s %s  (%s)\n", i + 1, criteria[i].first,
                o.pass ? "PASS" : "FAIL", o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
