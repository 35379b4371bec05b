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

#include "eventscope/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "eventscope/csv.hpp"
#include "eventscope/decay.hpp"
#include "eventscope/error.hpp"
#include "eventscope/geo.hpp"
#include "eventscope/stats.hpp"
#include "eventscope/timeseries.hpp"

namespace eventscope::cli {
namespace {

namespace fs = std::filesystem;

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

fs::path prepare_out(const RunConfig& config) {
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) {
    throw InputError("cannot create output directory '" +
                     config.out_dir.string() + "': " + ec.message());
  }
  return config.out_dir;
}

fs::path write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  out.close();
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  return path;
}

RecordFormat record_format(const RunConfig& config) {
  if (config.format == InputFormat::series) {
    throw InputError("this command needs post records, not a series CSV");
  }
  return config.format == InputFormat::csv ? RecordFormat::csv
                                           : RecordFormat::jsonlines;
}

std::vector<PostRecord> load_inputs(const RunConfig& config, std::ostream& log) {
  if (config.inputs.empty()) throw InputError("no input files given");
  const RecordFormat format = record_format(config);
  std::vector<PostRecord> records;
  std::size_t skipped = 0;
  for (const auto& path : config.inputs) {
    auto parsed = load_records(path, format, config.mode);
    skipped += parsed.skipped;
    std::move(parsed.records.begin(), parsed.records.end(),
              std::back_inserter(records));
  }
  log << "parsed " << records.size() << " records";
  if (skipped > 0) log << " (" << skipped << " malformed lines skipped)";
  log << '\n';
  return records;
}

// Applies the configured keyword filter, if any.
std::vector<PostRecord> select_records(const RunConfig& config,
                                       std::vector<PostRecord> records,
                                       std::ostream& log) {
  if (!config.keywords) return records;
  auto result = filter_records(records, load_keyword_file(*config.keywords),
                               config.threads);
  log << "keyword filter kept " << result.matched.size() << " of "
      << records.size() << " records\n";
  return std::move(result.matched);
}

TimeSeries series_from_table(const RunConfig& config) {
  if (config.inputs.size() != 1) {
    throw InputError("series input takes exactly one file");
  }
  std::ifstream in(config.inputs.front());
  if (!in) {
    throw InputError("cannot open input '" + config.inputs.front().string() + "'");
  }
  const SeriesTable table = read_series_csv(in);
  if (table.starts.empty()) throw InputError("series CSV has no rows");
  TimeSeries ts;
  ts.origin = table.starts.front();
  ts.tz_offset = config.tz_offset;
  ts.bucket_width = table.starts.size() > 1 ? table.starts[1] - table.starts[0]
                                            : config.bucket_width;
  for (double v : table.values) {
    if (v != std::floor(v)) {
      throw InputError("series counts must be whole numbers for this command");
    }
    ts.counts.push_back(static_cast<std::int64_t>(v));
  }
  return ts;
}

std::vector<std::size_t> selected_days(const RunConfig& config,
                                       const TimeSeries& ts) {
  if (!config.days.empty()) return config.days;
  std::vector<std::size_t> days(day_count(ts));
  for (std::size_t d = 0; d < days.size(); ++d) days[d] = d;
  return days;
}

fs::path write_hourly(const fs::path& dir, const TimeSeries& ts) {
  std::ostringstream s;
  write_series_csv(s, ts);
  return write_file(dir / "hourly.csv", s.str());
}

fs::path write_overlay(const fs::path& dir, const RunConfig& config,
                       const TimeSeries& ts) {
  const auto days = selected_days(config, ts);
  std::ostringstream s;
  write_overlay_csv(s, daywise_overlay(ts, days));
  return write_file(dir / "overlay.csv", s.str());
}

fs::path write_decay(const fs::path& dir, const RunConfig& config,
                     std::span<const double> activity, std::ostream& log) {
  const auto report = decay::analyze_decay(activity, config.decay);
  log << decay::summary(report);
  return write_file(dir / "decay.json", decay::to_json(report).dump(2) + "\n");
}

fs::path write_geo(const fs::path& dir, const RunConfig& config,
                   std::span<const PostRecord> records,
                   const geo::Gazetteer& gazetteer, std::ostream& log) {
  const auto shares = geo::country_share(records, gazetteer);
  std::ostringstream s;
  s << "section,name,count,percent\n";
  for (const auto& [name, share] : shares.countries) {
    s << "country," << csv::escape(name) << ',' << share.count << ','
      << fixed(share.percent, 6) << '\n';
  }
  const auto geo_total = shares.assigned + shares.unassigned;
  s << "unassigned,," << shares.unassigned << ','
    << fixed(100.0 * static_cast<double>(shares.unassigned) /
                 static_cast<double>(geo_total),
             6)
    << '\n';
  s << "top_city,top_" << config.top_cities << ",,"
    << fixed(geo::top_city_share(records, gazetteer, config.top_cities), 6)
    << '\n';
  for (const auto& team : config.teams) {
    const auto team_records =
        filter_records(records, compile_keyword_set(team.keywords)).matched;
    const bool any_geo =
        std::any_of(team_records.begin(), team_records.end(),
                    [](const PostRecord& r) { return r.geo.has_value(); });
    s << "team," << csv::escape(team.name) << ',';
    if (any_geo) {
      const auto local =
          geo::team_local_activity(team_records, team.home_region, gazetteer);
      s << local.count << ',' << fixed(local.local_percent, 6) << '\n';
    } else {
      if (!gazetteer.find(team.home_region, geo::RegionKind::state) &&
          !gazetteer.find(team.home_region, geo::RegionKind::country) &&
          !gazetteer.find(team.home_region, geo::RegionKind::city)) {
        throw InputError("unknown region '" + team.home_region + "'");
      }
      s << "0,\n";
      log << "team " << team.name << " has no geo-tagged records\n";
    }
  }
  log << "geo: " << shares.assigned << " assigned, " << shares.unassigned
      << " unassigned\n";
  return write_file(dir / "geo.csv", s.str());
}

fs::path write_correlation(const fs::path& dir, const RunConfig& config) {
  std::ifstream in(*config.metrics);
  if (!in) {
    throw InputError("cannot open metrics '" + config.metrics->string() + "'");
  }
  const auto series = stats::read_metrics_csv(in);
  const auto pairs = config.pairs.empty() ? stats::all_pairs(series) : config.pairs;
  std::ostringstream s;
  stats::write_correlation_csv(s, stats::correlation_table(series, pairs));
  return write_file(dir / "correlation.csv", s.str());
}

fs::path write_lexicon(const fs::path& dir, std::span<const PostRecord> records,
                       const stats::Lexicon& lexicon) {
  std::vector<std::string> texts;
  texts.reserve(records.size());
  for (const auto& r : records) texts.push_back(r.text);
  std::ostringstream s;
  stats::write_lexicon_csv(s, stats::lexicon_percentages(texts, lexicon));
  return write_file(dir / "lexicon.csv", s.str());
}

}  // namespace

Outputs cmd_filter(const RunConfig& config, std::ostream& log) {
  config.validate();
  if (!config.keywords) throw InputError("filter needs --keywords");
  const auto set = load_keyword_file(*config.keywords);
  const auto records = load_inputs(config, log);
  const auto dir = prepare_out(config);
  const auto result = filter_records(records, set, config.threads);

  std::ostringstream jsonl;
  write_jsonl(jsonl, result.matched);
  std::ostringstream stats_csv;
  stats_csv << "keyword,count\n";
  for (const auto& [keyword, count] : result.match_stats) {
    stats_csv << csv::escape(keyword) << ',' << count << '\n';
  }
  log << "matched " << result.matched.size() << " of " << records.size()
      << " records\n";
  return {write_file(dir / "filtered.jsonl", jsonl.str()),
          write_file(dir / "match_stats.csv", stats_csv.str())};
}

Outputs cmd_bucket(const RunConfig& config, std::ostream& log) {
  config.validate();
  auto all = load_inputs(config, log);
  std::optional<KeywordSet> sub_set;
  if (config.subevent_keywords) sub_set = load_keyword_file(*config.subevent_keywords);
  const auto records = select_records(config, all, log);
  const auto dir = prepare_out(config);
  const auto ts =
      bucketize(records, config.bucket_width, config.tz_offset, config.threads);

  const auto users = per_user_counts(records);
  std::ostringstream dist;
  write_distribution_csv(dist, users.distribution);
  std::ostringstream ccdf;
  ccdf << "posts_per_user,ccdf\n";
  for (const auto& [count, p] : stats::ccdf_export(users.distribution)) {
    ccdf << count << ',' << fixed(p, 9) << '\n';
  }
  Outputs outputs = {write_hourly(dir, ts),
                     write_file(dir / "user_distribution.csv", dist.str()),
                     write_file(dir / "user_ccdf.csv", ccdf.str())};
  if (sub_set) {
    const auto sub = filter_records(all, *sub_set, config.threads).matched;
    double share = 0.0;
    if (!sub.empty()) {
      const auto sub_ts =
          bucketize(sub, config.bucket_width, config.tz_offset, config.threads);
      share = subevent_share(ts, sub_ts);
    }
    log << "subevent_share: " << fixed(share, 4) << '\n';
  }
  log << "buckets: " << ts.size() << ", records: " << ts.total() << '\n';
  return outputs;
}

Outputs cmd_overlay(const RunConfig& config, std::ostream& log) {
  config.validate();
  TimeSeries ts;
  if (config.format == InputFormat::series) {
    ts = series_from_table(config);
  } else {
    const auto records = select_records(config, load_inputs(config, log), log);
    ts = bucketize(records, kHourSeconds, config.tz_offset, config.threads);
  }
  const auto dir = prepare_out(config);
  return {write_overlay(dir, config, ts)};
}

Outputs cmd_decay(const RunConfig& config, std::ostream& log) {
  config.validate();
  std::vector<double> activity;
  if (config.format == InputFormat::series) {
    if (config.inputs.size() != 1) {
      throw InputError("series input takes exactly one file");
    }
    std::ifstream in(config.inputs.front());
    if (!in) {
      throw InputError("cannot open input '" + config.inputs.front().string() +
                       "'");
    }
    activity = read_series_csv(in).values;
    if (activity.empty()) throw AnalysisError("insufficient decay data");
  } else {
    const auto records = select_records(config, load_inputs(config, log), log);
    if (records.empty()) throw AnalysisError("insufficient decay data");
    activity = bucketize(records, config.bucket_width, config.tz_offset,
                         config.threads)
                   .values();
  }
  const auto dir = prepare_out(config);
  return {write_decay(dir, config, activity, log)};
}

Outputs cmd_geo(const RunConfig& config, std::ostream& log) {
  config.validate();
  if (!config.gazetteer) throw InputError("geo needs --gazetteer");
  const auto gazetteer = geo::Gazetteer::load(*config.gazetteer);
  const auto records = select_records(config, load_inputs(config, log), log);
  const auto dir = prepare_out(config);
  Outputs outputs = {write_geo(dir, config, records, gazetteer, log)};
  std::ostringstream grid;
  geo::write_grid_csv(grid, geo::grid_density(records, config.cell_size));
  outputs.push_back(write_file(dir / "grid.csv", grid.str()));
  return outputs;
}

Outputs cmd_correlate(const RunConfig& config, std::ostream& log) {
  config.validate();
  if (!config.metrics) throw InputError("correlate needs --metrics");
  const auto dir = prepare_out(config);
  auto path = write_correlation(dir, config);
  log << "wrote " << path.string() << '\n';
  return {path};
}

Outputs cmd_lexicon(const RunConfig& config, std::ostream& log) {
  config.validate();
  if (!config.lexicon) throw InputError("lexicon needs --lexicon");
  const auto lexicon = stats::Lexicon::load(*config.lexicon);
  const auto records = select_records(config, load_inputs(config, log), log);
  const auto dir = prepare_out(config);
  return {write_lexicon(dir, records, lexicon)};
}

Outputs cmd_report(const RunConfig& config, std::ostream& log) {
  config.validate();
  // Load every side input up front so a bad path fails before any output.
  std::optional<KeywordSet> keywords;
  if (config.keywords) keywords = load_keyword_file(*config.keywords);
  std::optional<geo::Gazetteer> gazetteer;
  if (config.gazetteer) gazetteer = geo::Gazetteer::load(*config.gazetteer);
  std::optional<stats::Lexicon> lexicon;
  if (config.lexicon) lexicon = stats::Lexicon::load(*config.lexicon);
  if (config.metrics && !fs::exists(*config.metrics)) {
    throw InputError("cannot open metrics '" + config.metrics->string() + "'");
  }

  auto records = load_inputs(config, log);
  if (keywords) {
    records = filter_records(records, *keywords, config.threads).matched;
    log << "keyword filter kept " << records.size() << " records\n";
  }
  const auto hourly =
      bucketize(records, kHourSeconds, config.tz_offset, config.threads);
  const auto dir = prepare_out(config);

  Outputs outputs;
  outputs.push_back(write_hourly(dir, hourly));
  outputs.push_back(write_overlay(dir, config, hourly));
  const auto activity =
      config.bucket_width == kHourSeconds
          ? hourly.values()
          : bucketize(records, config.bucket_width, config.tz_offset,
                      config.threads)
                .values();
  outputs.push_back(write_decay(dir, config, activity, log));
  if (gazetteer) outputs.push_back(write_geo(dir, config, records, *gazetteer, log));
  if (config.metrics) outputs.push_back(write_correlation(dir, config));
  if (lexicon) outputs.push_back(write_lexicon(dir, records, *lexicon));
  return outputs;
}

int run(std::span<const std::string> args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"eventscope: event activity analytics for social media posts"};
  app.require_subcommand(1);

  struct Flags {
    std::optional<std::string> config;
    std::vector<std::string> inputs;
    std::optional<std::string> format, mode, keywords, subevent_keywords;
    std::optional<std::string> out, gazetteer, lexicon, metrics, weighting;
    std::optional<std::int64_t> tz_offset, bucket_width;
    std::optional<double> threshold_frac, ratio_theta, r2_gate, cell_size;
    std::optional<std::size_t> sustain_k, max_width, min_len, top_cities;
    std::optional<unsigned> threads;
    std::vector<std::size_t> days;
    std::vector<std::string> pairs;
  } f;

  using Command = Outputs (*)(const RunConfig&, std::ostream&);
  const std::vector<std::tuple<const char*, const char*, Command>> commands = {
      {"filter", "Filter post records by keyword set", cmd_filter},
      {"bucket", "Hourly activity series and per-user counts", cmd_bucket},
      {"overlay", "Day-wise 24-hour overlay of activity", cmd_overlay},
      {"decay", "Net decay factor after the activity peak", cmd_decay},
      {"geo", "Country, city and team geographic shares", cmd_geo},
      {"correlate", "Pearson correlations between metric columns", cmd_correlate},
      {"lexicon", "Lexicon category percentages", cmd_lexicon},
      {"report", "Run every configured stage into one bundle", cmd_report},
  };
  std::vector<CLI::App*> subs;
  for (const auto& [name, help, fn] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", f.config, "JSON run configuration");
    sub->add_option("--input,-i", f.inputs, "Input file(s)");
    sub->add_option("--format", f.format, "jsonlines, csv or series");
    sub->add_option("--mode", f.mode, "lenient or strict parsing");
    sub->add_option("--keywords", f.keywords, "Keyword file");
    sub->add_option("--subevent-keywords", f.subevent_keywords,
                    "Keyword file for a sub-event share");
    sub->add_option("--out,-o", f.out, "Output directory");
    sub->add_option("--tz-offset", f.tz_offset, "Seconds added before alignment");
    sub->add_option("--bucket-width", f.bucket_width, "Bucket width in seconds");
    sub->add_option("--threshold-frac", f.threshold_frac);
    sub->add_option("--sustain-k", f.sustain_k);
    sub->add_option("--ratio-theta", f.ratio_theta);
    sub->add_option("--max-width", f.max_width);
    sub->add_option("--min-len", f.min_len);
    sub->add_option("--r2-gate", f.r2_gate);
    sub->add_option("--weighting", f.weighting, "length, points or mass");
    sub->add_option("--days", f.days, "Day indices for the overlay");
    sub->add_option("--gazetteer", f.gazetteer, "Gazetteer CSV");
    sub->add_option("--top-cities", f.top_cities);
    sub->add_option("--cell-size", f.cell_size, "Grid cell size in degrees");
    sub->add_option("--lexicon", f.lexicon, "Lexicon file");
    sub->add_option("--metrics", f.metrics, "Metrics CSV for correlate");
    sub->add_option("--pairs", f.pairs, "Series pairs as a:b");
    sub->add_option("--threads", f.threads);
    subs.push_back(sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ExitCode::kInput);
  }

  try {
    RunConfig config;
    if (f.config) config = load_config(*f.config);
    if (!f.inputs.empty()) {
      config.inputs.assign(f.inputs.begin(), f.inputs.end());
    }
    if (f.format) config.format = parse_input_format(*f.format);
    if (f.mode) {
      if (*f.mode != "lenient" && *f.mode != "strict") {
        throw InputError("--mode must be lenient or strict");
      }
      config.mode = *f.mode == "strict" ? ParseMode::strict : ParseMode::lenient;
    }
    if (f.keywords) config.keywords = *f.keywords;
    if (f.subevent_keywords) config.subevent_keywords = *f.subevent_keywords;
    if (f.out) config.out_dir = *f.out;
    if (f.tz_offset) config.tz_offset = *f.tz_offset;
    if (f.bucket_width) config.bucket_width = *f.bucket_width;
    if (f.threshold_frac) config.decay.threshold_frac = *f.threshold_frac;
    if (f.sustain_k) config.decay.sustain_k = *f.sustain_k;
    if (f.ratio_theta) config.decay.ratio_theta = *f.ratio_theta;
    if (f.max_width) config.decay.max_width = *f.max_width;
    if (f.min_len) config.decay.min_len = *f.min_len;
    if (f.r2_gate) config.decay.r2_gate = *f.r2_gate;
    if (f.weighting) config.decay.weighting = decay::parse_weighting(*f.weighting);
    if (!f.days.empty()) config.days = f.days;
    if (f.gazetteer) config.gazetteer = *f.gazetteer;
    if (f.top_cities) config.top_cities = *f.top_cities;
    if (f.cell_size) config.cell_size = *f.cell_size;
    if (f.lexicon) config.lexicon = *f.lexicon;
    if (f.metrics) config.metrics = *f.metrics;
    if (!f.pairs.empty()) {
      config.pairs.clear();
      for (const auto& p : f.pairs) {
        const auto colon = p.find(':');
        if (colon == std::string::npos) {
          throw InputError("--pairs expects a:b, got '" + p + "'");
        }
        config.pairs.emplace_back(p.substr(0, colon), p.substr(colon + 1));
      }
    }
    if (f.threads) config.threads = *f.threads;
    config.validate();

    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (subs[i]->parsed()) {
        const auto outputs = std::get<2>(commands[i])(config, out);
        for (const auto& p : outputs) out << "wrote " << p.string() << '\n';
        break;
      }
    }
    return static_cast<int>(ExitCode::kOk);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kInternal);
  }
}

}  // namespace eventscope::cli
