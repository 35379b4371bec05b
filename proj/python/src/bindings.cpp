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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "eventscope/commands.hpp"
#include "eventscope/decay.hpp"
#include "eventscope/error.hpp"
#include "eventscope/geo.hpp"
#include "eventscope/ingest.hpp"
#include "eventscope/stats.hpp"
#include "eventscope/timeseries.hpp"

namespace py = pybind11;
using namespace eventscope;

namespace {

ParseMode to_mode(bool strict) { return strict ? ParseMode::strict : ParseMode::lenient; }

py::tuple parse_result(ParseResult r) {
  return py::make_tuple(std::move(r.records), r.skipped);
}

std::optional<std::string> name_of(const geo::GazetteerEntry* e) {
  if (!e) return std::nullopt;
  return e->name;
}

void bind_ingest(py::module_& m) {
  py::enum_<Platform>(m, "Platform")
      .value("twitter", Platform::twitter)
      .value("facebook", Platform::facebook);

  py::class_<GeoPoint>(m, "GeoPoint")
      .def(py::init<double, double>(), py::arg("lat"), py::arg("lon"))
      .def_readwrite("lat", &GeoPoint::lat)
      .def_readwrite("lon", &GeoPoint::lon)
      .def("__repr__", [](const GeoPoint& p) {
        return "GeoPoint(" + std::to_string(p.lat) + ", " + std::to_string(p.lon) + ")";
      });

  py::class_<PostRecord>(m, "PostRecord")
      .def(py::init([](std::string id, std::int64_t ts, std::string text, std::string user,
                       Platform platform, std::optional<GeoPoint> geo) {
             return PostRecord{std::move(id), platform, ts, std::move(text), std::move(user), geo};
           }),
           py::arg("id"), py::arg("ts"), py::arg("text") = "", py::arg("user") = "",
           py::arg("platform") = Platform::twitter, py::arg("geo") = py::none())
      .def_readwrite("id", &PostRecord::id)
      .def_readwrite("platform", &PostRecord::platform)
      .def_readwrite("ts", &PostRecord::timestamp)
      .def_readwrite("text", &PostRecord::text)
      .def_readwrite("user", &PostRecord::user_id)
      .def_readwrite("geo", &PostRecord::geo)
      .def("to_json", &to_json_line)
      .def("__repr__", [](const PostRecord& r) { return "PostRecord(" + to_json_line(r) + ")"; });

  m.def(
      "parse_records",
      [](const std::string& text, const std::string& format, bool strict) {
        std::istringstream in(text);
        return parse_result(parse_records(in, parse_record_format(format), to_mode(strict)));
      },
      py::arg("text"), py::arg("format") = "jsonlines", py::arg("strict") = false,
      "Parse records from a string. Returns (records, skipped).");
  m.def(
      "load_records",
      [](const std::filesystem::path& path, const std::string& format, bool strict) {
        return parse_result(load_records(path, parse_record_format(format), to_mode(strict)));
      },
      py::arg("path"), py::arg("format") = "jsonlines", py::arg("strict") = false);

  py::class_<KeywordSet>(m, "KeywordSet")
      .def_readonly("phrases", &KeywordSet::phrases)
      .def_readonly("hashtags", &KeywordSet::hashtags)
      .def_readonly("tokens", &KeywordSet::tokens)
      .def("__len__", &KeywordSet::size);

  m.def("compile_keyword_set",
        [](const std::vector<std::string>& lines) { return compile_keyword_set(lines); },
        py::arg("lines"));
  m.def("load_keyword_file", &load_keyword_file, py::arg("path"));
  m.def(
      "filter_records",
      [](const std::vector<PostRecord>& records, const KeywordSet& set, unsigned threads) {
        auto r = filter_records(records, set, threads);
        return py::make_tuple(std::move(r.matched), std::move(r.match_stats));
      },
      py::arg("records"), py::arg("keywords"), py::arg("threads") = 1,
      "Returns (matched, match_stats).");
}

void bind_timeseries(py::module_& m) {
  py::class_<TimeSeries>(m, "TimeSeries")
      .def_readonly("origin", &TimeSeries::origin)
      .def_readonly("bucket_width", &TimeSeries::bucket_width)
      .def_readonly("tz_offset", &TimeSeries::tz_offset)
      .def_readonly("counts", &TimeSeries::counts)
      .def("total", &TimeSeries::total)
      .def("bucket_start", &TimeSeries::bucket_start)
      .def("__len__", &TimeSeries::size);

  m.def("bucketize",
        [](const std::vector<PostRecord>& records, std::int64_t width, std::int64_t tz,
           unsigned threads) { return bucketize(records, width, tz, threads); },
        py::arg("records"), py::arg("bucket_width") = kHourSeconds, py::arg("tz_offset") = 0,
        py::arg("threads") = 1);
  m.def("bucketize_timestamps",
        [](const std::vector<std::int64_t>& ts, std::int64_t width, std::int64_t tz,
           unsigned threads) { return bucketize_timestamps(ts, width, tz, threads); },
        py::arg("timestamps"), py::arg("bucket_width") = kHourSeconds,
        py::arg("tz_offset") = 0, py::arg("threads") = 1);
  m.def("rebucket", &rebucket, py::arg("series"), py::arg("new_width"));

  py::class_<Overlay>(m, "Overlay")
      .def_readonly("days", &Overlay::days)
      .def_readonly("matrix", &Overlay::matrix)
      .def_readonly("profile", &Overlay::profile);
  m.def("daywise_overlay",
        [](const TimeSeries& ts, const std::vector<std::size_t>& days) {
          return daywise_overlay(ts, days);
        },
        py::arg("series"), py::arg("days"));
  m.def(
      "subevent_share",
      [](const TimeSeries& event, const TimeSeries& sub,
         std::optional<std::pair<std::size_t, std::size_t>> window) {
        std::optional<BucketRange> range;
        if (window) range = BucketRange{window->first, window->second};
        return subevent_share(event, sub, range);
      },
      py::arg("event"), py::arg("sub"), py::arg("window") = py::none());
  m.def(
      "per_user_counts",
      [](const std::vector<PostRecord>& records) {
        auto uc = per_user_counts(records);
        return py::make_tuple(std::move(uc.by_user), std::move(uc.distribution));
      },
      py::arg("records"), "Returns (by_user, distribution).");
}

void bind_decay(py::module_& root) {
  auto m = root.def_submodule("decay", "Peak decay analysis");
  using namespace eventscope::decay;

  py::enum_<Weighting>(m, "Weighting")
      .value("length", Weighting::length)
      .value("points", Weighting::points)
      .value("mass", Weighting::mass);

  py::class_<Config>(m, "Config")
      .def(py::init<>())
      .def_readwrite("threshold_frac", &Config::threshold_frac)
      .def_readwrite("sustain_k", &Config::sustain_k)
      .def_readwrite("ratio_theta", &Config::ratio_theta)
      .def_readwrite("max_width", &Config::max_width)
      .def_readwrite("min_len", &Config::min_len)
      .def_readwrite("r2_gate", &Config::r2_gate)
      .def_readwrite("weighting", &Config::weighting)
      .def("validate", &Config::validate);

  py::class_<RegionFit>(m, "RegionFit")
      .def_readonly("start_idx", &RegionFit::start_idx)
      .def_readonly("end_idx", &RegionFit::end_idx)
      .def_readonly("alpha", &RegionFit::alpha)
      .def_readonly("beta", &RegionFit::beta)
      .def_readonly("r2", &RegionFit::r2)
      .def_readonly("contribution", &RegionFit::contribution)
      .def_readonly("weight", &RegionFit::weight)
      .def_readonly("points", &RegionFit::points)
      .def_readonly("depth", &RegionFit::depth)
      .def_readonly("flagged", &RegionFit::flagged);

  py::class_<Report>(m, "Report")
      .def_property_readonly("peak_idx", [](const Report& r) { return r.peak.index; })
      .def_property_readonly("peak_value", [](const Report& r) { return r.peak.value; })
      .def_readonly("window_end_idx", &Report::window_end_idx)
      .def_readonly("spike_indices", &Report::spike_indices)
      .def_readonly("segments", &Report::segments)
      .def_readonly("regions", &Report::regions)
      .def_readonly("merged_pairs", &Report::merged_pairs)
      .def_readonly("net_factor", &Report::net_factor)
      .def("to_json", [](const Report& r) { return to_json(r).dump(2); })
      .def("summary", &summary);

  auto to_points = [](const std::vector<std::pair<std::int64_t, double>>& pts) {
    std::vector<Point> out;
    out.reserve(pts.size());
    for (const auto& [t, v] : pts) out.push_back({t, v});
    return out;
  };
  auto from_points = [](const std::vector<Point>& pts) {
    std::vector<std::pair<std::int64_t, double>> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.emplace_back(p.t, p.value);
    return out;
  };

  m.def("find_peak", [](const std::vector<double>& v) {
    const auto p = find_peak(std::span<const double>(v));
    return py::make_tuple(p.index, p.value);
  });
  m.def(
      "extract_decay_window",
      [from_points](const std::vector<double>& v, std::size_t peak, double frac, std::size_t k) {
        return from_points(extract_decay_window(v, peak, frac, k));
      },
      py::arg("values"), py::arg("peak_idx"), py::arg("threshold_frac") = 0.01,
      py::arg("sustain_k") = 3);
  m.def(
      "remove_spikes",
      [to_points, from_points](const std::vector<std::pair<std::int64_t, double>>& w,
                               double theta, std::size_t max_width) {
        const auto pts = to_points(w);
        auto r = remove_spikes(pts, theta, max_width);
        return py::make_tuple(from_points(r.cleaned), std::move(r.spike_indices));
      },
      py::arg("window"), py::arg("ratio_theta") = 2.0, py::arg("max_width") = 3);
  m.def(
      "fit_log",
      [to_points](const std::vector<std::pair<std::int64_t, double>>& w) {
        const auto pts = to_points(w);
        const auto f = fit_log(pts);
        return py::make_tuple(f.alpha, f.beta, f.r2);
      },
      py::arg("points"), "Returns (alpha, beta, r2).");
  m.def(
      "segment",
      [to_points](const std::vector<std::pair<std::int64_t, double>>& w, double r2_gate,
                  std::size_t min_len, Weighting weighting) {
        const auto pts = to_points(w);
        return segment(pts, {r2_gate, min_len, weighting});
      },
      py::arg("window"), py::arg("r2_gate") = 0.8, py::arg("min_len") = 4,
      py::arg("weighting") = Weighting::length);
  m.def("net_decay_factor",
        [](const std::vector<RegionFit>& r) { return net_decay_factor(r); });
  m.def(
      "analyze_decay",
      [](const std::vector<double>& values, const Config& config) {
        return analyze_decay(std::span<const double>(values), config);
      },
      py::arg("values"), py::arg("config") = Config{});
  m.def(
      "analyze_decay",
      [](const TimeSeries& ts, const Config& config) { return analyze_decay(ts, config); },
      py::arg("series"), py::arg("config") = Config{});
}

void bind_geo(py::module_& root) {
  auto m = root.def_submodule("geo", "Gazetteer assignment and shares");
  using namespace eventscope::geo;

  py::class_<Gazetteer>(m, "Gazetteer")
      .def_static("load", &Gazetteer::load, py::arg("path"))
      .def_static(
          "from_csv",
          [](const std::string& text) {
            std::istringstream in(text);
            return Gazetteer::read_csv(in);
          },
          py::arg("text"))
      .def("__len__", [](const Gazetteer& g) { return g.entries().size(); })
      .def_property_readonly("ranked_city_count", &Gazetteer::ranked_city_count);

  m.def("haversine_km", [](double lat1, double lon1, double lat2, double lon2) {
    return haversine_km({lat1, lon1}, {lat2, lon2});
  });
  m.def(
      "assign",
      [](double lat, double lon, const Gazetteer& g) {
        const auto a = assign({lat, lon}, g);
        return py::make_tuple(name_of(a.country), name_of(a.state), name_of(a.city));
      },
      py::arg("lat"), py::arg("lon"), py::arg("gazetteer"),
      "Returns (country, state, city); missing levels are None.");
  m.def(
      "country_share",
      [](const std::vector<PostRecord>& records, const Gazetteer& g) {
        const auto s = country_share(records, g);
        py::dict out;
        for (const auto& [name, share] : s.countries) {
          out[py::str(name)] = py::make_tuple(share.count, share.percent);
        }
        return py::make_tuple(out, s.assigned, s.unassigned);
      },
      py::arg("records"), py::arg("gazetteer"),
      "Returns ({country: (count, percent)}, assigned, unassigned).");
  m.def("top_city_share",
        [](const std::vector<PostRecord>& records, const Gazetteer& g, std::size_t n) {
          return top_city_share(records, g, n);
        },
        py::arg("records"), py::arg("gazetteer"), py::arg("n") = 50);
  m.def(
      "team_local_activity",
      [](const std::vector<PostRecord>& records, const std::string& region,
         const Gazetteer& g) {
        const auto a = team_local_activity(records, region, g);
        return py::make_tuple(a.count, a.local_percent);
      },
      py::arg("records"), py::arg("home_region"), py::arg("gazetteer"));
  m.def("grid_density",
        [](const std::vector<PostRecord>& records, double cell) {
          return grid_density(records, cell);
        },
        py::arg("records"), py::arg("cell_size"));
}

void bind_stats(py::module_& root) {
  auto m = root.def_submodule("stats", "Correlation, lexicon and distribution helpers");
  using namespace eventscope::stats;

  m.def("pearson",
        [](const std::vector<double>& x, const std::vector<double>& y) {
          return pearson(std::span<const double>(x), std::span<const double>(y));
        },
        py::arg("x"), py::arg("y"));
  m.def(
      "correlation_table",
      [](const std::map<std::string, std::vector<double>>& series,
         const std::vector<SeriesPair>& pairs) {
        std::vector<NamedSeries> named;
        for (const auto& [k, v] : series) named.push_back({k, v});
        std::vector<py::tuple> out;
        for (const auto& c : correlation_table(named, pairs)) {
          out.push_back(py::make_tuple(c.series_a, c.series_b, c.r));
        }
        return out;
      },
      py::arg("series"), py::arg("pairs"));

  py::class_<Lexicon>(m, "Lexicon")
      .def_static(
          "parse",
          [](const std::string& text) {
            std::istringstream in(text);
            return Lexicon::parse(in);
          },
          py::arg("text"))
      .def_static("load", &Lexicon::load, py::arg("path"))
      .def_property_readonly("categories", [](const Lexicon& l) {
        std::vector<std::string> names;
        for (const auto& c : l.categories()) names.push_back(c.name);
        return names;
      });
  m.def(
      "lexicon_percentages",
      [](const std::vector<std::string>& texts, const Lexicon& lex) {
        const auto r = lexicon_percentages(texts, lex);
        py::dict out;
        for (const auto& c : r.categories) {
          out[py::str(c.category)] = py::make_tuple(c.matched, c.percent);
        }
        return py::make_tuple(r.total_tokens, out);
      },
      py::arg("texts"), py::arg("lexicon"),
      "Returns (total_tokens, {category: (matched, percent)}).");
  m.def("ccdf_export", &ccdf_export, py::arg("distribution"));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "eventscope core bindings";

  static py::exception<InputError> input_error(m, "InputError", PyExc_ValueError);
  static py::exception<AnalysisError> analysis_error(m, "AnalysisError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InputError& e) {
      PyErr_SetString(input_error.ptr(), e.what());
    } catch (const AnalysisError& e) {
      PyErr_SetString(analysis_error.ptr(), e.what());
    }
  });

  bind_ingest(m);
  bind_timeseries(m);
  bind_decay(m);
  bind_geo(m);
  bind_stats(m);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run a CLI command in-process. Returns (exit_code, stdout, stderr).");
}
