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

#include "eventscope/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "eventscope/error.hpp"

namespace eventscope {
namespace {

using nlohmann::json;

constexpr std::int64_t kMaxTzOffset = 14 * kHourSeconds;
constexpr unsigned kMaxThreads = 256;

std::filesystem::path resolve(const std::filesystem::path& base,
                              const json& value, const std::string& key) {
  if (!value.is_string()) throw InputError("config '" + key + "' must be a path");
  std::filesystem::path p = value.get<std::string>();
  return p.is_relative() && !base.empty() ? base / p : p;
}

std::int64_t integer(const json& value, const std::string& key,
                     std::int64_t min_value) {
  if (!value.is_number_integer()) {
    throw InputError("config '" + key + "' must be an integer");
  }
  const auto v = value.get<std::int64_t>();
  if (v < min_value) {
    throw InputError("config '" + key + "' must be >= " +
                     std::to_string(min_value));
  }
  return v;
}

double real(const json& value, const std::string& key) {
  if (!value.is_number()) throw InputError("config '" + key + "' must be a number");
  return value.get<double>();
}

std::string string(const json& value, const std::string& key) {
  if (!value.is_string()) throw InputError("config '" + key + "' must be a string");
  return value.get<std::string>();
}

}  // namespace

InputFormat parse_input_format(std::string_view name) {
  if (name == "series") return InputFormat::series;
  return parse_record_format(name) == RecordFormat::csv ? InputFormat::csv
                                                        : InputFormat::jsonlines;
}

std::string_view to_string(InputFormat f) {
  switch (f) {
    case InputFormat::jsonlines: return "jsonlines";
    case InputFormat::csv: return "csv";
    case InputFormat::series: return "series";
  }
  return "jsonlines";
}

void RunConfig::validate() const {
  if (bucket_width <= 0) throw InputError("bucket_width must be positive");
  if (tz_offset < -kMaxTzOffset || tz_offset > kMaxTzOffset) {
    throw InputError("tz_offset must lie within +/-14 hours");
  }
  decay.validate();
  if (top_cities < 1) throw InputError("top_cities must be at least 1");
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw InputError("cell_size must be positive");
  }
  if (threads < 1 || threads > kMaxThreads) {
    throw InputError("threads must lie in [1, 256]");
  }
  for (const auto& t : teams) {
    if (t.name.empty() || t.home_region.empty()) {
      throw InputError("every team needs a name and a home_region");
    }
  }
}

RunConfig config_from_json(const json& j, const std::filesystem::path& base) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  RunConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "inputs") {
      if (!value.is_array()) throw InputError("config 'inputs' must be a list");
      for (const auto& v : value) c.inputs.push_back(resolve(base, v, key));
    } else if (key == "format") {
      c.format = parse_input_format(string(value, key));
    } else if (key == "mode") {
      const auto m = string(value, key);
      if (m != "lenient" && m != "strict") {
        throw InputError("config 'mode' must be lenient or strict");
      }
      c.mode = m == "strict" ? ParseMode::strict : ParseMode::lenient;
    } else if (key == "keywords") {
      c.keywords = resolve(base, value, key);
    } else if (key == "subevent_keywords") {
      c.subevent_keywords = resolve(base, value, key);
    } else if (key == "bucket_width") {
      c.bucket_width = integer(value, key, 1);
    } else if (key == "tz_offset") {
      c.tz_offset = integer(value, key, -kMaxTzOffset);
    } else if (key == "threshold_frac") {
      c.decay.threshold_frac = real(value, key);
    } else if (key == "sustain_k") {
      c.decay.sustain_k = static_cast<std::size_t>(integer(value, key, 0));
    } else if (key == "ratio_theta") {
      c.decay.ratio_theta = real(value, key);
    } else if (key == "max_width") {
      c.decay.max_width = static_cast<std::size_t>(integer(value, key, 0));
    } else if (key == "min_len") {
      c.decay.min_len = static_cast<std::size_t>(integer(value, key, 0));
    } else if (key == "r2_gate") {
      c.decay.r2_gate = real(value, key);
    } else if (key == "weighting") {
      c.decay.weighting = decay::parse_weighting(string(value, key));
    } else if (key == "days") {
      if (!value.is_array()) throw InputError("config 'days' must be a list");
      for (const auto& d : value) {
        c.days.push_back(static_cast<std::size_t>(integer(d, key, 0)));
      }
    } else if (key == "gazetteer") {
      c.gazetteer = resolve(base, value, key);
    } else if (key == "top_cities") {
      c.top_cities = static_cast<std::size_t>(integer(value, key, 0));
    } else if (key == "cell_size") {
      c.cell_size = real(value, key);
    } else if (key == "teams") {
      if (!value.is_array()) throw InputError("config 'teams' must be a list");
      for (const auto& t : value) {
        if (!t.is_object()) throw InputError("each team must be an object");
        TeamSpec spec;
        spec.name = string(t.value("name", json()), "teams.name");
        spec.home_region =
            string(t.value("home_region", json()), "teams.home_region");
        const auto kw = t.value("keywords", json::array());
        if (!kw.is_array()) throw InputError("teams.keywords must be a list");
        for (const auto& k : kw) spec.keywords.push_back(string(k, "teams.keywords"));
        c.teams.push_back(std::move(spec));
      }
    } else if (key == "lexicon") {
      c.lexicon = resolve(base, value, key);
    } else if (key == "metrics") {
      c.metrics = resolve(base, value, key);
    } else if (key == "pairs") {
      if (!value.is_array()) throw InputError("config 'pairs' must be a list");
      for (const auto& p : value) {
        if (!p.is_array() || p.size() != 2) {
          throw InputError("each pair must be a two-element list");
        }
        c.pairs.emplace_back(string(p[0], key), string(p[1], key));
      }
    } else if (key == "out") {
      c.out_dir = resolve(base, value, key);
    } else if (key == "threads") {
      c.threads = static_cast<unsigned>(integer(value, key, 1));
    } else {
      throw InputError("unknown config key '" + key + "'");
    }
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("config '" + path.string() + "': " + e.what());
  }
  return config_from_json(j, path.parent_path());
}

}  // namespace eventscope
