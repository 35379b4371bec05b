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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "eventscope/decay.hpp"
#include "eventscope/ingest.hpp"
#include "eventscope/stats.hpp"

namespace eventscope {

enum class InputFormat { jsonlines, csv, series };

InputFormat parse_input_format(std::string_view name);
std::string_view to_string(InputFormat f);

struct TeamSpec {
  std::string name;
  std::vector<std::string> keywords;
  std::string home_region;
};

/// Everything a run needs. Paths read from a config file are resolved
/// against the file's directory.
struct RunConfig {
  std::vector<std::filesystem::path> inputs;
  InputFormat format = InputFormat::jsonlines;
  ParseMode mode = ParseMode::lenient;
  std::optional<std::filesystem::path> keywords;
  std::optional<std::filesystem::path> subevent_keywords;
  std::int64_t bucket_width = kHourSeconds;
  std::int64_t tz_offset = 0;
  decay::Config decay;
  std::vector<std::size_t> days;  // empty = every day
  std::optional<std::filesystem::path> gazetteer;
  std::size_t top_cities = 50;
  double cell_size = 0.5;
  std::vector<TeamSpec> teams;
  std::optional<std::filesystem::path> lexicon;
  std::optional<std::filesystem::path> metrics;
  std::vector<stats::SeriesPair> pairs;  // empty = every pair
  std::filesystem::path out_dir = "out";
  unsigned threads = 1;

  /// Throws InputError on any out-of-range value.
  void validate() const;
};

/// Unknown keys are rejected so typos surface as exit code 2.
RunConfig config_from_json(const nlohmann::json& j,
                           const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

}  // namespace eventscope
