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

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "eventscope/config.hpp"

namespace eventscope::cli {

using Outputs = std::vector<std::filesystem::path>;

// Each command validates the config, writes its files under
// config.out_dir and returns their paths. Errors are thrown as
// InputError / AnalysisError.
Outputs cmd_filter(const RunConfig& config, std::ostream& log);
Outputs cmd_bucket(const RunConfig& config, std::ostream& log);
Outputs cmd_overlay(const RunConfig& config, std::ostream& log);
Outputs cmd_decay(const RunConfig& config, std::ostream& log);
Outputs cmd_geo(const RunConfig& config, std::ostream& log);
Outputs cmd_correlate(const RunConfig& config, std::ostream& log);
Outputs cmd_lexicon(const RunConfig& config, std::ostream& log);
Outputs cmd_report(const RunConfig& config, std::ostream& log);

/// Full command line entry point (args excludes the program name).
/// Returns the process exit code.
int run(std::span<const std::string> args, std::ostream& out,
        std::ostream& err);

}  // namespace eventscope::cli
