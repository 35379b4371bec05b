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

#include <stdexcept>
#include <string>

namespace eventscope {

/// Process exit codes shared by the CLI and the report pipeline.
enum class ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kInput = 2,
  kInfeasible = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

/// Malformed input data or an invalid configuration value.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what)
      : Error(ExitCode::kInput, what) {}
};

/// The data is well-formed but the requested analysis cannot be carried out
/// (for example a decay window with fewer than three points).
class AnalysisError : public Error {
 public:
  explicit AnalysisError(const std::string& what)
      : Error(ExitCode::kInfeasible, what) {}
};

}  // namespace eventscope
