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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eventscope::csv {

// Splits one RFC 4180 line. Returns nullopt on an unterminated quote.
// Quoted fields may not span lines.
std::optional<std::vector<std::string>> split_line(std::string_view line);

// Quotes the field if it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

// Strips one trailing '\r' (CRLF input).
std::string_view chomp(std::string_view line);

}  // namespace eventscope::csv
