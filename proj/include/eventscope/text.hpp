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

#include <string>
#include <string_view>
#include <vector>

namespace eventscope::text {

// Simple (one-to-one) case folding over UTF-8. Covers ASCII, Latin-1,
// Latin Extended-A, Greek, Cyrillic and fullwidth Latin. Bytes that are not
// valid UTF-8 are copied through untouched.
std::string fold_case(std::string_view utf8);

// A word character is an ASCII letter or digit, or a non-ASCII code point
// outside the punctuation, symbol and emoji blocks.
bool is_word_codepoint(char32_t cp);

struct Word {
  std::string_view text;  // without the leading '#'
  bool hashtag = false;   // immediately preceded by '#'
};

// Maximal runs of word characters, in order. Views point into `folded`.
std::vector<Word> split_words(std::string_view folded);

std::string_view trim(std::string_view s);

}  // namespace eventscope::text
