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
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace eventscope {

enum class Platform { twitter, facebook };

std::string_view to_string(Platform p);

struct GeoPoint {
  double lat = 0.0;  // degrees, [-90, 90]
  double lon = 0.0;  // degrees, [-180, 180]
};

bool valid_point(const GeoPoint& p);

struct PostRecord {
  std::string id;
  Platform platform = Platform::twitter;
  std::int64_t timestamp = 0;  // UTC epoch seconds
  std::string text;
  std::string user_id;
  std::optional<GeoPoint> geo;
};

enum class RecordFormat { jsonlines, csv };
enum class ParseMode { lenient, strict };

/// Accepts "jsonlines" / "jsonl" / "csv". Anything else is an InputError.
RecordFormat parse_record_format(std::string_view name);

struct ParseResult {
  std::vector<PostRecord> records;
  std::size_t skipped = 0;
};

/// Reads one record per line, preserving input order. Blank lines are
/// ignored. In lenient mode malformed lines (bad JSON, missing or
/// out-of-range fields, duplicate (platform, id)) are counted in `skipped`;
/// in strict mode the first one raises InputError naming the line number.
/// CSV input must start with a header naming the same fields as the JSON
/// schema: id,platform,ts,text,user and optionally lat,lon.
ParseResult parse_records(std::istream& in, RecordFormat format,
                          ParseMode mode = ParseMode::lenient);

ParseResult load_records(const std::filesystem::path& path,
                         RecordFormat format,
                         ParseMode mode = ParseMode::lenient);

std::string to_json_line(const PostRecord& record);
void write_jsonl(std::ostream& out, std::span<const PostRecord> records);

/// Compiled keyword classes, all lowercase, first-seen order, no duplicates.
struct KeywordSet {
  std::vector<std::string> phrases;   // contain whitespace; substring match
  std::vector<std::string> hashtags;  // "#tag"; exact hashtag-token match
  std::vector<std::string> tokens;    // whole-word match

  bool empty() const {
    return phrases.empty() && hashtags.empty() && tokens.empty();
  }
  std::size_t size() const {
    return phrases.size() + hashtags.size() + tokens.size();
  }
};

KeywordSet compile_keyword_set(std::span<const std::string> lines);

/// Keyword file lines with blanks and "//" comments removed.
std::vector<std::string> read_keyword_lines(std::istream& in);
KeywordSet load_keyword_file(const std::filesystem::path& path);

class KeywordMatcher {
 public:
  explicit KeywordMatcher(const KeywordSet& set);

  /// Keyword labels in a fixed order: phrases, hashtags, tokens.
  const std::vector<std::string>& labels() const { return labels_; }

  /// Appends the label index of every keyword hitting `text` (each once).
  void match(std::string_view text, std::vector<std::size_t>& hits) const;
  bool matches(std::string_view text) const;

 private:
  std::vector<std::string> labels_;
  std::size_t phrase_count_ = 0;
  std::unordered_map<std::string, std::size_t> hashtag_index_;
  std::unordered_map<std::string, std::size_t> token_index_;
};

struct FilterResult {
  std::vector<PostRecord> matched;
  std::map<std::string, std::size_t> match_stats;  // every keyword, may be 0
};

/// Records are partitioned across `threads` workers; the merge restores
/// input order so the result does not depend on the thread count.
FilterResult filter_records(std::span<const PostRecord> records,
                            const KeywordSet& set, unsigned threads = 1);

}  // namespace eventscope
