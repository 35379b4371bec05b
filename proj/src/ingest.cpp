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

#include "eventscope/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <thread>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "eventscope/csv.hpp"
#include "eventscope/error.hpp"
#include "eventscope/text.hpp"

namespace eventscope {
namespace {

using nlohmann::json;

// Thrown for a single bad line; converted to skip/strict error by the caller.
struct Malformed {
  std::string reason;
};

Platform parse_platform(std::string_view s) {
  const std::string folded = text::fold_case(text::trim(s));
  if (folded == "twitter") return Platform::twitter;
  if (folded == "facebook") return Platform::facebook;
  throw Malformed{"unknown platform '" + std::string(s) + "'"};
}

std::string id_field(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw Malformed{std::string("missing '") + key + "'"};
  std::string value;
  if (it->is_string()) {
    value = it->get<std::string>();
  } else if (it->is_number_integer()) {
    value = it->dump();
  } else {
    throw Malformed{std::string("'") + key + "' must be a string"};
  }
  if (text::trim(value).empty()) {
    throw Malformed{std::string("empty '") + key + "'"};
  }
  return value;
}

std::int64_t timestamp_from_json(const json& j) {
  const auto it = j.find("ts");
  if (it == j.end()) throw Malformed{"missing 'ts'"};
  if (it->is_number_integer()) return it->get<std::int64_t>();
  if (it->is_number_float()) {
    const double v = it->get<double>();
    if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.0e15) {
      return static_cast<std::int64_t>(v);
    }
  }
  throw Malformed{"'ts' must be an integer"};
}

std::optional<double> optional_number(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) throw Malformed{std::string("'") + key + "' not a number"};
  return it->get<double>();
}

void check_record(PostRecord& r, std::optional<double> lat,
                  std::optional<double> lon) {
  if (r.timestamp <= 0) throw Malformed{"timestamp must be positive"};
  if (lat.has_value() != lon.has_value()) {
    throw Malformed{"lat and lon must be given together"};
  }
  if (lat) {
    GeoPoint p{*lat, *lon};
    if (!valid_point(p)) throw Malformed{"geo point out of range"};
    r.geo = p;
  }
}

PostRecord record_from_json(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error&) {
    throw Malformed{"invalid JSON"};
  }
  if (!j.is_object()) throw Malformed{"not a JSON object"};
  PostRecord r;
  r.id = id_field(j, "id");
  const auto platform = j.find("platform");
  if (platform == j.end() || !platform->is_string()) {
    throw Malformed{"missing 'platform'"};
  }
  r.platform = parse_platform(platform->get<std::string>());
  r.timestamp = timestamp_from_json(j);
  const auto text_it = j.find("text");
  if (text_it == j.end() || !text_it->is_string()) {
    throw Malformed{"missing 'text'"};
  }
  r.text = text_it->get<std::string>();
  r.user_id = id_field(j, "user");
  check_record(r, optional_number(j, "lat"), optional_number(j, "lon"));
  return r;
}

template <typename T>
T parse_number(std::string_view s, const char* what) {
  s = text::trim(s);
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw Malformed{std::string("bad ") + what + " '" + std::string(s) + "'"};
  }
  return value;
}

struct CsvColumns {
  std::size_t count = 0;
  std::size_t id, platform, ts, text, user;
  std::optional<std::size_t> lat, lon;
};

CsvColumns csv_columns(std::string_view header) {
  const auto fields = csv::split_line(header);
  if (!fields) throw InputError("line 1: malformed CSV header");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < fields->size(); ++i) {
    index[std::string(text::trim((*fields)[i]))] = i;
  }
  auto need = [&](const char* name) {
    const auto it = index.find(name);
    if (it == index.end()) {
      throw InputError(std::string("line 1: CSV header lacks column '") +
                       name + "'");
    }
    return it->second;
  };
  auto maybe = [&](const char* name) -> std::optional<std::size_t> {
    const auto it = index.find(name);
    if (it == index.end()) return std::nullopt;
    return it->second;
  };
  CsvColumns c{fields->size(), need("id"), need("platform"), need("ts"),
               need("text"), need("user"), maybe("lat"), maybe("lon")};
  if (c.lat.has_value() != c.lon.has_value()) {
    throw InputError("line 1: CSV header needs both 'lat' and 'lon'");
  }
  return c;
}

PostRecord record_from_csv(std::string_view line, const CsvColumns& cols) {
  const auto fields = csv::split_line(line);
  if (!fields) throw Malformed{"unterminated quote"};
  if (fields->size() != cols.count) {
    throw Malformed{"expected " + std::to_string(cols.count) + " fields, got " +
                    std::to_string(fields->size())};
  }
  const auto& f = *fields;
  PostRecord r;
  r.id = std::string(text::trim(f[cols.id]));
  if (r.id.empty()) throw Malformed{"empty 'id'"};
  r.platform = parse_platform(f[cols.platform]);
  r.timestamp = parse_number<std::int64_t>(f[cols.ts], "ts");
  r.text = f[cols.text];
  r.user_id = std::string(text::trim(f[cols.user]));
  if (r.user_id.empty()) throw Malformed{"empty 'user'"};
  std::optional<double> lat, lon;
  if (cols.lat && !text::trim(f[*cols.lat]).empty()) {
    lat = parse_number<double>(f[*cols.lat], "lat");
  }
  if (cols.lon && !text::trim(f[*cols.lon]).empty()) {
    lon = parse_number<double>(f[*cols.lon], "lon");
  }
  check_record(r, lat, lon);
  return r;
}

}  // namespace

std::string_view to_string(Platform p) {
  return p == Platform::twitter ? "twitter" : "facebook";
}

bool valid_point(const GeoPoint& p) {
  return std::isfinite(p.lat) && std::isfinite(p.lon) && p.lat >= -90.0 &&
         p.lat <= 90.0 && p.lon >= -180.0 && p.lon <= 180.0;
}

RecordFormat parse_record_format(std::string_view name) {
  if (name == "jsonlines" || name == "jsonl") return RecordFormat::jsonlines;
  if (name == "csv") return RecordFormat::csv;
  throw InputError("unknown record format '" + std::string(name) + "'");
}

ParseResult parse_records(std::istream& in, RecordFormat format,
                          ParseMode mode) {
  ParseResult result;
  std::unordered_set<std::string> seen;
  std::optional<CsvColumns> columns;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = csv::chomp(raw);
    if (text::trim(line).empty()) continue;
    if (format == RecordFormat::csv && !columns) {
      columns = csv_columns(line);
      continue;
    }
    try {
      PostRecord r = format == RecordFormat::jsonlines
                         ? record_from_json(line)
                         : record_from_csv(line, *columns);
      std::string key = std::string(to_string(r.platform)) + '\x1f' + r.id;
      if (!seen.insert(std::move(key)).second) {
        throw Malformed{"duplicate id '" + r.id + "'"};
      }
      result.records.push_back(std::move(r));
    } catch (const Malformed& m) {
      if (mode == ParseMode::strict) {
        throw InputError("line " + std::to_string(line_no) + ": " + m.reason);
      }
      ++result.skipped;
    }
  }
  return result;
}

ParseResult load_records(const std::filesystem::path& path,
                         RecordFormat format, ParseMode mode) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input '" + path.string() + "'");
  try {
    return parse_records(in, format, mode);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string to_json_line(const PostRecord& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["platform"] = to_string(r.platform);
  j["ts"] = r.timestamp;
  j["text"] = r.text;
  j["user"] = r.user_id;
  if (r.geo) {
    j["lat"] = r.geo->lat;
    j["lon"] = r.geo->lon;
  }
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

void write_jsonl(std::ostream& out, std::span<const PostRecord> records) {
  for (const auto& r : records) out << to_json_line(r) << '\n';
}

KeywordSet compile_keyword_set(std::span<const std::string> lines) {
  KeywordSet set;
  std::unordered_set<std::string> seen;
  for (const auto& line : lines) {
    std::string key = text::fold_case(text::trim(line));
    if (key.empty() || key == "#") continue;
    if (!seen.insert(key).second) continue;
    if (key.front() == '#') {
      set.hashtags.push_back(std::move(key));
    } else if (key.find_first_of(" \t") != std::string::npos) {
      set.phrases.push_back(std::move(key));
    } else {
      set.tokens.push_back(std::move(key));
    }
  }
  return set;
}

std::vector<std::string> read_keyword_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string raw;
  while (std::getline(in, raw)) {
    const auto line = text::trim(raw);
    if (line.empty() || line.starts_with("//")) continue;
    lines.emplace_back(line);
  }
  return lines;
}

KeywordSet load_keyword_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open keyword file '" + path.string() + "'");
  return compile_keyword_set(read_keyword_lines(in));
}

KeywordMatcher::KeywordMatcher(const KeywordSet& set) {
  labels_ = set.phrases;
  phrase_count_ = set.phrases.size();
  for (const auto& tag : set.hashtags) {
    hashtag_index_.emplace(tag.substr(1), labels_.size());
    labels_.push_back(tag);
  }
  for (const auto& token : set.tokens) {
    token_index_.emplace(token, labels_.size());
    labels_.push_back(token);
  }
}

void KeywordMatcher::match(std::string_view text,
                           std::vector<std::size_t>& hits) const {
  const std::size_t first = hits.size();
  const std::string folded = text::fold_case(text);
  for (std::size_t i = 0; i < phrase_count_; ++i) {
    if (folded.find(labels_[i]) != std::string::npos) hits.push_back(i);
  }
  if (hashtag_index_.empty() && token_index_.empty()) return;
  std::string key;
  for (const auto& word : text::split_words(folded)) {
    key.assign(word.text);
    if (word.hashtag) {
      if (auto it = hashtag_index_.find(key); it != hashtag_index_.end()) {
        hits.push_back(it->second);
      }
    }
    if (auto it = token_index_.find(key); it != token_index_.end()) {
      hits.push_back(it->second);
    }
  }
  std::sort(hits.begin() + static_cast<std::ptrdiff_t>(first), hits.end());
  hits.erase(std::unique(hits.begin() + static_cast<std::ptrdiff_t>(first),
                         hits.end()),
             hits.end());
}

bool KeywordMatcher::matches(std::string_view text) const {
  std::vector<std::size_t> hits;
  match(text, hits);
  return !hits.empty();
}

FilterResult filter_records(std::span<const PostRecord> records,
                            const KeywordSet& set, unsigned threads) {
  const KeywordMatcher matcher(set);
  const std::size_t n_labels = matcher.labels().size();

  struct Partial {
    std::vector<std::size_t> matched;  // indices into records
    std::vector<std::size_t> counts;
  };
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(threads, records.size()));
  std::vector<Partial> partials(workers);
  auto work = [&](std::size_t w) {
    const std::size_t begin = records.size() * w / workers;
    const std::size_t end = records.size() * (w + 1) / workers;
    Partial& p = partials[w];
    p.counts.assign(n_labels, 0);
    std::vector<std::size_t> hits;
    for (std::size_t i = begin; i < end; ++i) {
      hits.clear();
      matcher.match(records[i].text, hits);
      if (hits.empty()) continue;
      p.matched.push_back(i);
      for (std::size_t h : hits) ++p.counts[h];
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  FilterResult result;
  std::vector<std::size_t> totals(n_labels, 0);
  for (const auto& p : partials) {
    for (std::size_t i : p.matched) result.matched.push_back(records[i]);
    for (std::size_t k = 0; k < p.counts.size(); ++k) totals[k] += p.counts[k];
  }
  for (std::size_t k = 0; k < n_labels; ++k) {
    result.match_stats[matcher.labels()[k]] = totals[k];
  }
  return result;
}

}  // namespace eventscope
