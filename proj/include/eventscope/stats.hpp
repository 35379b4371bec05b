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
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace eventscope::stats {

struct NamedSeries {
  std::string name;
  std::vector<double> values;
};

/// Pearson product-moment correlation. Throws InputError on a length
/// mismatch, fewer than two values or zero variance.
double pearson(std::span<const double> x, std::span<const double> y);
double pearson(const NamedSeries& x, const NamedSeries& y);

struct Correlation {
  std::string series_a;
  std::string series_b;
  double r = 0.0;
};

using SeriesPair = std::pair<std::string, std::string>;

std::vector<Correlation> correlation_table(std::span<const NamedSeries> series,
                                           std::span<const SeriesPair> pairs);

/// Every unordered pair of distinct series, in column order.
std::vector<SeriesPair> all_pairs(std::span<const NamedSeries> series);

/// "series_a,series_b,r" with r to two decimals.
void write_correlation_csv(std::ostream& out,
                           std::span<const Correlation> rows);

/// Column-per-metric table: the first column is a row label, every other
/// column becomes one NamedSeries.
std::vector<NamedSeries> read_metrics_csv(std::istream& in);

class Lexicon {
 public:
  struct Category {
    std::string name;
    std::vector<std::string> words;  // exact
    std::vector<std::string> stems;  // prefix, '*' stripped
  };

  Lexicon() = default;
  explicit Lexicon(std::vector<Category> categories);

  /// One category per line: "name: word stem* ...". Blank lines and lines
  /// starting with "//" or "#" are skipped.
  static Lexicon parse(std::istream& in);
  static Lexicon load(const std::filesystem::path& path);

  const std::vector<Category>& categories() const { return categories_; }
  bool matches(std::size_t category, std::string_view token) const;

 private:
  std::vector<Category> categories_;
};

struct CategoryShare {
  std::string category;
  std::int64_t matched = 0;
  double percent = 0.0;
};

struct LexiconResult {
  std::int64_t total_tokens = 0;
  std::vector<CategoryShare> categories;  // lexicon order
};

LexiconResult lexicon_percentages(std::span<const std::string> texts,
                                  const Lexicon& lexicon);

void write_lexicon_csv(std::ostream& out, const LexiconResult& result);

/// (count, P(X >= count)) for a count -> frequency distribution.
std::vector<std::pair<std::int64_t, double>> ccdf_export(
    const std::map<std::int64_t, std::int64_t>& distribution);

}  // namespace eventscope::stats
