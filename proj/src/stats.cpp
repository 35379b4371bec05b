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

#include "eventscope/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "eventscope/csv.hpp"
#include "eventscope/error.hpp"
#include "eventscope/text.hpp"

namespace eventscope::stats {

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw InputError("pearson: series lengths differ (" +
                     std::to_string(x.size()) + " vs " +
                     std::to_string(y.size()) + ")");
  }
  if (x.size() < 2) throw InputError("pearson: need at least two values");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) {
    throw InputError("pearson: a series has zero variance");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double pearson(const NamedSeries& x, const NamedSeries& y) {
  try {
    return pearson(std::span<const double>(x.values),
                   std::span<const double>(y.values));
  } catch (const InputError& e) {
    throw InputError(std::string(e.what()) + " [" + x.name + ", " + y.name + "]");
  }
}

std::vector<Correlation> correlation_table(std::span<const NamedSeries> series,
                                           std::span<const SeriesPair> pairs) {
  auto lookup = [&](const std::string& name) -> const NamedSeries& {
    for (const auto& s : series) {
      if (s.name == name) return s;
    }
    throw InputError("unknown series '" + name + "'");
  };
  std::vector<Correlation> rows;
  rows.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    rows.push_back({a, b, pearson(lookup(a), lookup(b))});
  }
  return rows;
}

std::vector<SeriesPair> all_pairs(std::span<const NamedSeries> series) {
  std::vector<SeriesPair> pairs;
  for (std::size_t i = 0; i < series.size(); ++i) {
    for (std::size_t j = i + 1; j < series.size(); ++j) {
      pairs.emplace_back(series[i].name, series[j].name);
    }
  }
  return pairs;
}

void write_correlation_csv(std::ostream& out,
                           std::span<const Correlation> rows) {
  out << "series_a,series_b,r\n";
  char buf[32];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%.2f", row.r);
    std::string r = buf;
    if (r == "-0.00") r = "0.00";
    out << csv::escape(row.series_a) << ',' << csv::escape(row.series_b) << ','
        << r << '\n';
  }
}

std::vector<NamedSeries> read_metrics_csv(std::istream& in) {
  std::vector<NamedSeries> series;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = csv::chomp(raw);
    if (text::trim(line).empty()) continue;
    const auto fields = csv::split_line(line);
    if (!fields) {
      throw InputError("metrics line " + std::to_string(line_no) +
                       ": unterminated quote");
    }
    if (series.empty()) {
      if (fields->size() < 2) {
        throw InputError("metrics header needs a label and a metric column");
      }
      for (std::size_t i = 1; i < fields->size(); ++i) {
        series.push_back({std::string(text::trim((*fields)[i])), {}});
      }
      continue;
    }
    if (fields->size() != series.size() + 1) {
      throw InputError("metrics line " + std::to_string(line_no) +
                       ": wrong number of fields");
    }
    for (std::size_t i = 1; i < fields->size(); ++i) {
      const std::string v(text::trim((*fields)[i]));
      try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
        series[i - 1].values.push_back(d);
      } catch (const std::logic_error&) {
        throw InputError("metrics line " + std::to_string(line_no) +
                         ": bad number '" + v + "'");
      }
    }
  }
  if (series.empty()) throw InputError("metrics table is empty");
  return series;
}

Lexicon::Lexicon(std::vector<Category> categories)
    : categories_(std::move(categories)) {
  std::set<std::string> names;
  for (auto& c : categories_) {
    if (c.name.empty()) throw InputError("lexicon category with no name");
    if (!names.insert(c.name).second) {
      throw InputError("lexicon category '" + c.name + "' defined twice");
    }
    for (auto* list : {&c.words, &c.stems}) {
      for (auto& e : *list) {
        e = text::fold_case(e);
        if (e.empty()) {
          throw InputError("empty entry in lexicon category '" + c.name + "'");
        }
        if (e.find('*') != std::string::npos) {
          throw InputError("'*' may only end a lexicon entry ('" + e + "')");
        }
      }
    }
  }
}

Lexicon Lexicon::parse(std::istream& in) {
  std::vector<Category> categories;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = text::trim(raw);
    if (line.empty() || line.starts_with("//") || line.starts_with('#')) {
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw InputError("lexicon line " + std::to_string(line_no) +
                       ": expected 'category: entries'");
    }
    Category c;
    c.name = std::string(text::trim(line.substr(0, colon)));
    std::string_view rest = line.substr(colon + 1);
    while (!rest.empty()) {
      const auto b = rest.find_first_not_of(" \t");
      if (b == std::string_view::npos) break;
      rest.remove_prefix(b);
      const auto e = std::min(rest.find_first_of(" \t"), rest.size());
      std::string entry(rest.substr(0, e));
      rest.remove_prefix(e);
      if (entry.size() > 1 && entry.back() == '*') {
        entry.pop_back();
        c.stems.push_back(std::move(entry));
      } else if (entry == "*") {
        throw InputError("lexicon line " + std::to_string(line_no) +
                         ": bare '*' entry");
      } else {
        c.words.push_back(std::move(entry));
      }
    }
    categories.push_back(std::move(c));
  }
  return Lexicon(std::move(categories));
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open lexicon '" + path.string() + "'");
  return parse(in);
}

bool Lexicon::matches(std::size_t category, std::string_view token) const {
  const auto& c = categories_.at(category);
  for (const auto& w : c.words) {
    if (token == w) return true;
  }
  for (const auto& s : c.stems) {
    if (token.starts_with(s)) return true;
  }
  return false;
}

LexiconResult lexicon_percentages(std::span<const std::string> texts,
                                  const Lexicon& lexicon) {
  LexiconResult out;
  const auto& cats = lexicon.categories();
  std::vector<std::int64_t> matched(cats.size(), 0);
  for (const auto& t : texts) {
    const std::string folded = text::fold_case(t);
    for (const auto& w : text::split_words(folded)) {
      ++out.total_tokens;
      for (std::size_t c = 0; c < cats.size(); ++c) {
        if (lexicon.matches(c, w.text)) ++matched[c];
      }
    }
  }
  if (out.total_tokens == 0) throw InputError("no tokens in the input texts");
  for (std::size_t c = 0; c < cats.size(); ++c) {
    out.categories.push_back(
        {cats[c].name, matched[c],
         100.0 * static_cast<double>(matched[c]) /
             static_cast<double>(out.total_tokens)});
  }
  return out;
}

void write_lexicon_csv(std::ostream& out, const LexiconResult& result) {
  out << "category,matched_tokens,total_tokens,percent\n";
  char buf[32];
  for (const auto& c : result.categories) {
    std::snprintf(buf, sizeof buf, "%.2f", c.percent);
    out << csv::escape(c.category) << ',' << c.matched << ','
        << result.total_tokens << ',' << buf << '\n';
  }
}

std::vector<std::pair<std::int64_t, double>> ccdf_export(
    const std::map<std::int64_t, std::int64_t>& distribution) {
  std::int64_t total = 0;
  for (const auto& [count, users] : distribution) {
    if (users < 0) throw InputError("negative frequency in distribution");
    total += users;
  }
  std::vector<std::pair<std::int64_t, double>> out;
  if (total == 0) return out;
  std::int64_t at_least = total;
  for (const auto& [count, users] : distribution) {
    out.emplace_back(count, static_cast<double>(at_least) /
                                static_cast<double>(total));
    at_least -= users;
  }
  return out;
}

}  // namespace eventscope::stats
