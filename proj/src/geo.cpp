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

#include "eventscope/geo.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>

#include "eventscope/csv.hpp"
#include "eventscope/error.hpp"
#include "eventscope/text.hpp"

namespace eventscope::geo {
namespace {

constexpr double kEarthRadiusKm = 6371.0088;
constexpr double kPi = 3.14159265358979323846;

double parse_double(std::string_view s, std::size_t line, const char* what) {
  const std::string v(text::trim(s));
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos == v.size() && std::isfinite(d)) return d;
  } catch (const std::logic_error&) {
  }
  throw InputError("gazetteer line " + std::to_string(line) + ": bad " + what +
                   " '" + v + "'");
}

}  // namespace

RegionKind parse_region_kind(std::string_view name) {
  const std::string k = text::fold_case(text::trim(name));
  if (k == "city") return RegionKind::city;
  if (k == "state") return RegionKind::state;
  if (k == "country") return RegionKind::country;
  throw InputError("unknown region kind '" + std::string(name) + "'");
}

std::string_view to_string(RegionKind kind) {
  switch (kind) {
    case RegionKind::city: return "city";
    case RegionKind::state: return "state";
    case RegionKind::country: return "country";
  }
  return "city";
}

Gazetteer::Gazetteer(std::vector<GazetteerEntry> entries)
    : entries_(std::move(entries)) {
  std::set<std::pair<RegionKind, std::string>> names;
  std::set<int> ranks;
  for (const auto& e : entries_) {
    const std::string where = "gazetteer entry '" + e.name + "'";
    if (e.name.empty()) throw InputError("gazetteer entry with an empty name");
    if (!names.emplace(e.kind, e.name).second) {
      throw InputError(where + " is listed twice as " +
                       std::string(to_string(e.kind)));
    }
    const auto& b = e.bbox;
    if (!(b.lat_min <= b.lat_max && b.lon_min <= b.lon_max) ||
        !valid_point({b.lat_min, b.lon_min}) ||
        !valid_point({b.lat_max, b.lon_max})) {
      throw InputError(where + ": bounding box is not well-ordered");
    }
    if (!b.contains(e.center)) {
      throw InputError(where + ": center lies outside the bounding box");
    }
    if (e.population_rank) {
      if (e.kind != RegionKind::city) {
        throw InputError(where + ": population_rank is only for cities");
      }
      if (*e.population_rank < 1) {
        throw InputError(where + ": population_rank must be positive");
      }
      if (!ranks.insert(*e.population_rank).second) {
        throw InputError(where + ": duplicate population_rank " +
                         std::to_string(*e.population_rank));
      }
    }
  }
  ranked_cities_ = ranks.size();
  for (const auto& e : entries_) {
    if (!e.parent) continue;
    const GazetteerEntry* p = nullptr;
    if (e.kind == RegionKind::city) {
      p = find(*e.parent, RegionKind::state);
      if (!p) p = find(*e.parent, RegionKind::country);
    } else if (e.kind == RegionKind::state) {
      p = find(*e.parent, RegionKind::country);
    }
    if (!p) {
      throw InputError("gazetteer entry '" + e.name + "': parent '" +
                       *e.parent + "' is not a known enclosing region");
    }
  }
}

Gazetteer Gazetteer::read_csv(std::istream& in) {
  static const std::vector<std::string> kColumns = {
      "name",       "kind",       "lat_min",         "lat_max", "lon_min",
      "lon_max",    "center_lat", "center_lon",      "population_rank",
      "parent"};
  std::vector<GazetteerEntry> entries;
  std::string raw;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = csv::chomp(raw);
    if (text::trim(line).empty()) continue;
    const auto fields = csv::split_line(line);
    if (!fields || fields->size() != kColumns.size()) {
      throw InputError("gazetteer line " + std::to_string(line_no) +
                       ": expected " + std::to_string(kColumns.size()) +
                       " fields");
    }
    const auto& f = *fields;
    if (!header) {
      for (std::size_t i = 0; i < kColumns.size(); ++i) {
        if (text::trim(f[i]) != kColumns[i]) {
          throw InputError("gazetteer header must be: name,kind,lat_min,"
                           "lat_max,lon_min,lon_max,center_lat,center_lon,"
                           "population_rank,parent");
        }
      }
      header = true;
      continue;
    }
    GazetteerEntry e;
    e.name = std::string(text::trim(f[0]));
    e.kind = parse_region_kind(f[1]);
    e.bbox = {parse_double(f[2], line_no, "lat_min"),
              parse_double(f[3], line_no, "lat_max"),
              parse_double(f[4], line_no, "lon_min"),
              parse_double(f[5], line_no, "lon_max")};
    e.center = {parse_double(f[6], line_no, "center_lat"),
                parse_double(f[7], line_no, "center_lon")};
    if (!text::trim(f[8]).empty()) {
      e.population_rank =
          static_cast<int>(parse_double(f[8], line_no, "population_rank"));
    }
    if (!text::trim(f[9]).empty()) e.parent = std::string(text::trim(f[9]));
    entries.push_back(std::move(e));
  }
  return Gazetteer(std::move(entries));
}

Gazetteer Gazetteer::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open gazetteer '" + path.string() + "'");
  return read_csv(in);
}

const GazetteerEntry* Gazetteer::find(std::string_view name,
                                      RegionKind kind) const {
  for (const auto& e : entries_) {
    if (e.kind == kind && e.name == name) return &e;
  }
  return nullptr;
}

double haversine_km(const GeoPoint& a, const GeoPoint& b) {
  const double rad = kPi / 180.0;
  const double dlat = (b.lat - a.lat) * rad;
  const double dlon = (b.lon - a.lon) * rad;
  const double h = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(a.lat * rad) * std::cos(b.lat * rad) *
                       std::sin(dlon / 2) * std::sin(dlon / 2);
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

Assignment assign(const GeoPoint& point, const Gazetteer& gazetteer) {
  Assignment a;
  double best[3] = {std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity()};
  const GazetteerEntry** slot[3] = {&a.city, &a.state, &a.country};
  for (const auto& e : gazetteer.entries()) {
    if (!e.bbox.contains(point)) continue;
    const auto k = static_cast<std::size_t>(e.kind);
    const double d = haversine_km(point, e.center);
    if (d < best[k]) {
      best[k] = d;
      *slot[k] = &e;
    }
  }
  if (a.city && a.city->parent) {
    if (const auto* s = gazetteer.find(*a.city->parent, RegionKind::state)) {
      a.state = s;
    } else if (const auto* c =
                   gazetteer.find(*a.city->parent, RegionKind::country)) {
      a.country = c;
    }
  }
  if (a.state && a.state->parent) {
    a.country = gazetteer.find(*a.state->parent, RegionKind::country);
  }
  return a;
}

CountryShares country_share(std::span<const PostRecord> records,
                            const Gazetteer& gazetteer) {
  CountryShares out;
  for (const auto& r : records) {
    if (!r.geo) continue;
    const Assignment a = assign(*r.geo, gazetteer);
    if (a.country) {
      ++out.countries[a.country->name].count;
      ++out.assigned;
    } else {
      ++out.unassigned;
    }
  }
  if (out.assigned + out.unassigned == 0) {
    throw InputError("no geo-tagged records");
  }
  for (auto& [name, share] : out.countries) {
    share.percent = 100.0 * static_cast<double>(share.count) /
                    static_cast<double>(out.assigned);
  }
  return out;
}

double top_city_share(std::span<const PostRecord> records,
                      const Gazetteer& gazetteer, std::size_t n) {
  if (n < 1) throw InputError("top-city count must be at least 1");
  std::int64_t in_city = 0;
  std::int64_t in_top = 0;
  for (const auto& r : records) {
    if (!r.geo) continue;
    const Assignment a = assign(*r.geo, gazetteer);
    if (!a.city) continue;
    ++in_city;
    if (a.city->population_rank &&
        static_cast<std::size_t>(*a.city->population_rank) <= n) {
      ++in_top;
    }
  }
  if (in_city == 0) return 0.0;
  return 100.0 * static_cast<double>(in_top) / static_cast<double>(in_city);
}

LocalActivity team_local_activity(std::span<const PostRecord> records,
                                  std::string_view home_region,
                                  const Gazetteer& gazetteer) {
  const GazetteerEntry* home = nullptr;
  for (auto kind : {RegionKind::state, RegionKind::country, RegionKind::city}) {
    if ((home = gazetteer.find(home_region, kind))) break;
  }
  if (!home) {
    throw InputError("unknown region '" + std::string(home_region) + "'");
  }
  LocalActivity out;
  std::int64_t local = 0;
  for (const auto& r : records) {
    if (!r.geo) continue;
    ++out.count;
    const Assignment a = assign(*r.geo, gazetteer);
    const GazetteerEntry* level = home->kind == RegionKind::state   ? a.state
                                  : home->kind == RegionKind::country ? a.country
                                                                      : a.city;
    if (level == home) ++local;
  }
  if (out.count == 0) throw InputError("no geo-tagged records for the team");
  out.local_percent =
      100.0 * static_cast<double>(local) / static_cast<double>(out.count);
  return out;
}

std::map<GridIndex, std::int64_t> grid_density(
    std::span<const PostRecord> records, double cell_size) {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw InputError("cell_size must be a positive number of degrees");
  }
  std::map<GridIndex, std::int64_t> grid;
  for (const auto& r : records) {
    if (!r.geo) continue;
    const auto lat = static_cast<std::int64_t>(
        std::floor((r.geo->lat + 90.0) / cell_size));
    const auto lon = static_cast<std::int64_t>(
        std::floor((r.geo->lon + 180.0) / cell_size));
    ++grid[{lat, lon}];
  }
  return grid;
}

void write_grid_csv(std::ostream& out,
                    const std::map<GridIndex, std::int64_t>& grid) {
  out << "lat_idx,lon_idx,count\n";
  for (const auto& [cell, count] : grid) {
    out << cell.first << ',' << cell.second << ',' << count << '\n';
  }
}

}  // namespace eventscope::geo
