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
#include <utility>
#include <vector>

#include "eventscope/ingest.hpp"

namespace eventscope::geo {

enum class RegionKind { city, state, country };

RegionKind parse_region_kind(std::string_view name);
std::string_view to_string(RegionKind kind);

struct BoundingBox {
  double lat_min = 0.0;
  double lat_max = 0.0;
  double lon_min = 0.0;
  double lon_max = 0.0;

  bool contains(const GeoPoint& p) const {
    return p.lat >= lat_min && p.lat <= lat_max && p.lon >= lon_min &&
           p.lon <= lon_max;
  }
};

struct GazetteerEntry {
  std::string name;
  RegionKind kind = RegionKind::city;
  BoundingBox bbox;
  GeoPoint center;
  std::optional<int> population_rank;  // cities only, 1 = most populated
  std::optional<std::string> parent;
};

/// Immutable set of named regions. Entry names are unique per kind.
class Gazetteer {
 public:
  Gazetteer() = default;
  /// Validates every entry and the parent links; throws InputError.
  explicit Gazetteer(std::vector<GazetteerEntry> entries);

  /// CSV: name,kind,lat_min,lat_max,lon_min,lon_max,center_lat,center_lon,
  /// population_rank,parent
  static Gazetteer read_csv(std::istream& in);
  static Gazetteer load(const std::filesystem::path& path);

  std::span<const GazetteerEntry> entries() const { return entries_; }
  const GazetteerEntry* find(std::string_view name, RegionKind kind) const;
  std::size_t ranked_city_count() const { return ranked_cities_; }

 private:
  std::vector<GazetteerEntry> entries_;
  std::size_t ranked_cities_ = 0;
};

double haversine_km(const GeoPoint& a, const GeoPoint& b);

/// Pointers into the gazetteer passed to assign().
struct Assignment {
  const GazetteerEntry* country = nullptr;
  const GazetteerEntry* state = nullptr;
  const GazetteerEntry* city = nullptr;

  bool any() const { return country || state || city; }
};

/// Per level, the containing box with the nearest center. A chosen city
/// pulls in its parent state, and a state its parent country.
Assignment assign(const GeoPoint& point, const Gazetteer& gazetteer);

struct Share {
  std::int64_t count = 0;
  double percent = 0.0;
};

struct CountryShares {
  std::map<std::string, Share> countries;
  std::int64_t assigned = 0;
  std::int64_t unassigned = 0;
};

/// Percents are over assigned records. Records without geo are ignored;
/// throws InputError when none carry geo.
CountryShares country_share(std::span<const PostRecord> records,
                            const Gazetteer& gazetteer);

/// Percent of city-assigned records whose city rank is <= n.
double top_city_share(std::span<const PostRecord> records,
                      const Gazetteer& gazetteer, std::size_t n);

struct LocalActivity {
  std::int64_t count = 0;  // geo-tagged records
  double local_percent = 0.0;
};

/// Share of geo-tagged records assigned to `home_region`. State names are
/// looked up first, then countries, then cities.
LocalActivity team_local_activity(std::span<const PostRecord> records,
                                  std::string_view home_region,
                                  const Gazetteer& gazetteer);

using GridIndex = std::pair<std::int64_t, std::int64_t>;  // (lat, lon)

/// Counts per cell of `cell_size` degrees, indexed from (-90, -180).
std::map<GridIndex, std::int64_t> grid_density(
    std::span<const PostRecord> records, double cell_size);

void write_grid_csv(std::ostream& out,
                    const std::map<GridIndex, std::int64_t>& grid);

}  // namespace eventscope::geo
