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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "eventscope/error.hpp"
#include "test_util.hpp"

namespace eventscope::geo {
namespace {

using testing::at_point;

const Gazetteer& india() {
  static const Gazetteer g =
      Gazetteer::load(std::string(EVENTSCOPE_DATA_DIR) + "/gazetteer/india.csv");
  return g;
}

constexpr const char* kHeader =
    "name,kind,lat_min,lat_max,lon_min,lon_max,center_lat,center_lon,"
    "population_rank,parent\n";

Gazetteer from_csv(const std::string& body) {
  std::istringstream in(std::string(kHeader) + body);
  return Gazetteer::read_csv(in);
}

// Two overlapping city boxes inside one state of one country.
Gazetteer overlap_fixture() {
  return from_csv(
      "Land,country,0,20,0,20,10,10,,\n"
      "Province,state,5,15,5,15,10,10,,Land\n"
      "Alpha,city,9,11,9,11,10,10,3,Province\n"
      "Beta,city,9.5,11.5,9.5,11.5,10.6,10.6,60,Province\n");
}

// Equirectangular distance; close to haversine at these scales.
double flat_km(GeoPoint a, GeoPoint b) {
  const double k = 6371.0088 * M_PI / 180.0;
  const double mid = (a.lat + b.lat) / 2 * M_PI / 180.0;
  return k * std::hypot(b.lat - a.lat, (b.lon - a.lon) * std::cos(mid));
}

TEST(Gazetteer, ShippedFixtureLoads) {
  EXPECT_EQ(india().ranked_city_count(), 54u);
  EXPECT_NE(india().find("Maharashtra", RegionKind::state), nullptr);
  EXPECT_EQ(india().find("Maharashtra", RegionKind::city), nullptr);
}

TEST(Gazetteer, ValidationErrors) {
  EXPECT_THROW(from_csv("A,city,0,1,0,1,5,5,1,\n"), InputError);         // center outside
  EXPECT_THROW(from_csv("A,city,1,0,0,1,0.5,0.5,1,\n"), InputError);     // box order
  EXPECT_THROW(from_csv("A,city,0,1,0,1,0.5,0.5,1,\nB,city,0,1,0,1,0.5,0.5,1,\n"),
               InputError);                                               // duplicate rank
  EXPECT_THROW(from_csv("A,city,0,1,0,1,0.5,0.5,1,Nowhere\n"), InputError);
  EXPECT_THROW(from_csv("A,state,0,1,0,1,0.5,0.5,4,\n"), InputError);    // rank on a state
  EXPECT_THROW(from_csv("A,town,0,1,0,1,0.5,0.5,,\n"), InputError);
  EXPECT_THROW(from_csv("A,city,0,1,0,1,0.5,0.5\n"), InputError);
  std::istringstream bad_header("name,kind\nA,city\n");
  EXPECT_THROW(Gazetteer::read_csv(bad_header), InputError);
}

TEST(Haversine, KnownDistances) {
  const GeoPoint delhi{28.6139, 77.2090}, mumbai{19.0760, 72.8777};
  EXPECT_NEAR(haversine_km(delhi, mumbai), 1148.0, 5.0);
  EXPECT_EQ(haversine_km(delhi, delhi), 0.0);
  // One degree of latitude along a meridian.
  EXPECT_NEAR(haversine_km({0, 0}, {1, 0}), 6371.0088 * M_PI / 180.0, 1.0);
}

TEST(Assign, DelhiCenter) {
  const auto a = assign({28.6139, 77.209}, india());
  ASSERT_TRUE(a.country && a.state && a.city);
  EXPECT_EQ(a.country->name, "India");
  EXPECT_EQ(a.state->name, "Delhi");
  EXPECT_EQ(a.city->name, "Delhi");
}

TEST(Assign, OceanIsUnassigned) {
  const auto a = assign({-40.0, -140.0}, india());
  EXPECT_FALSE(a.any());
}

TEST(Assign, NearestCenterAmongOverlappingCities) {
  const auto g = overlap_fixture();
  const GeoPoint p{10.4, 10.4};
  // About 62 km to Alpha and 31 km to Beta.
  const double to_alpha = flat_km(p, {10, 10});
  const double to_beta = flat_km(p, {10.6, 10.6});
  EXPECT_NEAR(haversine_km(p, {10, 10}), to_alpha, to_alpha * 0.005);
  EXPECT_NEAR(haversine_km(p, {10.6, 10.6}), to_beta, to_beta * 0.005);
  ASSERT_LT(to_beta, to_alpha);
  EXPECT_EQ(assign(p, g).city->name, "Beta");
  EXPECT_EQ(assign({10.1, 10.1}, g).city->name, "Alpha");
}

TEST(AssignProperty, CityImpliesParents) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> lat(5, 37), lon(66, 98);
  for (int i = 0; i < 20000; ++i) {
    const GeoPoint p{lat(rng), lon(rng)};
    const auto a = assign(p, india());
    const auto b = assign(p, india());
    EXPECT_EQ(a.city, b.city);
    if (a.city && a.city->parent) {
      ASSERT_NE(a.state, nullptr);
      EXPECT_EQ(a.state->name, *a.city->parent);
      ASSERT_NE(a.country, nullptr);
      EXPECT_EQ(a.country->name, *a.state->parent);
    }
  }
}

TEST(CountryShare, AllIndia) {
  const std::vector<PostRecord> r = {at_point("1", 28.6, 77.2), at_point("2", 19.07, 72.87)};
  const auto s = country_share(r, india());
  EXPECT_DOUBLE_EQ(s.countries.at("India").percent, 100.0);
}

TEST(CountryShare, ThreeToOne) {
  const std::vector<PostRecord> r = {at_point("1", 28.6, 77.2), at_point("2", 19.07, 72.87),
                                     at_point("3", 13.08, 80.27), at_point("4", 51.5, -0.12)};
  const auto s = country_share(r, india());
  EXPECT_DOUBLE_EQ(s.countries.at("India").percent, 75.0);
  EXPECT_DOUBLE_EQ(s.countries.at("United Kingdom").percent, 25.0);
  EXPECT_EQ(s.assigned, 4);
}

TEST(CountryShare, NoGeoIsAnError) {
  const std::vector<PostRecord> r = {testing::make_post("1", 5, "x")};
  EXPECT_THROW(country_share(r, india()), InputError);
}

TEST(CountryShareProperty, PercentsSumTo100) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> lat(-60, 70), lon(-180, 180);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<PostRecord> records;
    for (int i = 0; i < 500; ++i) {
      // Mix of Indian points and random points worldwide.
      if (i % 2) {
        records.push_back(at_point(std::to_string(i), 8 + (rng() % 2800) / 100.0,
                                   69 + (rng() % 2600) / 100.0));
      } else {
        records.push_back(at_point(std::to_string(i), lat(rng), lon(rng)));
      }
    }
    const auto s = country_share(records, india());
    double sum = 0;
    std::int64_t count = 0;
    for (const auto& [name, share] : s.countries) {
      sum += share.percent;
      count += share.count;
    }
    EXPECT_NEAR(sum, 100.0, 1e-9);
    EXPECT_EQ(count, s.assigned);
    EXPECT_EQ(s.assigned + s.unassigned, 500);
  }
}

TEST(TopCityShare, Examples) {
  std::vector<PostRecord> r;
  for (int i = 0; i < 4; ++i) r.push_back(at_point(std::to_string(i), 19.07, 72.87));
  EXPECT_DOUBLE_EQ(top_city_share(r, india(), 5), 100.0);

  const auto g = overlap_fixture();
  std::vector<PostRecord> split;
  for (int i = 0; i < 7; ++i) split.push_back(at_point("a" + std::to_string(i), 10, 10));
  for (int i = 0; i < 3; ++i) split.push_back(at_point("b" + std::to_string(i), 10.6, 10.6));
  EXPECT_DOUBLE_EQ(top_city_share(split, g, 50), 70.0);
  EXPECT_DOUBLE_EQ(top_city_share(split, g, 1000), 100.0);
  EXPECT_THROW(top_city_share(split, g, 0), InputError);
}

TEST(TeamLocalActivity, Examples) {
  std::vector<PostRecord> inside;
  for (int i = 0; i < 5; ++i) inside.push_back(at_point(std::to_string(i), 19.07, 72.87));
  const auto all = team_local_activity(inside, "Maharashtra", india());
  EXPECT_EQ(all.count, 5);
  EXPECT_DOUBLE_EQ(all.local_percent, 100.0);

  std::vector<PostRecord> mixed;
  for (int i = 0; i < 1000; ++i) {
    mixed.push_back(i < 367 ? at_point(std::to_string(i), 18.52, 73.85)   // Pune
                            : at_point(std::to_string(i), 28.61, 77.2));  // Delhi
  }
  EXPECT_NEAR(team_local_activity(mixed, "Maharashtra", india()).local_percent, 36.7, 1e-9);

  const std::vector<PostRecord> none = {testing::make_post("1", 5, "x")};
  EXPECT_THROW(team_local_activity(none, "Maharashtra", india()), InputError);
  EXPECT_THROW(team_local_activity(inside, "Atlantis", india()), InputError);
}

TEST(Grid, Examples) {
  const std::vector<PostRecord> one = {at_point("1", 0.1, 0.1)};
  auto g = grid_density(one, 1.0);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ((g.at({90, 180})), 1);

  const std::vector<PostRecord> two = {at_point("1", 0.1, 0.1), at_point("2", 0.9, 0.2)};
  g = grid_density(two, 1.0);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g.begin()->second, 2);

  EXPECT_THROW(grid_density(one, 0.0), InputError);
}

TEST(Grid, HundredPointsInFourCells) {
  std::vector<PostRecord> r;
  const std::pair<double, double> cells[4] = {{10.2, 70.2}, {10.7, 70.2}, {10.2, 70.7}, {20.1, 80.4}};
  const int counts[4] = {40, 30, 20, 10};
  for (int c = 0, id = 0; c < 4; ++c) {
    for (int i = 0; i < counts[c]; ++i, ++id) {
      r.push_back(at_point(std::to_string(id), cells[c].first + 0.002 * i,
                           cells[c].second + 0.001 * i));
    }
  }
  const auto g = grid_density(r, 0.5);
  ASSERT_EQ(g.size(), 4u);
  EXPECT_EQ((g.at({200, 500})), 40);  // (10.2+90)/0.5 = 200.4, (70.2+180)/0.5 = 500.4
  EXPECT_EQ((g.at({201, 500})), 30);
  EXPECT_EQ((g.at({200, 501})), 20);
  EXPECT_EQ((g.at({220, 520})), 10);

  std::ostringstream out;
  write_grid_csv(out, g);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "lat_idx,lon_idx,count");
}

TEST(GridProperty, HalvingNeverLosesCells) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lat(-89, 89), lon(-179, 179);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<PostRecord> r;
    for (int i = 0; i < 300; ++i) r.push_back(at_point(std::to_string(i), lat(rng), lon(rng) / 20));
    double cell = 8.0;
    std::size_t prev = 0;
    for (int step = 0; step < 6; ++step, cell /= 2) {
      const auto g = grid_density(r, cell);
      std::int64_t total = 0;
      for (const auto& [k, v] : g) total += v;
      EXPECT_EQ(total, 300);
      EXPECT_GE(g.size(), prev);
      prev = g.size();
    }
  }
}

}  // namespace
}  // namespace eventscope::geo
