#!/usr/bin/env python3
# Copyright 2026 The eventscope Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the synthetic demo corpus under data/demo/.

The corpus imitates a cricket league week: two matches per day with
activity bursts, a final whose activity decays logarithmically, a spot-fixing
news sub-event, off-topic noise that shares abbreviations with team names,
and a small share of geo-tagged posts. Output is byte-stable for a given seed.
"""

import argparse
import csv
import json
import math
import pathlib
import random

IST = 19800
DAY0 = 1368988200  # 2013-05-20 00:00 IST as UTC epoch seconds

TEAMS = {
    "mi": ("Mumbai Indians", ["mumbai indians", "#MI", "#mumbaiindians"], "Maharashtra"),
    "csk": ("Chennai Super Kings", ["chennai superkings", "CSK", "#CSK"], "Tamil Nadu"),
    "kkr": ("Kolkata Knight Riders", ["kolkata knight riders", "KKR", "#KKR"], "West Bengal"),
    "rcb": ("Royal Challengers Bangalore", ["royal challengers bangalore", "RCB", "#RCB"], "Karnataka"),
    "rr": ("Rajasthan Royals", ["rajasthan royals", "RR", "#RR"], "Rajasthan"),
    "sh": ("Sunrisers Hyderabad", ["sunrisers hyderabad", "#Sunrisers"], "Telangana"),
}
HOME_CITY = {"mi": "Mumbai", "csk": "Chennai", "kkr": "Kolkata",
             "rcb": "Bangalore", "rr": "Jaipur", "sh": "Hyderabad"}

# (day offset, local start hour, team a, team b)
MATCHES = [
    (0, 16, "rr", "sh"), (0, 20, "mi", "csk"),
    (1, 20, "csk", "mi"), (2, 20, "rr", "sh"),
    (3, 16, "kkr", "rcb"), (4, 20, "mi", "rr"),
    (6, 20, "csk", "mi"),  # final
]
FINAL_DAY, FINAL_HOUR = 6, 20

CHEER = ["What a win for {t}!", "{t} are the best team this season",
         "Brilliant innings, love watching {t}", "Proud of {t} tonight",
         "Awesome finish by {t}, fantastic crowd", "Congrats {t}! super game",
         "Worst bowling ever, {t} disappoint again", "Sad loss for {t} fans",
         "So nervous watching {t}, the tension is too much",
         "Great support from the crowd for {t}", "{t} vs the world, together we win"]
GENERIC = ["#IPL what a season", "Watching the IPL with family", "#IPL6 is boring today",
           "PepsiIPL tickets price is crazy", "Cheering with friends #PepsiIPL",
           "IPL auction money is insane, crores paid", "ipl2013 highlights tonight"]
SPOT = ["Sreesanth arrested for spot fixing, shame #IPL",
        "Bookie links and fix allegations everywhere, worried about IPL",
        "Meiyappan questioned, is the IPL fixed?",
        "Raj Kundra betting news, fans angry #IPL",
        "Srinivasan should resign after the fixing scandal"]
NOISE = ["I moved to MI, USA last year", "Snow again in Detroit, MI",
         "mi casa es su casa", "The DD form is due tomorrow",
         "Lunch at the new cafe downtown", "Traffic is terrible today",
         "Xiaomi MI phone review is out"]
ABROAD = [(51.5074, -0.1278), (40.7128, -74.0060), (25.2048, 55.2708),
          (-33.8688, 151.2093), (-26.2041, 28.0473), (53.4808, -2.2426)]
OCEAN = [(10.0, 65.0), (-5.0, 80.0), (15.0, 88.5)]


def load_cities(gazetteer):
    with open(gazetteer, newline="") as fh:
        rows = [r for r in csv.DictReader(fh) if r["kind"] == "city"]
    return {r["name"]: (float(r["center_lat"]), float(r["center_lon"]),
                        int(r["population_rank"])) for r in rows}


def hourly_profile():
    """Expected posts per local hour over eight days."""
    hours = 8 * 24
    rate = [4.0 + 2.0 * math.sin(2 * math.pi * ((h % 24) - 9) / 24) for h in range(hours)]
    for day, start, _, _ in MATCHES:
        if (day, start) == (FINAL_DAY, FINAL_HOUR):
            continue
        for k, w in enumerate([60, 140, 180, 120, 30]):
            rate[day * 24 + start + k] += w
    # Final: ramp to the peak, then a log decay with a spike ten hours on.
    peak = FINAL_DAY * 24 + FINAL_HOUR + 3
    for k, w in enumerate([150, 320, 520]):
        rate[peak - 3 + k] += w
    rate[peak] += 900
    for t in range(1, hours - peak):
        rate[peak + t] += max(0.0, 900 * (1 - 0.3 * math.log(t)))
    rate[peak + 10] *= 3.0
    return rate


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=None)
    parser.add_argument("--seed", type=int, default=2013)
    args = parser.parse_args()
    root = pathlib.Path(__file__).resolve().parents[1]
    out = pathlib.Path(args.out) if args.out else root / "data" / "demo"
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(args.seed)
    cities = load_cities(root / "data" / "gazetteer" / "india.csv")
    city_names = sorted(cities, key=lambda c: cities[c][2])

    def user():
        return "u%d" % min(4000, int(rng.paretovariate(1.1)))

    def geo_point(team):
        u = rng.random()
        if team and u < 0.35:
            lat, lon, _ = cities[HOME_CITY[team]]
        elif u < 0.70:
            lat, lon, _ = cities[city_names[min(len(city_names) - 1, int(rng.expovariate(1 / 8)))]]
        elif u < 0.78:
            lat, lon = rng.uniform(20.0, 27.0), rng.uniform(78.5, 84.0)  # upcountry
        elif u < 0.95:
            lat, lon = rng.choice(ABROAD)
        else:
            lat, lon = rng.choice(OCEAN)
        return round(lat + rng.gauss(0, 0.05), 5), round(lon + rng.gauss(0, 0.05), 5)

    def match_at(h):
        for day, start, a, b in MATCHES:
            if 0 <= h - (day * 24 + start) <= 6:
                return a, b
        return None

    posts = []
    for h, rate in enumerate(hourly_profile()):
        n = int(round(rate * rng.uniform(0.95, 1.05)))
        teams = match_at(h) or (rng.choice(list(TEAMS)), rng.choice(list(TEAMS)))
        for _ in range(n):
            u = rng.random()
            team = None
            if u < 0.12:
                text = rng.choice(NOISE)
            elif u < 0.22 and h >= 24:
                text = rng.choice(SPOT)
            elif u < 0.40:
                text = rng.choice(GENERIC)
            else:
                team = rng.choice(teams)
                text = rng.choice(CHEER).format(t=rng.choice(TEAMS[team][1]))
            ts = DAY0 + h * 3600 + rng.randrange(3600)
            rec = {"id": str(len(posts) + 1),
                   "platform": "twitter" if rng.random() < 0.7 else "facebook",
                   "ts": ts, "text": text, "user": user()}
            if rng.random() < 0.15:
                rec["lat"], rec["lon"] = geo_point(team)
            posts.append(rec)
    posts.sort(key=lambda r: (r["ts"], int(r["id"])))
    with open(out / "posts.jsonl", "w") as fh:
        for rec in posts:
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")
        fh.write('{"id": "broken", "platform": "twitter", "ts": 13\n')

    metrics = [
        # team, brand value (USD m), page likes (m), tweets (k), posts (k); synthetic
        ("Mumbai Indians", 57.5, 4.1, 410, 160),
        ("Chennai Super Kings", 66.2, 4.6, 480, 190),
        ("Kolkata Knight Riders", 55.8, 4.9, 330, 150),
        ("Royal Challengers Bangalore", 54.3, 3.8, 300, 120),
        ("Rajasthan Royals", 41.9, 1.9, 210, 70),
        ("Sunrisers Hyderabad", 38.6, 1.2, 180, 60),
        ("Delhi Daredevils", 44.1, 2.0, 150, 65),
        ("Kings XI Punjab", 43.5, 2.2, 160, 72),
    ]
    with open(out / "team_metrics_synthetic.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["team", "brand_value", "page_likes", "tweets", "fb_posts"])
        w.writerows(metrics)

    config = {
        "inputs": ["posts.jsonl"],
        "keywords": "../keywords/ipl_collection.txt",
        "subevent_keywords": "../keywords/spotfixing.txt",
        "tz_offset": IST,
        "gazetteer": "../gazetteer/india.csv",
        "lexicon": "../lexicon/demo.txt",
        "metrics": "team_metrics_synthetic.csv",
        "pairs": [["brand_value", "page_likes"], ["brand_value", "tweets"],
                  ["page_likes", "tweets"], ["tweets", "fb_posts"]],
        "teams": [{"name": name, "keywords": kws, "home_region": home}
                  for name, kws, home in (TEAMS[k] for k in ("mi", "csk", "kkr", "rcb"))],
        "out": "out",
    }
    with open(out / "report.json", "w") as fh:
        json.dump(config, fh, indent=2)
        fh.write("\n")
    print(f"wrote {len(posts)} posts to {out}")


if __name__ == "__main__":
    main()
