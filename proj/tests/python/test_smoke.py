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

import json
import math
import os
from pathlib import Path

import pytest

import eventscope as es
from eventscope import decay, geo, stats

DATA = Path(os.environ.get("EVENTSCOPE_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


def test_parse_and_filter():
    text = "\n".join([
        json.dumps({"id": "1", "platform": "twitter", "ts": 1366000000, "text": "Dhoni wins it #IPL", "user": "a"}),
        '{"id": "2", "platform": "twit',
        json.dumps({"id": "3", "platform": "facebook", "ts": 1366003700, "text": "I moved to MI, USA", "user": "b"}),
    ])
    records, skipped = es.parse_records(text)
    assert len(records) == 2 and skipped == 1
    with pytest.raises(es.InputError, match="line 2"):
        es.parse_records(text, strict=True)

    keywords = es.load_keyword_file(DATA / "keywords" / "ipl_collection.txt")
    matched, counts = es.filter_records(records, keywords)
    assert [r.id for r in matched] == ["1"]
    assert counts["#ipl"] == 1

    matched, _ = es.filter_records(records, es.compile_keyword_set(["mi"]))
    assert [r.id for r in matched] == ["3"]


def test_bucketize_and_users():
    base = 1364774400
    recs = [es.PostRecord(str(i), base + t, user=u)
            for i, (t, u) in enumerate([(36300, "u1"), (39000, "u1"), (40200, "u2")])]
    ts = es.bucketize(recs)
    assert ts.counts == [2, 1]
    assert es.rebucket(ts, 7200).total() == 3
    by_user, dist = es.per_user_counts(recs)
    assert by_user == {"u1": 2, "u2": 1} and dist == {1: 1, 2: 1}
    assert es.subevent_share(ts, ts) == 1.0


def test_decay_log_law():
    values = [1000.0] + [100 - 20 * math.log(t) for t in range(1, 73)]
    rep = decay.analyze_decay(values)
    assert len(rep.regions) == 1
    assert rep.net_factor == pytest.approx(0.2, abs=1e-9)
    assert "net_decay_factor: 0.2000" in rep.summary()
    assert json.loads(rep.to_json())["window_end_idx"] == 72

    alpha, beta, r2 = decay.fit_log([(t, 3 * math.log(t) + 2) for t in range(1, 20)])
    assert alpha == pytest.approx(3) and beta == pytest.approx(2)
    with pytest.raises(es.AnalysisError, match="insufficient decay data"):
        decay.analyze_decay([10.0, 9.0])

    cfg = decay.Config()
    cfg.threshold_frac = 2
    with pytest.raises(es.InputError):
        decay.analyze_decay(values, cfg)


def test_geo_and_stats():
    gaz = geo.Gazetteer.load(DATA / "gazetteer" / "india.csv")
    assert geo.assign(28.6139, 77.209, gaz) == ("India", "Delhi", "Delhi")
    assert geo.assign(-40, -140, gaz) == (None, None, None)
    pts = [(28.61, 77.2), (19.07, 72.87), (22.57, 88.36), (51.5, -0.12)]
    recs = [es.PostRecord(str(i), 1, geo=es.GeoPoint(*p)) for i, p in enumerate(pts)]
    shares, assigned, _ = geo.country_share(recs, gaz)
    assert shares["India"] == (3, 75.0) and assigned == 4

    assert stats.pearson([1, 2, 3, 4], [2, 1, 4, 3]) == pytest.approx(0.6)
    lex = stats.Lexicon.parse("pos: happy\nneg: sad\n")
    total, cats = stats.lexicon_percentages(["happy happy sad"], lex)
    assert total == 3 and cats["pos"][1] == pytest.approx(200 / 3)
    assert stats.ccdf_export({1: 3, 2: 1}) == [(1, 1.0), (2, 0.25)]


def test_run_cli(tmp_path):
    code, out, err = es.run_cli(["decay", "--threshold-frac", "2", "-o", str(tmp_path / "x")])
    assert code == 2 and "threshold_frac" in err
