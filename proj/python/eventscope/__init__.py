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

"""Event activity analytics for social media posts."""

from ._core import (
    AnalysisError,
    GeoPoint,
    InputError,
    KeywordSet,
    Overlay,
    Platform,
    PostRecord,
    TimeSeries,
    bucketize,
    bucketize_timestamps,
    compile_keyword_set,
    daywise_overlay,
    decay,
    filter_records,
    geo,
    load_keyword_file,
    load_records,
    parse_records,
    per_user_counts,
    rebucket,
    run_cli,
    stats,
    subevent_share,
)

__version__ = "0.1.0"
