#!/usr/bin/env python3
# Copyright 2026 The elecast Authors. All rights reserved.
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

"""Regenerates the synthetic fixture files in this directory.

All data is synthetic. Output is deterministic for a given seed.
"""

import csv
import datetime as dt
import math
import pathlib
import random

HERE = pathlib.Path(__file__).resolve().parent
ELECTION = dt.date(2016, 11, 8)

STATES = [
    "AK", "AL", "AR", "AZ", "CA", "CO", "CT", "DC", "DE", "FL", "GA", "HI",
    "IA", "ID", "IL", "IN", "KS", "KY", "LA", "MA", "MD", "ME", "MI", "MN",
    "MO", "MS", "MT", "NC", "ND", "NE", "NH", "NJ", "NM", "NV", "NY", "OH",
    "OK", "OR", "PA", "RI", "SC", "SD", "TN", "TX", "UT", "VA", "VT", "WA",
    "WI", "WV", "WY",
]
DATA_POOR = {"AL", "AK", "HI", "KY", "MT", "NE", "ND", "OK", "SD", "TN",
             "WV", "WY", "DC"}
# National popular-vote spreads of past elections (Democratic minus Republican).
NATIONAL = {1976: 2.06, 1980: -9.74, 1984: -18.21, 1988: -7.72, 1992: 5.56,
            1996: 8.51, 2000: 0.52, 2004: -2.46, 2008: 7.27, 2012: 3.86,
            2016: 2.10}
POLLSTERS = ["Alpha Research", "Beta Polling", "Gamma Insights", "Delta Survey"]


def national_path(day):
    """Underlying national spread, days before the election."""
    return 3.0 + 1.5 * math.sin(day / 15.0) + 0.02 * (day - 50)


def write_rows(name, header, rows):
    with open(HERE / name, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def poll_row(rng, state, day, spread, n):
    other = round(rng.uniform(3, 9), 1)
    c2 = round((100 - other - spread) / 2, 1)
    c1 = round(c2 + spread, 1)
    date = ELECTION - dt.timedelta(days=day)
    return [rng.choice(POLLSTERS), state, date.isoformat(), n,
            rng.choice(["LV", "RV", "A"]), c1, c2, other]


def main():
    rng = random.Random(20161108)
    state_alpha = {s: round(rng.uniform(-25, 25), 2) for s in STATES}
    state_beta = {s: round(rng.uniform(0.6, 1.6), 3) for s in STATES}

    polls = []
    for _ in range(150):
        day = rng.randint(1, 100)
        spread = national_path(day) + rng.gauss(0, 2.0)
        polls.append(poll_row(rng, "US", day, spread, rng.choice([800, 1000, 1500])))
    for s in STATES:
        if s in DATA_POOR:
            count = 2 if s in {"AK", "WY", "NE"} else 0
        else:
            count = rng.randint(5, 12)
        for _ in range(count):
            day = rng.randint(1, 100)
            spread = (state_alpha[s] + state_beta[s] * national_path(day)
                      + rng.gauss(0, 2.5))
            polls.append(poll_row(rng, s, day, spread, rng.choice([400, 600, 800])))
    polls.sort(key=lambda r: (r[2], r[1]))
    header = ["pollster", "state", "date", "sample_size", "sample_type",
              "pct_c1", "pct_c2", "pct_johnson"]
    write_rows("polls.csv", header, polls)

    hist = []
    for year, nat in NATIONAL.items():
        for s in STATES:
            spread = state_alpha[s] + state_beta[s] * nat + rng.gauss(0, 3.0)
            hist.append([year, s, round(spread, 2), nat])
    write_rows("historical.csv",
               ["year", "state", "state_spread", "national_spread"], hist)

    # Landslide: a rising national lead and every state at twice it.
    blow = []
    for k in range(40):
        day = 2 + k
        blow.append(poll_row(rng, "US", day, 40.0 - 0.25 * k, 100000))
    for s in STATES:
        for k in range(4):
            day = 2 + 10 * k
            blow.append(poll_row(rng, s, day, 2.0 * (40.0 - 0.25 * (day - 2)), 100000))
    write_rows("blowout_polls.csv", header, blow)

    # Expert panel and betting-market reference for 40 days.
    start = ELECTION - dt.timedelta(days=40)
    days = [start + dt.timedelta(days=k) for k in range(40)]
    market, experts = [], []
    price = 0.65
    for k, d in enumerate(days):
        price = min(0.95, max(0.05, price + rng.gauss(0, 0.02)))
        market.append([d.isoformat(), round(price, 4)])
        exp = [
            min(1.0, max(0.0, price + 0.03 + rng.gauss(0, 0.01))),
            min(1.0, max(0.0, 0.9 + rng.gauss(0, 0.02))),
            min(1.0, max(0.0, price - 0.05 + rng.gauss(0, 0.03))),
        ]
        experts.append([d.isoformat()] + [round(v, 4) for v in exp])
    write_rows("reference.csv", ["date", "price"], market)
    write_rows("experts.csv", ["date", "steady", "bullish", "bearish"], experts)

    # Long-form forecasts for scoring.
    fc = []
    for k, d in enumerate(days[-10:]):
        fc.append(["perfect", "US", d.isoformat(), 1.0])
        fc.append(["hedger", "US", d.isoformat(), 0.7])
        for s, p in [("CA", 0.99), ("WY", 0.05)]:
            fc.append(["perfect", s, d.isoformat(), 1.0 if s == "CA" else 0.0])
            fc.append(["hedger", s, d.isoformat(), p])
    write_rows("forecasts.csv", ["forecaster", "event", "date", "p"], fc)
    write_rows("realizations.csv", ["event", "outcome"],
               [["US", 1], ["CA", 1], ["WY", 0], ["EV", 227]])
    write_rows("histograms.csv", ["forecaster", "ev", "p"],
               [["perfect", 226, 1.0], ["hedger", 538, 1.0]])


if __name__ == "__main__":
    main()
