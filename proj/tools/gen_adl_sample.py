#!/usr/bin/env python3
"""Generate the bundled single-resident ADL annotation sample.

Writes a 22-day log in the annotation CSV format for the seven activities in
definitions/adl.json. The routine is modelled on a retired resident: night
sleep, shower and breakfast after waking, weekday outings, lunch, afternoon
and evening TV, snacks. About one occurrence in eight is interrupted and
lists only part of its atomic activities and context attributes; an
interrupted breakfast makes a morning outing less likely.

Deterministic for a given --seed.
"""

import argparse
import csv
import datetime as dt
import json
import random
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def minutes(h, m=0):
    return h * 60 + m


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=2011)
    ap.add_argument("--days", type=int, default=22)
    ap.add_argument("--start", default="2011-11-28")
    ap.add_argument("--definitions", default=str(ROOT / "definitions" / "adl.json"))
    ap.add_argument("--out", default=str(ROOT / "data" / "adl" / "adl_sample.csv"))
    args = ap.parse_args()

    rng = random.Random(args.seed)
    defs = {d["name"]: d for d in json.load(open(args.definitions))["definitions"]}
    day0 = dt.datetime.fromisoformat(args.start)

    rows = []

    def add(day, start_min, dur_min, activity, partial=None):
        d = defs[activity]
        n = len(d["atomics"])
        atomics = list(range(1, n + 1))
        contexts = list(range(1, n + 1))
        if partial is None:
            partial = rng.random() < 0.12
        if partial:
            # drop a random selection of the middle and late sub-actions
            drop = rng.sample(atomics[1:], rng.randint(1, max(1, n // 2)))
            atomics = [a for a in atomics if a not in drop]
            contexts = [c for c in contexts if c not in drop or rng.random() < 0.3]
        start = day0 + dt.timedelta(days=day, minutes=start_min)
        end = start + dt.timedelta(minutes=dur_min, seconds=rng.randint(0, 59))
        rows.append((start, end, activity, atomics, contexts))
        return end, partial

    for day in range(args.days):
        weekday = (day0 + dt.timedelta(days=day)).weekday()
        weekend = weekday >= 5
        wake = minutes(7, 30 if weekend else 0) + rng.randint(-25, 40)
        t = wake

        # morning: shower then breakfast, occasionally the other way round
        if rng.random() < 0.2:
            t, bad_breakfast = add(day, t + rng.randint(5, 15), rng.randint(15, 30), "Eating Breakfast")
            t = t.hour * 60 + t.minute
            if rng.random() < 0.85:
                t, _ = add(day, t + rng.randint(5, 20), rng.randint(12, 25), "Showering")
                t = t.hour * 60 + t.minute
        else:
            if rng.random() < 0.85:
                t, _ = add(day, t + rng.randint(3, 12), rng.randint(12, 25), "Showering")
                t = t.hour * 60 + t.minute
            t, bad_breakfast = add(day, t + rng.randint(5, 20), rng.randint(15, 30), "Eating Breakfast")
            t = t.hour * 60 + t.minute

        # late morning: outing on most weekdays, less after a bad breakfast
        p_leave = (0.35 if weekend else 0.8) * (0.35 if bad_breakfast else 1.0)
        if rng.random() < p_leave:
            t, _ = add(day, t + rng.randint(15, 45), rng.randint(120, 200), "Leaving")
        else:
            t, _ = add(day, t + rng.randint(10, 40), rng.randint(60, 150), "Watching TV in Spare Time")
        t = t.hour * 60 + t.minute

        lunch = max(t + rng.randint(10, 30), minutes(12, 45) + rng.randint(-20, 30))
        t, _ = add(day, lunch, rng.randint(25, 45), "Eating Lunch")
        t = t.hour * 60 + t.minute

        # afternoon: nap or TV, then a snack
        if rng.random() < 0.3:
            t, _ = add(day, t + rng.randint(15, 40), rng.randint(40, 80), "Sleeping")
        else:
            t, _ = add(day, t + rng.randint(10, 30), rng.randint(90, 150), "Watching TV in Spare Time")
        t = t.hour * 60 + t.minute
        if rng.random() < 0.75:
            t, _ = add(day, max(t + 5, minutes(16, 30) + rng.randint(-20, 30)), rng.randint(10, 20), "Eating Snacks")
            t = t.hour * 60 + t.minute
        if weekend and rng.random() < 0.5:
            t, _ = add(day, t + rng.randint(15, 40), rng.randint(90, 150), "Leaving")
            t = t.hour * 60 + t.minute

        # evening
        t, _ = add(day, max(t + 10, minutes(19, 0) + rng.randint(-30, 30)), rng.randint(90, 150),
                   "Watching TV in Spare Time")
        t = t.hour * 60 + t.minute
        if rng.random() < 0.45:
            t, _ = add(day, t + rng.randint(2, 10), rng.randint(10, 15), "Eating Snacks")
            t = t.hour * 60 + t.minute
            if rng.random() < 0.5:
                t, _ = add(day, t + rng.randint(2, 10), rng.randint(30, 60), "Watching TV in Spare Time")
                t = t.hour * 60 + t.minute

        # night sleep runs into the next morning
        bed = max(t + rng.randint(5, 25), minutes(22, 0) + rng.randint(-20, 60))
        next_wake = 24 * 60 + minutes(7, 0) + rng.randint(-25, 40)
        add(day, bed, next_wake - bed, "Sleeping", partial=rng.random() < 0.08)

    rows.sort(key=lambda r: (r[0], r[2]))
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["start_iso8601", "end_iso8601", "activity", "observed_atomics", "satisfied_contexts", "source"])
        for start, end, activity, atomics, contexts in rows:
            w.writerow([start.strftime("%Y-%m-%dT%H:%M:%SZ"), end.strftime("%Y-%m-%dT%H:%M:%SZ"), activity,
                        ";".join(map(str, atomics)), ";".join(map(str, contexts)), "synthetic"])
    print(f"{len(rows)} occurrences -> {out}")


if __name__ == "__main__":
    main()
