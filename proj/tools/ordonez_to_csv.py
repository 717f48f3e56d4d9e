#!/usr/bin/env python3
"""Convert an ADL annotation file from the public binary-sensor dataset
(OrdonezA_ADLs.txt / OrdonezB_ADLs.txt) to the annotation CSV read by
adl-engine.

Input rows look like
    2011-11-28 02:27:59		2011-11-28 10:18:11		Sleeping
after a two-line header. Labels map onto the names in definitions/adl.json;
Toileting and Grooming have no definition and are dropped.

    python3 tools/ordonez_to_csv.py OrdonezA_ADLs.txt data/adl/ordonez_a.csv
"""

import argparse
import csv
import re
import sys
from pathlib import Path

LABELS = {
    "Sleeping": "Sleeping",
    "Showering": "Showering",
    "Breakfast": "Eating Breakfast",
    "Leaving": "Leaving",
    "Lunch": "Eating Lunch",
    "Snack": "Eating Snacks",
    "Spare_Time/TV": "Watching TV in Spare Time",
    "Dinner": None,
    "Toileting": None,
    "Grooming": None,
}

ROW = re.compile(r"^\s*(\d{4}-\d{2}-\d{2} \d{2}:\d{2}:\d{2})\s+(\d{4}-\d{2}-\d{2} \d{2}:\d{2}:\d{2})\s+(\S+)\s*$")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("input")
    ap.add_argument("output", nargs="?", default=str(Path(__file__).resolve().parent.parent / "data" / "adl" / "ordonez_a.csv"))
    args = ap.parse_args()

    kept = dropped = 0
    rows = []
    with open(args.input, encoding="utf-8", errors="replace") as f:
        for line_no, line in enumerate(f, 1):
            m = ROW.match(line)
            if not m:
                if line.strip() and not line.lstrip().startswith(("Start", "-")):
                    print(f"{args.input}:{line_no}: skipped unparsable line", file=sys.stderr)
                continue
            start, end, label = m.groups()
            if label not in LABELS:
                sys.exit(f"{args.input}:{line_no}: unknown label {label!r}")
            name = LABELS[label]
            if name is None:
                dropped += 1
                continue
            rows.append((start.replace(" ", "T") + "Z", end.replace(" ", "T") + "Z", name))
            kept += 1

    out = Path(args.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["start_iso8601", "end_iso8601", "activity"])
        w.writerows(rows)
    print(f"{kept} occurrences kept, {dropped} dropped -> {out}")


if __name__ == "__main__":
    main()
