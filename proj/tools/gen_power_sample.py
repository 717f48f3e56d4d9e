#!/usr/bin/env python3
"""Generate the bundled appliance power sample.

Writes one day of 6-second readings for seven appliance channels, one file
per channel in the `unix_timestamp watts` format. Each channel has a handful
of usage periods with realistic draw, standby noise, and occasional
one- or two-sample dropouts inside a usage period.

Deterministic for a given --seed.
"""

import argparse
import random
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent

# channel: (standby watts, on watts, [(start hour, duration minutes), ...])
CHANNELS = {
    "television": (0.8, 95.0, [(7.5, 40), (13.0, 70), (19.25, 150)]),
    "laptop": (0.0, 35.0, [(9.0, 120), (15.5, 60), (21.0, 45)]),
    "subwoofer": (1.5, 60.0, [(19.5, 90)]),
    "washing_machine": (0.0, 450.0, [(10.5, 95)]),
    "hob": (0.0, 1600.0, [(12.25, 30), (18.0, 45)]),
    "microwave": (1.2, 1150.0, [(8.1, 3), (12.6, 4), (17.9, 2)]),
    "toaster": (0.0, 900.0, [(7.9, 3)]),
}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=2013)
    ap.add_argument("--start", type=int, default=1364774400)  # 2013-04-01T00:00:00Z
    ap.add_argument("--hours", type=float, default=24.0)
    ap.add_argument("--period", type=int, default=6)
    ap.add_argument("--out", default=str(ROOT / "data" / "ukdale"))
    args = ap.parse_args()

    rng = random.Random(args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    n = int(args.hours * 3600 / args.period)

    for name, (standby, on, periods) in CHANNELS.items():
        active = [False] * n
        for hour, dur in periods:
            first = int(hour * 3600 / args.period)
            for i in range(first, min(n, first + int(dur * 60 / args.period))):
                active[i] = True
        with open(out / f"{name}.dat", "w") as f:
            for i in range(n):
                w = standby * rng.uniform(0.8, 1.2)
                if active[i] and rng.random() > 0.01:
                    w = on * rng.uniform(0.9, 1.1)
                f.write(f"{args.start + i * args.period} {w:.1f}\n")
        print(f"{name}: {n} samples")


if __name__ == "__main__":
    main()
