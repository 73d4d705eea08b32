"""Extraction success rate and quotient size over seeds, for several families.

Thin wrapper over ``krhom sweep`` that aggregates the CSV rows.

    python3 scripts/sweep_success.py --seeds 20 --workers 4
"""

import argparse
import csv
import io
from collections import defaultdict
from contextlib import redirect_stdout

from krhom.cli import main as cli_main

JOBS = [
    # family, r, eps, m values
    ("C5*20", 3, "1/15", [30, 60, 100]),
    ("And3*10", 3, "1/40", [40, 80]),
    ("T30,3", 4, "1/15", [30]),
    ("GL4,39:C5*13", 4, "1/40", [60, 104]),
]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--max-retries", type=int, default=1)
    args = ap.parse_args(argv)

    print(f"{'family':<14} {'r':>2} {'eps':>5} {'m':>4} {'success':>8} {'sizes'}")
    for family, r, eps, ms in JOBS:
        buf = io.StringIO()
        with redirect_stdout(buf):
            cli_main(["sweep", "--family", family, "--r", str(r), "--eps", eps,
                      "--m", *map(str, ms), "--seeds", str(args.seeds), "--minimize",
                      "--max-retries", str(args.max_retries), "--workers", str(args.workers)])
        by_m = defaultdict(list)
        for row in csv.DictReader(io.StringIO(buf.getvalue())):
            by_m[int(row["m"])].append(row)
        for m, rows in sorted(by_m.items()):
            wins = [row for row in rows if row["success"] == "1"]
            sizes = sorted({int(row["quotient_size"]) for row in wins})
            print(f"{family:<14} {r:>2} {eps:>5} {m:>4} {len(wins) / len(rows):>8.2f} {sizes}")


if __name__ == "__main__":
    main()
