"""Exact first-row tails against their two-sided bounds, as CSV.

    python scripts/bounds_table.py --measure Q --n-max 20 --q 2 --q 3 > q_bounds.csv
"""

import argparse
import sys

from qpartitions.bounds import bounds_report, reports_to_csv
from qpartitions.cli import parse_rational


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--measure", choices=("P", "Q"), default="P")
    ap.add_argument("--n-min", type=int, default=2)
    ap.add_argument("--n-max", type=int, default=15)
    ap.add_argument("--q", type=parse_rational, action="append")
    ap.add_argument("--r", default="all", help="'all', 'n-1' or a fixed integer")
    args = ap.parse_args()
    policy = int(args.r) if args.r.isdigit() else args.r
    rows = bounds_report(range(args.n_min, args.n_max + 1), policy, args.q or [2], args.measure)
    sys.stdout.write(reports_to_csv(rows))
    bad = [r for r in rows if not r.ok]
    print(f"{len(rows)} rows, {len(bad)} violations", file=sys.stderr)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
