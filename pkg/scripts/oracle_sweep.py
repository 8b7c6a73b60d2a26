#!/usr/bin/env python3
"""Closed-form involutions against the blow-up simulation on a (d, p, q) grid.

    python3 scripts/oracle_sweep.py --bound 60 --jobs 6
"""

import argparse
import json
import sys
import time

from geiser.verify import oracle_sweep


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dmin", type=int, default=4)
    ap.add_argument("--dmax", type=int, default=9)
    ap.add_argument("--bound", type=int, default=40)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    start = time.perf_counter()
    report = oracle_sweep(range(args.dmin, args.dmax + 1), args.bound, args.jobs)
    elapsed = time.perf_counter() - start
    print(json.dumps(report, indent=2, sort_keys=True))
    print(f"{report['comparisons']} comparisons, {len(report['mismatches'])} mismatches, {elapsed:.2f}s", file=sys.stderr)
    return 1 if report["mismatches"] else 0


if __name__ == "__main__":
    sys.exit(main())
