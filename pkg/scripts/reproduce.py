#!/usr/bin/env python3
"""Run every acceptance criterion and write a JSON report.

    python3 scripts/reproduce.py [--only 1,plane] [--jobs 4] [--json report.json]
"""

import argparse
import json
import sys

from geiser.verify import VerifyConfig, verify_all


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--only", default=None)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--fixtures", default=None)
    ap.add_argument("--json", dest="json_path", default=None, help="also write the full report here")
    args = ap.parse_args()

    results = verify_all(args.only, VerifyConfig(fixtures_dir=args.fixtures, jobs=args.jobs))
    for r in results:
        print(r.line())
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria pass")
    if args.json_path:
        with open(args.json_path, "w") as fh:
            json.dump({"schema": 1, "criteria": [r.to_json() for r in results]}, fh, indent=2, sort_keys=True)
    return 0 if passed == len(results) else 1


if __name__ == "__main__":
    sys.exit(main())
