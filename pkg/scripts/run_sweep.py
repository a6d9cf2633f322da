"""Run every theorem check over a sweep of partitions and write a JSON report.

    python scripts/run_sweep.py --n-max 6 --out sweep.json
"""

import argparse
import json
import sys
import time

from estar.engine import default_budget
from estar.verify import run_verification, sweep_instances


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n-max", type=int, default=5)
    ap.add_argument("--all-partitions-up-to", type=int, default=5,
                    help="use every set partition up to this n, block shapes above")
    ap.add_argument("--checks", help="comma-separated check names")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out")
    args = ap.parse_args(argv)

    instances = sweep_instances(args.n_max, args.all_partitions_up_to)
    t0 = time.perf_counter()
    report = run_verification(instances, default_budget(), args.checks.split(",") if args.checks else None,
                              jobs=args.jobs)
    elapsed = time.perf_counter() - t0
    for line in report.lines():
        if not line.startswith("PASS"):
            print(line)
    counts = report.to_json()["counts"]
    print(f"{len(instances)} instances, {counts}, {elapsed:.1f}s")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(report.to_json(timings=True), fh, indent=1)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
