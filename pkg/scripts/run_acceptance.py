"""Run every verification suite at full scale and print one line per criterion.

    python3 scripts/run_acceptance.py [--seed N] [--scale F] [--json out.json]
"""
import argparse
import json
import sys

from dmpkernel.harness import SUITES, SuiteConfig, default_seed, run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=default_seed())
    ap.add_argument("--scale", type=float, default=1.0)
    ap.add_argument("--exhaustive-n", type=int, default=6)
    ap.add_argument("--json", help="write every report to this file")
    args = ap.parse_args()

    cfg = SuiteConfig(seed=args.seed, scale=args.scale, exhaustive_n=args.exhaustive_n)
    reports = []
    for number, name in enumerate(SUITES, start=1):
        rep = run_suite(name, cfg)
        reports.append(rep.to_dict())
        print(f"criterion {number}: {rep.summary()}", flush=True)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(reports, fh, indent=2, default=str)
    failed = [r["command"] for r in reports if not r["passed"]]
    print(f"{len(reports) - len(failed)}/{len(reports)} passed (seed {args.seed})")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
