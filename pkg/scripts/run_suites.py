"""Run every verification suite and print one line per rule."""

from __future__ import annotations

import argparse
import json
import os

from properization.verify import SUITES, run_suite


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--pairs", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    args = parser.parse_args()

    bad = 0
    for name in SUITES:
        print(f"[{name}]")
        for r in run_suite(name, args.pairs, seed=args.seed, jobs=args.jobs):
            v = r.verdict
            mark = "ok" if r.as_expected else "UNEXPECTED"
            print(f"  {mark:10s} {v.label:24s} after {v.pairs_tested:5d}  {json.dumps(v.rule.to_literal())} on {v.family}")
            bad += not r.as_expected
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
