#!/usr/bin/env python3
"""Run the full verification suite over the standard corpus and plot it.

Writes one JSON + CSV report per dimension and a combined SVG overview:

    python3 scripts/run_verification.py --dims 3 4 5 --out-dir reports/
"""

import argparse
import json
import sys
from pathlib import Path

from projgeo import bodies
from projgeo.suite import run_suite
from projgeo.svgplot import plot_reports


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dims", type=int, nargs="+", default=[3, 4, 5])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--samples", type=int, default=20_000)
    parser.add_argument("--jobs", type=int, default=4)
    parser.add_argument("--out-dir", type=Path, default=Path("reports"))
    args = parser.parse_args(argv)

    args.out_dir.mkdir(parents=True, exist_ok=True)
    reports = []
    worst = 0
    for n in args.dims:
        out = args.out_dir / f"suite-n{n}.json"
        report = run_suite(bodies.corpus(n), seed=args.seed, out=out,
                           jobs=args.jobs, samples=args.samples)
        reports.append(report)
        counts = report["summary"]["counts"]
        floor = report["summary"]["min-shadow-floor"]
        print(f"n={n}: {counts}  -> {out}")
        print(f"  smallest shadow-floor ratio {floor['smallest_ratio']:.4f} "
              f"on {floor['body']}")
        if not report["summary"]["ok"]:
            worst = 1
            for cell in report["summary"]["failures"] + report["summary"]["errors"]:
                print(f"  NOT OK: {json.dumps(cell)}")

    svg = args.out_dir / "suite-overview.svg"
    plot_reports(reports, svg)
    print(f"overview plot -> {svg}")
    return worst


if __name__ == "__main__":
    sys.exit(main())
