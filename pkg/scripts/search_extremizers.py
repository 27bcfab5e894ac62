#!/usr/bin/env python3
"""Search for extremizers of the open-question bounds and save the traces.

For each (check, family) pair an evolution strategy perturbs a body to push
the check's lhs/rhs ratio as high as it goes; a trace that plateaus below 1
is evidence about where the true extremal constant sits:

    python3 scripts/search_extremizers.py --dim 4 --budget 200
"""

import argparse
import json
import sys
from pathlib import Path

from projgeo.suite import SEARCH_FAMILIES, SEARCH_IDS, extremizer_search

DEFAULT_PAIRS = [
    ("GHP", "random-hull"),
    ("GHP", "perturbed-cube"),
    ("T-HYPER-1", "random-hull"),
    ("T-HYPER-2", "random-zonotope"),
    ("T-HYPER-2", "perturbed-cube"),
    ("T-ZON-2", "random-zonotope"),
]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dim", type=int, default=4)
    parser.add_argument("--budget", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--samples", type=int, default=4_000)
    parser.add_argument("--out-dir", type=Path, default=Path("reports"))
    parser.add_argument("--id", choices=SEARCH_IDS, default=None,
                        help="search a single check instead of the defaults")
    parser.add_argument("--family", choices=SEARCH_FAMILIES, default=None)
    args = parser.parse_args(argv)

    pairs = DEFAULT_PAIRS
    if args.id is not None:
        pairs = [(args.id, args.family or "random-zonotope")]

    args.out_dir.mkdir(parents=True, exist_ok=True)
    for check_id, family in pairs:
        try:
            trace = extremizer_search(check_id, family, args.dim,
                                      budget=args.budget, seed=args.seed,
                                      samples=args.samples)
        except ValueError as exc:
            print(f"{check_id} x {family}: skipped ({exc})")
            continue
        best = trace[-1]
        out = args.out_dir / f"search-{check_id}-{family}-n{args.dim}.json"
        out.write_text(json.dumps(
            {"config": {"id": check_id, "family": family, "dim": args.dim,
                        "budget": args.budget, "seed": args.seed,
                        "samples": args.samples},
             "trace": [step.to_dict() for step in trace]},
            indent=2, sort_keys=True) + "\n")
        print(f"{check_id} x {family}: best ratio {best.ratio:.4f} "
              f"at step {best.step}  -> {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
