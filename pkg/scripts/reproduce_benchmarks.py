#!/usr/bin/env python3
"""Run the bundled benchmark configs.

    python scripts/reproduce_benchmarks.py --scale desk   # CI-sized, minutes
    python scripts/reproduce_benchmarks.py --scale full   # full R=80/40 protocol

Desk scale uses the *_desk.json variants with reduced run counts.
Results land under results/<config-name>/; convergence curve exports of
table1/table2 double as the data behind the per-iteration comparison
plots.
"""

import argparse
import sys
from pathlib import Path

from hardctrl import cli

REPO = Path(__file__).resolve().parent.parent
SETUPS = ["table1", "table2", "fig1a", "fig1b"]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--scale", choices=("desk", "full"), default="desk")
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--only", choices=SETUPS, default=None,
                        help="run a single setup instead of all four")
    args = parser.parse_args()

    names = [args.only] if args.only else SETUPS
    for name in names:
        suffix = "_desk" if args.scale == "desk" else ""
        config = REPO / "configs" / f"{name}{suffix}.json"
        print(f"=== {config.name} ===", flush=True)
        argv = ["run", str(config)]
        if args.workers:
            argv += ["--workers", str(args.workers)]
        status = cli.main(argv)
        if status != 0:
            return status
    return 0


if __name__ == "__main__":
    sys.exit(main())
