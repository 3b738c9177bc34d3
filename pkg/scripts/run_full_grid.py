"""Run the full simulation grid and write CSVs plus SVG charts.

Usage: python3 scripts/run_full_grid.py [--config configs/full_grid.cfg] [--out runs/full_grid]
"""

import argparse
import sys
from pathlib import Path

from knockoffcs import cli

ROOT = Path(__file__).resolve().parent.parent


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--config", default=str(ROOT / "configs" / "full_grid.cfg"))
    p.add_argument("--out", default=str(ROOT / "runs" / "full_grid"))
    p.add_argument("--threads", type=int, default=4)
    args = p.parse_args()
    return cli.main(["simulate", "--config", args.config, "--out", args.out, "--threads", str(args.threads)])


if __name__ == "__main__":
    sys.exit(main())
