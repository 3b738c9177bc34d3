"""Mean relative error of KnockoffCS as the number of measurements grows.

Prints one CSV row per m together with sqrt(log n / m) for reference.
"""

import argparse
import csv
import math
import sys

from knockoffcs.harness import SweepConfig, run_sweep


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=500)
    p.add_argument("--s", type=int, default=5)
    p.add_argument("--snr", type=float, default=30.0)
    p.add_argument("--m", type=int, nargs="+", default=[50, 100, 200, 400])
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=20240601)
    p.add_argument("--threads", type=int, default=4)
    args = p.parse_args()

    cfg = SweepConfig(
        n_list=(args.n,), m_list=tuple(args.m), s_list=(args.s,), snr_db_list=(args.snr,),
        trials=args.trials, seed=args.seed, methods=("knockoffcs",),
    )
    _, summary = run_sweep(cfg, threads=args.threads)
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["m", "relative_error", "se", "sqrt_log_n_over_m"])
    for row in summary:
        out.writerow([row["m"], f"{row['relative_error_mean']:.4f}", f"{row['relative_error_se']:.4f}",
                      f"{math.sqrt(math.log(args.n) / row['m']):.4f}"])
    return 0


if __name__ == "__main__":
    sys.exit(main())
