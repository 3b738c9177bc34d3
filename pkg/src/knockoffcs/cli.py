"""Command-line entry point: ``simulate``, ``recover``, ``knockoff-check``, ``select``.

Indices on the command line and in outputs are 0-based. Exit status is 0 on
success, 2 for bad parameters or inputs and 3 for numerical failures.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys

import numpy as np

from . import estimate, filter as kfilter, knockoff, model
from .errors import KnockoffCSError, ParameterError
from .harness import config as hconfig, plots, runner
from .pipeline import KNOCKOFFCS, LASSO, METHODS, KnockoffSettings, knockoff_cs, lasso_cs, omp_cs

log = logging.getLogger("knockoffcs")


def _fmt(v: float) -> str:
    return "inf" if math.isinf(v) else repr(float(v))


def _parse_support(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise ParameterError(f"--support must be comma-separated integers, got {text!r}") from None


def cmd_simulate(args) -> int:
    cfg = hconfig.load_config(args.config)
    if args.seed is not None:
        cfg = cfg.replace(seed=args.seed)
    records, summary = runner.run_sweep(cfg, threads=args.threads)
    paths = runner.write_outputs(args.out, records, summary, cfg, timing=args.timing)
    if not args.no_plots:
        plots.emit_plots(summary, args.out)
    failures = sum(r.metrics is None for r in records)
    print(f"wrote {len(records)} records ({failures} failed) to {paths['results']}")
    return 0


def cmd_recover(args) -> int:
    A = model.read_matrix(args.matrix)
    y = model.read_vector(args.obs)
    if A.shape[0] != y.shape[0]:
        raise ParameterError(f"matrix has {A.shape[0]} rows but observation has {y.shape[0]} entries")
    if args.support is not None:
        rec = estimate.least_squares_on_support(A, y, _parse_support(args.support), args.ridge, args.solver)
        x_hat = rec.x_hat
    elif args.method == KNOCKOFFCS:
        settings = KnockoffSettings(
            q=args.q,
            strategy=args.strategy,
            covariance=args.covariance,
            shrinkage_eps=args.eps,
            statistic=args.statistic,
            lam=args.knockoff_lambda,
            lam_ratio=args.knockoff_lambda_ratio,
            offset=args.offset,
            ridge_lambda=args.ridge,
            solver=args.solver,
        )
        res = knockoff_cs(A, y, settings, rng=model.make_rng(args.seed))
        x_hat = res.x_hat
    elif args.method == LASSO:
        fit, _, x_hat = lasso_cs(A, y, args.lam, tol=args.tol)
        if not fit.converged:
            log.warning("lasso stopped after %d sweeps without converging", fit.iterations)
    else:
        k = args.k if args.k is not None else max(A.shape[0] // 4, 0)
        _, _, x_hat = omp_cs(A, y, min(k, *A.shape))
    model.write_vector(args.out, x_hat)
    return 0


def cmd_knockoff_check(args) -> int:
    A = model.read_matrix(args.matrix)
    pair = knockoff.construct_knockoff(A, args.strategy, args.eps, model.make_rng(args.seed), args.covariance)
    rep = pair.gram_report
    if args.header:
        print("strategy,s,dev_self,dev_cross")
    print(f"{pair.strategy},{_fmt(pair.s_vector[0])},{_fmt(rep.dev_self)},{_fmt(rep.dev_cross)}")
    if args.knockoff_out:
        model.write_matrix(args.knockoff_out, pair.knockoff)
    return 0


def cmd_select(args) -> int:
    A = model.read_matrix(args.matrix)
    At = model.read_matrix(args.knockoff)
    y = model.read_vector(args.obs)
    W = kfilter.compute_w(A, At, y, args.statistic, args.lam)
    sel = kfilter.compute_threshold(W, args.q, offset=args.offset)
    print("threshold," + _fmt(sel.threshold))
    print(",".join(["support"] + [str(j) for j in sel.support]))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="knockoffcs", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a configured simulation sweep")
    sim.add_argument("--config", required=True)
    sim.add_argument("--out", required=True)
    sim.add_argument("--threads", type=int, default=1)
    sim.add_argument("--seed", type=int, default=None)
    sim.add_argument("--timing", action="store_true", help="put wall-clock times in results.csv")
    sim.add_argument("--no-plots", action="store_true")
    sim.set_defaults(func=cmd_simulate)

    rec = sub.add_parser("recover", help="reconstruct x from A and y")
    rec.add_argument("--matrix", required=True)
    rec.add_argument("--obs", required=True)
    rec.add_argument("--method", choices=METHODS, default=KNOCKOFFCS)
    rec.add_argument("--support", default=None, help="skip selection; comma-separated 0-based indices")
    rec.add_argument("--q", type=float, default=0.1)
    rec.add_argument("--lambda", dest="lam", type=float, default=0.1, help="LASSO baseline lambda")
    rec.add_argument("--k", type=int, default=None, help="OMP budget (default m // 4)")
    rec.add_argument("--tol", type=float, default=1e-8)
    rec.add_argument("--strategy", choices=knockoff.STRATEGIES, default=knockoff.GAUSSIAN)
    rec.add_argument("--covariance", choices=knockoff.COVARIANCE_ESTIMATORS, default="ledoit-wolf")
    rec.add_argument("--eps", type=float, default=1e-3)
    rec.add_argument("--statistic", choices=kfilter.STATISTICS, default=kfilter.LASSO_DIFF)
    rec.add_argument("--knockoff-lambda", type=float, default=None, help="absolute lasso-diff lambda")
    rec.add_argument(
        "--knockoff-lambda-ratio", type=float, default=0.03, help="lasso-diff lambda as a fraction of lambda_max"
    )
    rec.add_argument("--offset", type=int, choices=(0, 1), default=0)
    rec.add_argument("--ridge", type=float, default=0.0)
    rec.add_argument("--solver", choices=estimate.SOLVERS, default=estimate.DIRECT)
    rec.add_argument("--seed", type=int, default=0)
    rec.add_argument("--out", required=True)
    rec.set_defaults(func=cmd_recover)

    chk = sub.add_parser("knockoff-check", help="build a knockoff for A and report Gram deviations")
    chk.add_argument("--matrix", required=True)
    chk.add_argument("--strategy", choices=knockoff.STRATEGIES, default=knockoff.GAUSSIAN)
    chk.add_argument("--covariance", choices=knockoff.COVARIANCE_ESTIMATORS, default="sample")
    chk.add_argument("--eps", type=float, default=1e-3)
    chk.add_argument("--seed", type=int, default=0)
    chk.add_argument("--header", action="store_true")
    chk.add_argument("--knockoff-out", default=None)
    chk.set_defaults(func=cmd_knockoff_check)

    sel = sub.add_parser("select", help="knockoff threshold and support from A, A_tilde, y")
    sel.add_argument("--matrix", required=True)
    sel.add_argument("--knockoff", required=True)
    sel.add_argument("--obs", required=True)
    sel.add_argument("--q", type=float, default=0.1)
    sel.add_argument("--statistic", choices=kfilter.STATISTICS, default=kfilter.MARGINAL)
    sel.add_argument("--lambda", dest="lam", type=float, default=1e-4)
    sel.add_argument("--offset", type=int, choices=(0, 1), default=0)
    sel.set_defaults(func=cmd_select)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except KnockoffCSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except np.linalg.LinAlgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
