"""Trial and sweep execution with deterministic CSV output."""

from __future__ import annotations

import csv
import io
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .. import metrics
from ..errors import KnockoffCSError
from ..model import knockoff_rng, make_instance
from ..pipeline import KNOCKOFFCS, LASSO, OMP, KnockoffSettings, knockoff_cs, lasso_cs, omp_cs
from .config import SweepConfig, format_value, snr_label

log = logging.getLogger(__name__)

RECORD_HEADER = (
    "n,m,s,snr_db,trial,method,fdp,power,f1,relative_error,"
    "measurement_error,support_size,runtime_ms,status"
)
METRIC_FIELDS = ("fdp", "power", "f1", "relative_error", "measurement_error", "support_size")
SUMMARY_HEADER = ("n", "m", "s", "snr_db", "method", "count", "failures") + tuple(
    f"{name}_{stat}" for name in METRIC_FIELDS for stat in ("mean", "se")
)


@dataclass(frozen=True)
class RunRecord:
    n: int
    m: int
    s: int
    snr_db: object
    trial: int
    method: str
    metrics: metrics.TrialMetrics | None
    status: str = "ok"

    @property
    def key(self):
        return (self.n, self.m, self.s, snr_label(self.snr_db), self.trial, self.method)

    def row(self, timing: bool = False) -> list[str]:
        head = [str(self.n), str(self.m), str(self.s), snr_label(self.snr_db), str(self.trial), self.method]
        if self.metrics is None:
            return head + [""] * 7 + [self.status]
        mt = self.metrics
        vals = [mt.fdp, mt.power, mt.f1, mt.relative_error, mt.measurement_error]
        runtime = format_value(round(mt.runtime_ms, 3)) if timing else ""
        return head + [format_value(float(v)) for v in vals] + [str(mt.support_size), runtime, self.status]


def knockoff_settings(config: SweepConfig) -> KnockoffSettings:
    return KnockoffSettings(
        q=config.q,
        strategy=config.knockoff_strategy,
        covariance=config.knockoff_covariance,
        shrinkage_eps=config.shrinkage_eps,
        statistic=config.statistic,
        lam=config.knockoff_lambda,
        lam_ratio=config.knockoff_lambda_ratio,
        offset=config.offset,
        ridge_lambda=config.ridge_lambda,
        solver=config.solver,
    )


def omp_budget(config: SweepConfig, m: int, n: int, s: int) -> int:
    k = s if config.omp_k == "oracle" else int(config.omp_k)
    return min(k, m, n)


def run_trial(config: SweepConfig, n: int, m: int, s: int, snr_db, trial_index: int) -> list[RunRecord]:
    """Run every configured method on one shared instance.

    A failing method yields a record with ``status = "error:<Type>"`` and no
    metrics; the other methods are still reported.
    """
    inst = make_instance(n, m, s, snr_db, config.seed, trial_index, config.block_size, config.rho)
    A, x, y, S = inst.A, inst.x, inst.y, inst.support
    settings = knockoff_settings(config)
    records = []
    for method in config.methods:
        t0 = time.perf_counter()
        try:
            if method == KNOCKOFFCS:
                rng = knockoff_rng(config.seed, n, m, s, trial_index)
                res = knockoff_cs(A, y, settings, rng=rng)
                S_hat, x_hat = res.support, res.x_hat
            elif method == LASSO:
                _, S_hat, x_hat = lasso_cs(A, y, config.lasso_lambda)
            elif method == OMP:
                _, S_hat, x_hat = omp_cs(A, y, omp_budget(config, m, n, s))
            else:
                raise KnockoffCSError(f"unknown method {method}")
        except (KnockoffCSError, np.linalg.LinAlgError) as exc:
            log.warning("trial %s of cell %s: %s failed: %s", trial_index, (n, m, s, snr_db), method, exc)
            records.append(RunRecord(n, m, s, snr_db, trial_index, method, None, f"error:{type(exc).__name__}"))
            continue
        runtime_ms = (time.perf_counter() - t0) * 1e3
        tm = metrics.TrialMetrics(
            fdp=metrics.fdp(S_hat, S),
            power=metrics.power_tpr(S_hat, S),
            f1=metrics.f1(S_hat, S),
            relative_error=metrics.relative_error(x_hat, x),
            measurement_error=metrics.measurement_error(A, x_hat, y),
            support_size=len(S_hat),
            method=method,
            runtime_ms=runtime_ms,
        )
        records.append(RunRecord(n, m, s, snr_db, trial_index, method, tm))
    return records


def run_sweep(config: SweepConfig, threads: int = 1) -> tuple[list[RunRecord], list[dict]]:
    """All cells x trials x methods, plus per-(cell, method) summaries.

    Trials may run concurrently; records come back in (cell, trial, method)
    order regardless of completion order.
    """
    jobs = [(cell, t) for cell in config.cells() for t in range(config.trials)]

    def work(job):
        (n, m, s, snr), t = job
        return run_trial(config, n, m, s, snr, t)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(work, jobs))
    else:
        chunks = [work(job) for job in jobs]
    records = [rec for chunk in chunks for rec in chunk]
    keys = [r.key for r in records]
    assert len(set(keys)) == len(keys), "duplicate (cell, trial, method) record"
    return records, summarize_records(records, config)


def summarize_records(records, config: SweepConfig | None = None) -> list[dict]:
    groups: dict = {}
    for r in records:
        groups.setdefault((r.n, r.m, r.s, snr_label(r.snr_db), r.method), []).append(r)
    methods = list(config.methods) if config else sorted({r.method for r in records})
    order = {m: i for i, m in enumerate(methods)}
    rows = []
    for key in sorted(groups, key=lambda k: _cell_sort_key(k, order)):
        rs = groups[key]
        ok = [r.metrics for r in rs if r.metrics is not None]
        row = dict(zip(("n", "m", "s", "snr_db", "method"), key))
        row["count"] = len(ok)
        row["failures"] = len(rs) - len(ok)
        for name in METRIC_FIELDS:
            mean, se = metrics.summarize([getattr(mt, name) for mt in ok])
            row[f"{name}_mean"] = mean
            row[f"{name}_se"] = se
        rows.append(row)
    return rows


def _cell_sort_key(key, order):
    n, m, s, snr, method = key
    snr_num = float("inf") if snr == "noiseless" else float(snr)
    return (n, m, s, snr_num, order.get(method, len(order)), method)


def records_csv(records, config: SweepConfig | None = None, timing: bool = False) -> str:
    buf = io.StringIO()
    if config is not None:
        for line in config.echo_lines():
            buf.write(f"# {line}\n")
    buf.write(RECORD_HEADER + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    for r in records:
        writer.writerow(r.row(timing))
    return buf.getvalue()


def summary_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SUMMARY_HEADER)
    for row in rows:
        writer.writerow([format_value(row[h]) if isinstance(row[h], float) else row[h] for h in SUMMARY_HEADER])
    return buf.getvalue()


def read_records_csv(path_or_text) -> list[dict]:
    """Parse a results CSV (comment lines skipped) into dicts of strings."""
    text = path_or_text
    if isinstance(path_or_text, Path) or (isinstance(path_or_text, str) and "\n" not in path_or_text):
        text = Path(path_or_text).read_text()
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    return list(csv.DictReader(lines))


def write_outputs(out_dir, records, summary, config: SweepConfig, timing: bool = False) -> dict:
    """Write ``results.csv``, ``summary.csv`` and ``timings.csv``.

    ``results.csv`` and ``summary.csv`` are byte-reproducible; wall-clock
    times only enter ``results.csv`` when ``timing`` is set and otherwise
    go to ``timings.csv`` alone.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "results": out / "results.csv",
        "summary": out / "summary.csv",
        "timings": out / "timings.csv",
    }
    paths["results"].write_text(records_csv(records, config, timing))
    paths["summary"].write_text(summary_csv(summary))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "m", "s", "snr_db", "trial", "method", "runtime_ms"])
    for r in records:
        if r.metrics is not None:
            writer.writerow(list(r.key) + [f"{r.metrics.runtime_ms:.3f}"])
    paths["timings"].write_text(buf.getvalue())
    failures = [r for r in records if r.metrics is None]
    for r in failures:
        log.warning("failed record %s: %s", r.key, r.status)
    return paths
