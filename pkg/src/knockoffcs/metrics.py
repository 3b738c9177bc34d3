"""Support-recovery and reconstruction metrics, plus assumption diagnostics.

Empty-set conventions: ``fdp(empty) = 0``, ``f1 = 0`` whenever the
selection is empty, and the coherence of an empty block is 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError


@dataclass(frozen=True)
class TrialMetrics:
    fdp: float
    power: float
    f1: float
    relative_error: float
    measurement_error: float
    support_size: int
    method: str
    runtime_ms: float


@dataclass(frozen=True)
class AssumptionReport:
    kappa_min: float
    kappa_max: float
    gamma: float
    delta_min: float


def fdp(S_hat, S) -> float:
    S_hat, S = set(S_hat), set(S)
    return len(S_hat - S) / max(len(S_hat), 1)


def power_tpr(S_hat, S) -> float:
    S_hat, S = set(S_hat), set(S)
    if not S:
        raise ParameterError("power is undefined for an empty true support")
    return len(S_hat & S) / len(S)


def precision(S_hat, S) -> float:
    return 1.0 - fdp(S_hat, S)


def f1(S_hat, S) -> float:
    S_hat, S = set(S_hat), set(S)
    if not S_hat:
        return 0.0
    if not S:
        return 0.0
    p = precision(S_hat, S)
    r = power_tpr(S_hat, S)
    if p + r == 0:
        return 0.0
    return 2 * p * r / (p + r)


def relative_error(x_hat, x) -> float:
    x = np.asarray(x, dtype=float)
    nx = np.linalg.norm(x)
    if nx == 0:
        raise ParameterError("relative error is undefined for a zero true signal")
    return float(np.linalg.norm(np.asarray(x_hat, dtype=float) - x) / nx)


def measurement_error(A, x_hat, y) -> float:
    return float(np.linalg.norm(np.asarray(A) @ np.asarray(x_hat) - np.asarray(y)))


def re_bounds(A, S_prime) -> tuple[float, float]:
    """Extreme singular values of the column submatrix ``A[:, S_prime]``."""
    A = np.asarray(A, dtype=float)
    idx = sorted(set(int(j) for j in S_prime))
    if len(idx) > A.shape[0]:
        raise ParameterError(f"|S'| = {len(idx)} exceeds m = {A.shape[0]}; the bound cannot hold")
    if not idx:
        raise ParameterError("S' must be nonempty")
    sv = np.linalg.svd(A[:, idx], compute_uv=False)
    return float(sv.min()), float(sv.max())


def coherence_gamma(A, S_c, S_f) -> float:
    """Spectral norm of ``A[:, S_c]^T A[:, S_f]``."""
    S_c, S_f = sorted(set(S_c)), sorted(set(S_f))
    if set(S_c) & set(S_f):
        raise ParameterError("index sets must be disjoint")
    if not S_c or not S_f:
        return 0.0
    A = np.asarray(A, dtype=float)
    return float(np.linalg.norm(A[:, S_c].T @ A[:, S_f], 2))


def assumption_report(A, A_tilde, x, S_hat) -> AssumptionReport:
    """Diagnostics for one fitted instance.

    ``kappa`` bounds are taken over ``S | S_hat`` (over ``S`` alone when the
    union has more than ``m`` columns), ``gamma`` between the correct and
    false selections.
    """
    from .knockoff import assumption_margin

    x = np.asarray(getattr(x, "values", x), dtype=float)
    S = set(np.flatnonzero(x).tolist())
    S_hat = set(S_hat)
    union = S | S_hat
    kmin, kmax = re_bounds(A, union if len(union) <= np.asarray(A).shape[0] else S)
    gamma = coherence_gamma(A, S_hat & S, S_hat - S)
    _, _, delta = assumption_margin(A, A_tilde, x)
    return AssumptionReport(kmin, kmax, gamma, delta)


def summarize(values) -> tuple[float, float]:
    """Mean and standard error of the mean (0 for a single value)."""
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        return float("nan"), float("nan")
    if v.size == 1:
        return float(v[0]), 0.0
    return float(v.mean()), float(v.std(ddof=1) / np.sqrt(v.size))
