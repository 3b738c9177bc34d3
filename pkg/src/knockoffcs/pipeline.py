"""End-to-end recovery: KnockoffCS and the two baselines behind one call."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import baselines, estimate, filter as kfilter, knockoff
from .errors import ParameterError

KNOCKOFFCS = "knockoffcs"
LASSO = "lasso"
OMP = "omp"
METHODS = (KNOCKOFFCS, LASSO, OMP)


@dataclass(frozen=True)
class KnockoffSettings:
    q: float = 0.1
    strategy: str = knockoff.GAUSSIAN
    covariance: str = "ledoit-wolf"
    shrinkage_eps: float = 1e-3
    statistic: str = kfilter.LASSO_DIFF
    # lasso-diff penalty: absolute when ``lam`` is set, otherwise
    # ``lam_ratio * ||[A, A_tilde]^T y||_inf / m``
    lam: float | None = None
    lam_ratio: float = 0.03
    offset: int = 0
    ridge_lambda: float = 0.0
    solver: str = estimate.DIRECT


@dataclass(frozen=True)
class KnockoffCSResult:
    pair: knockoff.KnockoffPair
    w: kfilter.WStatistics
    selection: kfilter.SelectionResult
    recovered: estimate.RecoveredSignal

    @property
    def x_hat(self) -> np.ndarray:
        return self.recovered.x_hat

    @property
    def support(self) -> tuple[int, ...]:
        return self.selection.support


def resolve_lasso_lambda(A, A_tilde, y, settings: KnockoffSettings) -> float:
    if settings.lam is not None:
        return float(settings.lam)
    if not settings.lam_ratio > 0:
        raise ParameterError(f"lam_ratio must be > 0, got {settings.lam_ratio}")
    lam_max = max(np.abs(A.T @ y).max(initial=0.0), np.abs(A_tilde.T @ y).max(initial=0.0)) / A.shape[0]
    return settings.lam_ratio * float(lam_max)


def knockoff_cs(A, y, settings: KnockoffSettings | None = None, rng=None, **overrides) -> KnockoffCSResult:
    """Knockoff matrix, W-statistics, threshold, then restricted LS."""
    settings = settings or KnockoffSettings()
    if overrides:
        settings = KnockoffSettings(**{**settings.__dict__, **overrides})
    A = np.asarray(A, dtype=float)
    y = np.asarray(y, dtype=float)
    pair = knockoff.construct_knockoff(
        A, settings.strategy, settings.shrinkage_eps, rng, settings.covariance
    )
    if settings.statistic == kfilter.LASSO_DIFF:
        lam = resolve_lasso_lambda(A, pair.knockoff, y, settings)
        if lam == 0.0:
            # y orthogonal to every column: all coefficients vanish for any lambda
            w = kfilter.WStatistics(np.zeros(A.shape[1]), kfilter.LASSO_DIFF, 0.0)
        else:
            w = kfilter.compute_w_lasso_diff(A, pair.knockoff, y, lam)
    else:
        w = kfilter.compute_w(A, pair.knockoff, y, settings.statistic)
    sel = kfilter.compute_threshold(w, settings.q, offset=settings.offset)
    ridge = settings.ridge_lambda
    # |S_hat| > m is only solvable with a ridge term
    if ridge == 0.0 and len(sel.support) > A.shape[0]:
        raise ParameterError(
            f"{len(sel.support)} indices selected with only {A.shape[0]} measurements; set ridge_lambda > 0"
        )
    rec = estimate.least_squares_on_support(A, y, sel.support, ridge, settings.solver)
    return KnockoffCSResult(pair, w, sel, rec)


def lasso_cs(A, y, lam: float = 0.1, tol: float = 1e-8, max_iter: int = 10_000, eps: float = 1e-10):
    """LASSO baseline: coefficients are the estimate, support read off at ``eps``."""
    fit = baselines.lasso_coordinate_descent(A, y, lam, tol=tol, max_iter=max_iter)
    support = baselines.lasso_support(fit, eps)
    x_hat = np.where(np.abs(fit.coefficients) > eps, fit.coefficients, 0.0)
    return fit, support, x_hat


def omp_cs(A, y, k: int):
    fit = baselines.omp(A, y, k)
    return fit, tuple(sorted(fit.support)), fit.coefficients
