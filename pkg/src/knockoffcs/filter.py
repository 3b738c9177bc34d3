"""Knockoff W-statistics, the data-driven threshold and support selection."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .baselines import lasso_coordinate_descent
from .errors import ConvergenceError, ParameterError

MARGINAL = "marginal"
LASSO_DIFF = "lasso-diff"
STATISTICS = (MARGINAL, LASSO_DIFF)


@dataclass(frozen=True)
class WStatistics:
    w: np.ndarray
    statistic_kind: str
    lasso_lambda: float | None = None


@dataclass(frozen=True)
class SelectionResult:
    threshold: float
    support: tuple[int, ...]
    q: float
    fdp_curve: tuple[tuple[float, float], ...]
    adjust_kind: str = "identity"
    offset: int = 0


def _check_shapes(A, A_tilde, y):
    A = np.asarray(A, dtype=float)
    A_tilde = np.asarray(A_tilde, dtype=float)
    y = np.asarray(y, dtype=float)
    if A.shape != A_tilde.shape:
        raise ParameterError(f"A is {A.shape} but knockoff is {A_tilde.shape}")
    if A.shape[0] != y.shape[0]:
        raise ParameterError(f"A has {A.shape[0]} rows, y has length {y.shape[0]}")
    return A, A_tilde, y


def compute_w_marginal(A, A_tilde, y) -> WStatistics:
    """``W_j = |A_j^T y| - |A_tilde_j^T y|``."""
    A, A_tilde, y = _check_shapes(A, A_tilde, y)
    return WStatistics(np.abs(A.T @ y) - np.abs(A_tilde.T @ y), MARGINAL)


def compute_w_lasso_diff(
    A, A_tilde, y, lam: float, tol: float = 1e-8, max_iter: int = 10_000
) -> WStatistics:
    """Lasso coefficient difference on the augmented design ``[A, A_tilde]``.

    ``W_j = |b_j| - |b_{n+j}|``. No symmetrisation is applied, so exactly
    duplicated columns give whatever split coordinate descent lands on.
    """
    A, A_tilde, y = _check_shapes(A, A_tilde, y)
    n = A.shape[1]
    fit = lasso_coordinate_descent(np.hstack([A, A_tilde]), y, lam, tol=tol, max_iter=max_iter)
    if not fit.converged:
        raise ConvergenceError(
            f"lasso did not converge in {max_iter} sweeps (lambda={lam})", last_iterate=fit
        )
    b = fit.coefficients
    return WStatistics(np.abs(b[:n]) - np.abs(b[n:]), LASSO_DIFF, float(lam))


def compute_w(A, A_tilde, y, statistic: str = MARGINAL, lam: float = 1e-4) -> WStatistics:
    if statistic == MARGINAL:
        return compute_w_marginal(A, A_tilde, y)
    if statistic == LASSO_DIFF:
        return compute_w_lasso_diff(A, A_tilde, y, lam)
    raise ParameterError(f"unknown statistic {statistic!r}; choose from {STATISTICS}")


def compute_threshold(
    W: WStatistics | np.ndarray, q: float, adjust_kind: str = "identity", offset: int = 0
) -> SelectionResult:
    """Smallest ``t`` in ``{|W_j| : W_j != 0}`` with estimated FDP at most ``q``.

    The estimated FDP at ``t`` is
    ``(offset + #{W_j <= -t}) / max(#{W_j >= t}, 1)``; ``offset=1`` is the
    knockoff+ variant. If no candidate qualifies the threshold is ``inf`` and
    nothing is selected.
    """
    if not 0.0 < q < 1.0:
        raise ParameterError(f"q must lie in (0, 1), got {q}")
    if adjust_kind != "identity":
        raise ParameterError(f"unsupported adjust kind {adjust_kind!r}; only 'identity' is defined")
    if offset not in (0, 1):
        raise ParameterError(f"offset must be 0 or 1, got {offset}")
    w = W.w if isinstance(W, WStatistics) else np.asarray(W, dtype=float)

    cand = np.unique(np.abs(w[w != 0]))  # sorted ascending
    neg = np.sort(w[w < 0])
    pos = np.sort(w[w > 0])
    # #{w <= -t} = #{neg <= -t};  #{w >= t} = #{pos >= t}
    n_neg = np.searchsorted(neg, -cand, side="right")
    n_pos = pos.size - np.searchsorted(pos, cand, side="left")
    ratio = (offset + n_neg) / np.maximum(n_pos, 1)
    curve = tuple((float(t), float(r)) for t, r in zip(cand, ratio))
    ok = np.flatnonzero(ratio <= q)
    T = float(cand[ok[0]]) if ok.size else math.inf
    return SelectionResult(
        threshold=T,
        support=select_support(w, T),
        q=q,
        fdp_curve=curve,
        adjust_kind=adjust_kind,
        offset=offset,
    )


def select_support(W: WStatistics | np.ndarray, T: float) -> tuple[int, ...]:
    """``{j : W_j >= T}``; empty for ``T = inf``."""
    w = W.w if isinstance(W, WStatistics) else np.asarray(W, dtype=float)
    if math.isinf(T) and T > 0:
        return ()
    return tuple(int(j) for j in np.flatnonzero(w >= T))
