"""Restricted least-squares / ridge reconstruction on a selected support."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from .errors import ParameterError, RankDeficiencyError

DIRECT = "direct"
CG = "cg"
SOLVERS = (DIRECT, CG)

CG_RTOL = 1e-10


@dataclass(frozen=True)
class RecoveredSignal:
    x_hat: np.ndarray
    support: tuple[int, ...]
    solver: str
    ridge_lambda: float
    residual_norm: float
    iterations: int = 0


def assemble_full_signal(x_on_support, support, n: int) -> np.ndarray:
    """Scatter support values into a length-``n`` zero vector."""
    vals = np.asarray(x_on_support, dtype=float).ravel()
    idx = np.asarray(support, dtype=int).ravel()
    if vals.shape[0] != idx.shape[0]:
        raise ParameterError(f"{vals.shape[0]} values for {idx.shape[0]} support indices")
    if idx.size and (idx.min() < 0 or idx.max() >= n):
        raise ParameterError(f"support index out of range for n={n}")
    x = np.zeros(n)
    x[idx] = vals
    return x


def conjugate_gradient(matvec, b: np.ndarray, rtol: float = CG_RTOL, max_iter: int | None = None):
    """Plain CG for a symmetric positive definite operator.

    Returns ``(x, iterations, converged)``; stops once
    ``||b - M x|| <= rtol * ||b||`` or after ``max_iter`` steps.
    """
    x = np.zeros_like(b)
    r = b.copy()
    bnorm = np.linalg.norm(b)
    if bnorm == 0.0:
        return x, 0, True
    if max_iter is None:
        max_iter = 10 * b.shape[0]
    p = r.copy()
    rs = r @ r
    for it in range(1, max_iter + 1):
        Mp = matvec(p)
        alpha = rs / (p @ Mp)
        x += alpha * p
        r -= alpha * Mp
        rs_new = r @ r
        if np.sqrt(rs_new) <= rtol * bnorm:
            return x, it, True
        p = r + (rs_new / rs) * p
        rs = rs_new
    return x, max_iter, False


def least_squares_on_support(
    A: np.ndarray,
    y: np.ndarray,
    support,
    ridge_lambda: float = 0.0,
    solver: str = DIRECT,
) -> RecoveredSignal:
    """Solve ``(A_S^T A_S + lam I) x_S = A_S^T y`` and zero-fill the rest.

    ``direct`` factorises the normal matrix (Cholesky); ``cg`` runs conjugate
    gradients on the same system with matrix-free products, to relative
    residual 1e-10 or ``10 |S|`` iterations. With ``ridge_lambda = 0`` a
    rank-deficient ``A_S`` (including ``|S| > m``) is an error.
    """
    if ridge_lambda < 0:
        raise ParameterError(f"ridge_lambda must be >= 0, got {ridge_lambda}")
    if solver not in SOLVERS:
        raise ParameterError(f"unknown solver {solver!r}; choose from {SOLVERS}")
    A = np.asarray(A, dtype=float)
    y = np.asarray(y, dtype=float)
    m, n = A.shape
    S = tuple(sorted(int(j) for j in support))
    if len(set(S)) != len(S):
        raise ParameterError("support contains duplicate indices")
    if S and (S[0] < 0 or S[-1] >= n):
        raise ParameterError(f"support index out of range for n={n}")
    if not S:
        return RecoveredSignal(np.zeros(n), S, solver, ridge_lambda, float(np.linalg.norm(y)))

    AS = A[:, S]
    k = len(S)
    if ridge_lambda == 0.0 and (k > m or np.linalg.matrix_rank(AS) < k):
        raise RankDeficiencyError(
            f"A restricted to the {k}-element support is rank deficient (m={m}); use ridge_lambda > 0"
        )
    rhs = AS.T @ y
    iterations = 0
    if solver == DIRECT:
        G = AS.T @ AS + ridge_lambda * np.eye(k)
        try:
            xs = cho_solve(cho_factor(G), rhs)
        except LinAlgError:
            raise RankDeficiencyError("normal matrix is not positive definite; use ridge_lambda > 0") from None
    else:
        xs, iterations, _ = conjugate_gradient(
            lambda v: AS.T @ (AS @ v) + ridge_lambda * v, rhs, CG_RTOL, 10 * k
        )
    x_hat = assemble_full_signal(xs, S, n)
    residual = float(np.linalg.norm(A @ x_hat - y))
    return RecoveredSignal(x_hat, S, solver, float(ridge_lambda), residual, iterations)
