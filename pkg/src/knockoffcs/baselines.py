"""LASSO (cyclic coordinate descent) and OMP reference solvers.

The LASSO objective is ``(1/(2m)) ||y - A b||^2 + lam * ||b||_1``, the same
scaling scikit-learn uses. ``lam`` is therefore not comparable to values
quoted for the unscaled ``1/2 ||.||^2`` form; ``lam >= ||A^T y||_inf / m``
already gives the all-zero solution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .errors import ParameterError


@dataclass(frozen=True)
class LassoFit:
    coefficients: np.ndarray
    lam: float
    iterations: int
    converged: bool
    objective: float
    objective_path: np.ndarray  # objective after each full sweep


@dataclass(frozen=True)
class OmpFit:
    support: tuple[int, ...]  # in selection order
    coefficients: np.ndarray
    k: int
    residual_norms: tuple[float, ...]  # ||r|| after 0, 1, ... selections


def lasso_objective(A: np.ndarray, y: np.ndarray, b: np.ndarray, lam: float) -> float:
    r = y - A @ b
    return float(r @ r) / (2.0 * A.shape[0]) + lam * float(np.abs(b).sum())


# cap on restricted passes between two full sweeps
ACTIVE_PASSES = 1000


@numba.njit(cache=True)
def _cd_pass(A, b, r, col_sq, lam, coords):
    m = A.shape[0]
    max_delta = 0.0
    for j in coords:
        if col_sq[j] == 0.0:
            continue
        old = b[j]
        dot = 0.0
        for i in range(m):
            dot += A[i, j] * r[i]
        rho = (dot + col_sq[j] * old) / m
        if rho > lam:
            new = (rho - lam) * m / col_sq[j]
        elif rho < -lam:
            new = (rho + lam) * m / col_sq[j]
        else:
            new = 0.0
        delta = new - old
        if delta != 0.0:
            for i in range(m):
                r[i] -= delta * A[i, j]
            b[j] = new
            if abs(delta) > max_delta:
                max_delta = abs(delta)
    return max_delta


@numba.njit(cache=True)
def _objective(r, b, lam):
    return (r @ r) / (2.0 * r.shape[0]) + lam * np.abs(b).sum()


@numba.njit(cache=True)
def _cd_solve(A, y, b, lam, tol, max_iter, path):
    # Each full sweep is followed by passes over the nonzero coordinates
    # only; convergence is only declared after a full sweep.
    m, n = A.shape
    r = y.copy()
    for j in range(n):
        if b[j] != 0.0:
            for i in range(m):
                r[i] -= A[i, j] * b[j]
    col_sq = np.zeros(n)
    for j in range(n):
        for i in range(m):
            col_sq[j] += A[i, j] * A[i, j]
    everything = np.arange(n)
    sweeps = 0
    while sweeps < max_iter:
        delta = _cd_pass(A, b, r, col_sq, lam, everything)
        path[sweeps] = _objective(r, b, lam)
        sweeps += 1
        if delta <= tol:
            return sweeps, True
        active = np.flatnonzero(b)
        for _ in range(ACTIVE_PASSES):
            if _cd_pass(A, b, r, col_sq, lam, active) <= tol:
                break
    return sweeps, False


def lasso_coordinate_descent(
    A: np.ndarray,
    y: np.ndarray,
    lam: float,
    tol: float = 1e-8,
    max_iter: int = 10_000,
    b0: np.ndarray | None = None,
) -> LassoFit:
    """Cyclic coordinate descent with exact soft-threshold updates.

    Each coordinate uses its own curvature ``||A_j||^2 / m``, so columns need
    not be normalised. Between full sweeps the solver cycles over the current
    nonzero coordinates only. It stops when the largest coordinate change in
    a full sweep is at most ``tol``, or after ``max_iter`` full sweeps, in
    which case ``converged`` is False.
    """
    if not lam > 0:
        raise ParameterError(f"lasso lambda must be > 0, got {lam}")
    if max_iter < 1:
        raise ParameterError("max_iter must be >= 1")
    A = np.ascontiguousarray(A, dtype=float)
    y = np.ascontiguousarray(y, dtype=float)
    if A.shape[0] != y.shape[0]:
        raise ParameterError(f"A has {A.shape[0]} rows, y has length {y.shape[0]}")
    b = np.zeros(A.shape[1]) if b0 is None else np.array(b0, dtype=float)
    # Fortran order keeps column access contiguous inside the kernel
    Af = np.asfortranarray(A)
    path = np.empty(max_iter)
    sweeps, converged = _cd_solve(Af, y, b, float(lam), float(tol), int(max_iter), path)
    return LassoFit(
        coefficients=b,
        lam=float(lam),
        iterations=int(sweeps),
        converged=bool(converged),
        objective=lasso_objective(A, y, b, lam),
        objective_path=path[:sweeps].copy(),
    )


def lasso_support(fit: LassoFit | np.ndarray, eps: float = 1e-10) -> tuple[int, ...]:
    """Indices with ``|b_j| > eps``."""
    if eps < 0:
        raise ParameterError("eps must be >= 0")
    b = fit.coefficients if isinstance(fit, LassoFit) else np.asarray(fit)
    return tuple(int(j) for j in np.flatnonzero(np.abs(b) > eps))


def omp(A: np.ndarray, y: np.ndarray, k: int, residual_tol: float = 1e-12) -> OmpFit:
    """Orthogonal matching pursuit with at most ``k`` selections.

    Each step adds the unselected column most correlated with the residual
    (lowest index on ties) and refits least squares on everything selected.
    """
    A = np.asarray(A, dtype=float)
    y = np.asarray(y, dtype=float)
    m, n = A.shape
    if not 0 <= k <= min(m, n):
        raise ParameterError(f"need 0 <= k <= min(m, n) = {min(m, n)}, got {k}")
    selected: list[int] = []
    available = np.ones(n, dtype=bool)
    coef = np.zeros(0)
    r = y.copy()
    norms = [float(np.linalg.norm(r))]
    while len(selected) < k and norms[-1] > residual_tol:
        corr = np.abs(A.T @ r)
        corr[~available] = -np.inf
        j = int(np.argmax(corr))  # argmax returns the first maximiser
        selected.append(j)
        available[j] = False
        sub = A[:, selected]
        coef = np.linalg.lstsq(sub, y, rcond=None)[0]
        r = y - sub @ coef
        norms.append(float(np.linalg.norm(r)))
    b = np.zeros(n)
    if selected:
        b[selected] = coef
    return OmpFit(support=tuple(selected), coefficients=b, k=k, residual_norms=tuple(norms))
