"""Independent reference computations used as test oracles.

Deliberately naive: plain loops, exhaustive enumeration, no shared code
with the package.
"""

import itertools
import math

import numpy as np


def naive_matvec_T(A, v):
    """``A^T v`` by explicit loops."""
    m, n = len(A), len(A[0])
    out = [0.0] * n
    for j in range(n):
        acc = 0.0
        for i in range(m):
            acc += A[i][j] * v[i]
        out[j] = acc
    return np.array(out)


def naive_matvec(A, v):
    m, n = len(A), len(A[0])
    out = [0.0] * m
    for i in range(m):
        acc = 0.0
        for j in range(n):
            acc += A[i][j] * v[j]
        out[i] = acc
    return np.array(out)


def brute_force_threshold(w, q, offset=0):
    """Scan every candidate ``t = |w_j| > 0`` with plain counting loops."""
    w = [float(v) for v in w]
    best = math.inf
    for t in {abs(v) for v in w if v != 0}:
        neg = sum(1 for v in w if v <= -t)
        pos = sum(1 for v in w if v >= t)
        if (offset + neg) / max(pos, 1) <= q and t < best:
            best = t
    support = () if math.isinf(best) else tuple(j for j, v in enumerate(w) if v >= best)
    return best, support


def lasso_kkt_oracle(A, y, lam):
    """Exhaustive active-set solve of ``(1/2m)||y - Ab||^2 + lam ||b||_1``.

    Enumerates every support and sign pattern, solves the stationarity
    equations in closed form, and keeps the pattern whose solution has the
    assumed signs and satisfies the inactive-coordinate KKT bound. Returns
    the feasible solution with the smallest objective.
    """
    A = np.asarray(A, dtype=float)
    y = np.asarray(y, dtype=float)
    m, p = A.shape
    best, best_obj = None, math.inf
    for size in range(p + 1):
        for T in itertools.combinations(range(p), size):
            for signs in itertools.product((-1.0, 1.0), repeat=size):
                b = np.zeros(p)
                if size:
                    AT = A[:, T]
                    G = AT.T @ AT / m
                    if np.linalg.matrix_rank(G) < size:
                        continue
                    bT = np.linalg.solve(G, AT.T @ y / m - lam * np.array(signs))
                    if np.any(np.sign(bT) != np.array(signs)):
                        continue
                    b[list(T)] = bT
                grad = A.T @ (y - A @ b) / m
                inactive = [j for j in range(p) if j not in T]
                if any(abs(grad[j]) > lam + 1e-12 for j in inactive):
                    continue
                r = y - A @ b
                obj = r @ r / (2 * m) + lam * np.abs(b).sum()
                if obj < best_obj:
                    best, best_obj = b, obj
    return best


def omp_step_oracle(A, y, k):
    """Greedy selection order with Gram-Schmidt residual updates."""
    A = np.asarray(A, dtype=float)
    r = np.asarray(y, dtype=float).copy()
    basis = []
    order = []
    for _ in range(k):
        if np.linalg.norm(r) <= 1e-12:
            break
        scores = [(-abs(A[:, j] @ r), j) for j in range(A.shape[1]) if j not in order]
        _, j = min(scores)  # ties resolve to the lowest index
        order.append(j)
        v = A[:, j].copy()
        for u in basis:
            v -= (u @ v) * u
        v /= np.linalg.norm(v)
        basis.append(v)
        r = r - (v @ r) * v
    return order, r
