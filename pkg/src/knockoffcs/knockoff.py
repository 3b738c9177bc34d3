"""Knockoff measurement matrices and Gram-condition diagnostics.

Two constructions are provided.

``paper-fixed``
    A literal fixed-X recipe: ``Sigma = A^T A``, a constant
    ``s = min(1, 2 lambda_min(Sigma))``,
    ``C = Sigma^{-1/2} (s * Sigma^{1/2})`` and ``A_tilde = A (I - C)``.
    Because ``s`` is constant, ``C`` reduces to ``s`` times the projector on
    the range of ``Sigma`` and the knockoff is just ``(1 - s) A``. It does
    *not* satisfy the knockoff Gram conditions in general (an orthonormal
    ``A`` gives ``A_tilde = 0``), and when ``m < n`` it degenerates to
    ``A_tilde = A``. Kept for fidelity studies; :func:`validate_knockoff`
    reports the violation.

``gaussian`` (default)
    Second-order model-X knockoffs with equicorrelated ``s``. The rows of
    ``A`` are treated as samples of an ``n``-dimensional Gaussian, a
    correlation matrix ``Sigma_hat`` is estimated, and each knockoff row is
    drawn from the Gaussian conditional given the original row.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import KnockoffConstructionError, ParameterError

PAPER_FIXED = "paper-fixed"
GAUSSIAN = "gaussian"
STRATEGIES = (PAPER_FIXED, GAUSSIAN)

COVARIANCE_ESTIMATORS = ("sample", "ledoit-wolf")

# eigenvalues below this fraction of the largest are treated as zero
PINV_RTOL = 1e-10
PSD_TOL = 1e-10


@dataclass(frozen=True)
class GramReport:
    dev_self: float
    dev_cross: float
    sigma_ref: str


@dataclass(frozen=True)
class KnockoffPair:
    original: np.ndarray
    knockoff: np.ndarray
    s_vector: np.ndarray
    strategy: str
    gram_report: GramReport | None = None
    # Gram targets live on a per-column rescaled copy of A: A / column_scale.
    sigma_ref: np.ndarray | None = None
    column_scale: np.ndarray | None = None
    sigma_ref_kind: str = "A^T A"

    def __post_init__(self):
        if self.original.shape != self.knockoff.shape:
            raise ParameterError(
                f"knockoff shape {self.knockoff.shape} != original shape {self.original.shape}"
            )
        if np.any(self.s_vector < 0):
            raise ParameterError("s_vector entries must be nonnegative")


def _sym_eig(S: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    w, U = np.linalg.eigh((S + S.T) / 2.0)
    return w, U


def min_eigenvalue(Sigma: np.ndarray) -> float:
    """Smallest eigenvalue, snapped to 0 when below ``PINV_RTOL * lambda_max``."""
    w = np.linalg.eigvalsh((Sigma + Sigma.T) / 2.0)
    lam_max = max(w[-1], 0.0)
    lam_min = w[0]
    if lam_min <= PINV_RTOL * lam_max:
        return 0.0
    return float(lam_min)


def construct_knockoff_paper_fixed(A: np.ndarray) -> KnockoffPair:
    """Literal fixed-X construction; see the module docstring."""
    A = np.asarray(A, dtype=float)
    n = A.shape[1]
    Sigma = A.T @ A
    s = min(1.0, 2.0 * min_eigenvalue(Sigma))
    s_vec = np.full(n, s)
    # s is constant, so C = s Sigma^{-1/2} Sigma^{1/2} = s P with P the
    # projector onto range(A^T A); A P = A, hence A (I - C) = (1 - s) A.
    A_tilde = (1.0 - s) * A
    pair = KnockoffPair(A, A_tilde, s_vec, PAPER_FIXED, sigma_ref=Sigma, sigma_ref_kind="A^T A")
    return _with_report(pair)


def estimate_correlation(A: np.ndarray, shrinkage_eps: float, covariance: str = "sample"):
    """Unit-diagonal covariance estimate for the rows of ``A``.

    Returns ``(Sigma_hat, scale)`` with ``Sigma_hat`` on the scale of
    ``A^T A`` (so a unit-norm column has unit variance) and ``scale`` the
    per-column factor that maps it back: ``raw = scale Sigma_hat scale``.

    ``sample`` uses ``A^T A + eps I``. That estimate has rank ``m`` plus the
    jitter, so with ``m < n`` its smallest eigenvalue is about ``eps`` and the
    equicorrelated ``s`` collapses; ``ledoit-wolf`` shrinks towards a scaled
    identity first and stays usable in that regime.
    """
    if not shrinkage_eps > 0:
        raise ParameterError(f"shrinkage_eps must be > 0, got {shrinkage_eps}")
    m, n = A.shape
    if covariance == "sample":
        raw = A.T @ A
    elif covariance == "ledoit-wolf":
        from sklearn.covariance import ledoit_wolf

        raw = ledoit_wolf(A * np.sqrt(m), assume_centered=True)[0]
    else:
        raise ParameterError(f"unknown covariance estimator {covariance!r}")
    d = np.diag(raw).copy()
    if np.any(d <= 0):
        raise KnockoffConstructionError("zero column in A, correlation undefined")
    raw = raw + shrinkage_eps * np.mean(d) * np.eye(n)
    scale = np.sqrt(np.diag(raw))
    return raw / np.outer(scale, scale), scale


def construct_knockoff_gaussian(
    A: np.ndarray,
    shrinkage_eps: float = 1e-3,
    rng: np.random.Generator | None = None,
    covariance: str = "sample",
) -> KnockoffPair:
    """Sample equicorrelated second-order Gaussian knockoffs.

    With ``Sigma_hat`` the estimated correlation and ``D = s I``,
    ``s = min(1, 2 lambda_min(Sigma_hat))``, each row of the knockoff is

        A_i (I - Sigma_hat^{-1} D) + z_i,   z_i ~ N(0, (2D - D Sigma_hat^{-1} D) / m)

    computed on unit-scaled columns and mapped back. The ``1/m`` reflects
    that a row of a unit-column matrix has covariance ``Sigma_hat / m``;
    with it, ``E[A_tilde^T A_tilde] = Sigma_hat`` and
    ``E[A^T A_tilde] = Sigma_hat - D`` up to the jitter.
    """
    if rng is None:
        rng = np.random.default_rng()
    A = np.asarray(A, dtype=float)
    m, n = A.shape
    Sigma, scale = estimate_correlation(A, shrinkage_eps, covariance)
    lam_min = np.linalg.eigvalsh(Sigma)[0]
    s = min(1.0, 2.0 * max(lam_min, 0.0))
    s_vec = np.full(n, s)
    Sigma_inv = np.linalg.inv(Sigma)
    Sigma_inv = (Sigma_inv + Sigma_inv.T) / 2.0
    cond_cov = 2.0 * s * np.eye(n) - s * s * Sigma_inv
    w, U = _sym_eig(cond_cov)
    if w[0] < -PSD_TOL:
        raise KnockoffConstructionError(
            f"knockoff conditional covariance is not PSD: eigenvalue {w[0]:.3e}", eigenvalue=float(w[0])
        )
    root = (U * np.sqrt(np.clip(w, 0.0, None))) / np.sqrt(m)
    A_std = A / scale
    mean = A_std - s * (A_std @ Sigma_inv)
    A_tilde_std = mean + rng.standard_normal((m, n)) @ root.T
    pair = KnockoffPair(
        A,
        A_tilde_std * scale,
        s_vec,
        GAUSSIAN,
        sigma_ref=Sigma,
        column_scale=scale,
        sigma_ref_kind=f"{covariance} correlation + eps I",
    )
    return _with_report(pair)


def construct_knockoff(
    A: np.ndarray,
    strategy: str = GAUSSIAN,
    shrinkage_eps: float = 1e-3,
    rng: np.random.Generator | None = None,
    covariance: str = "sample",
) -> KnockoffPair:
    if strategy == PAPER_FIXED:
        return construct_knockoff_paper_fixed(A)
    if strategy == GAUSSIAN:
        return construct_knockoff_gaussian(A, shrinkage_eps, rng, covariance)
    raise ParameterError(f"unknown knockoff strategy {strategy!r}; choose from {STRATEGIES}")


def _gram_deviations(A, A_tilde, Sigma, s_vec) -> tuple[float, float]:
    dev_self = np.max(np.abs(A_tilde.T @ A_tilde - Sigma), initial=0.0)
    dev_cross = np.max(np.abs(A.T @ A_tilde - (Sigma - np.diag(s_vec))), initial=0.0)
    return float(dev_self), float(dev_cross)


def validate_knockoff(pair: KnockoffPair) -> GramReport:
    """Max-norm deviations from the knockoff Gram conditions.

    ``dev_self = ||At^T At - Sigma_ref||_max`` and
    ``dev_cross = ||A^T At - (Sigma_ref - diag(s))||_max``, where
    ``Sigma_ref`` is the Gram/covariance the strategy targets (``A^T A``
    when the pair does not carry one).
    """
    A, At = pair.original, pair.knockoff
    if pair.column_scale is not None:
        A, At = A / pair.column_scale, At / pair.column_scale
    Sigma = pair.sigma_ref if pair.sigma_ref is not None else A.T @ A
    dev_self, dev_cross = _gram_deviations(A, At, Sigma, pair.s_vector)
    return GramReport(dev_self=dev_self, dev_cross=dev_cross, sigma_ref=pair.sigma_ref_kind)


def _with_report(pair: KnockoffPair) -> KnockoffPair:
    return KnockoffPair(
        pair.original,
        pair.knockoff,
        pair.s_vector,
        pair.strategy,
        validate_knockoff(pair),
        pair.sigma_ref,
        pair.column_scale,
        pair.sigma_ref_kind,
    )


def assumption_margin(A: np.ndarray, A_tilde: np.ndarray, x) -> tuple[np.ndarray, np.ndarray, float]:
    """Signal-interaction margin between originals and knockoffs.

    ``alpha = A^T A x``, ``beta = A_tilde^T A x`` and
    ``delta_min = min over the support of |alpha_j| - |beta_j|``.
    """
    xv = getattr(x, "values", x)
    xv = np.asarray(xv, dtype=float)
    A = np.asarray(A, dtype=float)
    A_tilde = np.asarray(A_tilde, dtype=float)
    if A.shape != A_tilde.shape or A.shape[1] != xv.shape[0]:
        raise ParameterError("incompatible shapes for A, A_tilde, x")
    support = np.flatnonzero(xv)
    if support.size == 0:
        raise ParameterError("delta_min is undefined for an empty support")
    Ax = A @ xv
    alpha = A.T @ Ax
    beta = A_tilde.T @ Ax
    delta_min = float(np.min(np.abs(alpha[support]) - np.abs(beta[support])))
    return alpha, beta, delta_min
