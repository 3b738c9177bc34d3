"""Synthetic compressive-sensing instances.

Every random draw goes through a Philox generator keyed by a
``numpy.random.SeedSequence`` whose spawn key encodes the problem size and
trial index, so a trial can be regenerated in isolation and trials can be
produced in any order (or in parallel) without changing their contents.

Stream layout for one trial, keyed by ``(n, m, s, trial_index)``:

1. measurement matrix (``m x n`` standard normals, block-mixed),
2. support (``Generator.choice`` without replacement) and nonzero values,
3. noise (``m`` standard normals, scaled by sigma).

The SNR is deliberately not part of the key: the same ``(A, x)`` and the
same unit noise direction are reused across SNR levels, which keeps
SNR sweeps free of between-level sampling noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DegenerateSignalError, ParameterError

NOISELESS = "noiseless"

# Separates the knockoff sampling stream from the instance stream.
_KNOCKOFF_STREAM = 1


def make_rng(seed: int, *key: int) -> np.random.Generator:
    """Philox generator for substream ``key`` of ``seed``."""
    if seed < 0 or any(k < 0 for k in key):
        raise ParameterError("seed and stream keys must be nonnegative")
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


def parse_snr(value) -> float | str:
    """Normalise an SNR value to a float in dB or ``NOISELESS``."""
    if value is None:
        return NOISELESS
    if isinstance(value, str):
        v = value.strip().lower()
        if v in (NOISELESS, "inf", "none"):
            return NOISELESS
        try:
            value = float(v)
        except ValueError:
            raise ParameterError(f"bad SNR value {value!r}") from None
    value = float(value)
    if math.isinf(value) and value > 0:
        return NOISELESS
    if not math.isfinite(value):
        raise ParameterError(f"bad SNR value {value!r}")
    return value


@dataclass(frozen=True)
class SparseSignal:
    values: np.ndarray
    support: tuple[int, ...]

    @property
    def sparsity(self) -> int:
        return len(self.support)

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class MeasurementMatrix:
    entries: np.ndarray
    block_size: int = 1
    rho: float = 0.0
    columns_normalized: bool = True

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape


@dataclass(frozen=True)
class Observation:
    y: np.ndarray
    sigma: float
    snr_db: float | str

    @property
    def noiseless(self) -> bool:
        return self.snr_db == NOISELESS


@dataclass(frozen=True)
class ProblemInstance:
    signal: SparseSignal
    matrix: MeasurementMatrix
    obs: Observation
    seed: int
    trial_index: int
    params: dict = field(default_factory=dict)

    @property
    def A(self) -> np.ndarray:
        return self.matrix.entries

    @property
    def x(self) -> np.ndarray:
        return self.signal.values

    @property
    def y(self) -> np.ndarray:
        return self.obs.y

    @property
    def support(self) -> tuple[int, ...]:
        return self.signal.support


def generate_sparse_signal(n: int, s: int, rng: np.random.Generator) -> SparseSignal:
    """Random ``s``-sparse vector of length ``n`` with unit l2 norm.

    The support is uniform without replacement and the nonzeros are standard
    normal before rescaling.
    """
    if n < 1 or not 1 <= s <= n:
        raise ParameterError(f"need 1 <= s <= n, got n={n}, s={s}")
    support = np.sort(rng.choice(n, size=s, replace=False))
    vals = rng.standard_normal(s)
    norm = np.linalg.norm(vals)
    # a draw of exact zeros has probability zero but would break the invariant
    while norm == 0.0:
        vals = rng.standard_normal(s)
        norm = np.linalg.norm(vals)
    x = np.zeros(n)
    x[support] = vals / norm
    return SparseSignal(values=x, support=tuple(int(j) for j in support))


def block_covariance(size: int, rho: float) -> np.ndarray:
    return np.full((size, size), rho) + (1.0 - rho) * np.eye(size)


def generate_block_correlated_matrix(
    m: int, n: int, block_size: int, rho: float, rng: np.random.Generator
) -> MeasurementMatrix:
    """Gaussian matrix with equicorrelated contiguous column blocks.

    Rows are i.i.d.; columns inside a block have pairwise correlation ``rho``
    and blocks are independent. A trailing block shorter than ``block_size``
    gets its own smaller covariance. Columns are rescaled to unit l2 norm.
    """
    if m < 1 or n < 1:
        raise ParameterError(f"need m, n >= 1, got m={m}, n={n}")
    if block_size < 1:
        raise ParameterError(f"block_size must be >= 1, got {block_size}")
    if not 0.0 <= rho < 1.0:
        raise ParameterError(f"rho must lie in [0, 1), got {rho}")
    Z = rng.standard_normal((m, n))
    A = np.empty((m, n))
    full = np.linalg.cholesky(block_covariance(block_size, rho))
    for start in range(0, n, block_size):
        k = min(block_size, n - start)
        L = full if k == block_size else np.linalg.cholesky(block_covariance(k, rho))
        A[:, start:start + k] = Z[:, start:start + k] @ L.T
    A /= np.linalg.norm(A, axis=0)
    return MeasurementMatrix(entries=A, block_size=block_size, rho=rho, columns_normalized=True)


def noise_sigma(Ax: np.ndarray, snr_db: float) -> float:
    """Per-entry noise std: ``sqrt(||Ax||^2 / 10^(snr/10))``."""
    return math.sqrt(float(Ax @ Ax) / 10.0 ** (snr_db / 10.0))


def synthesize_observation(
    A: MeasurementMatrix | np.ndarray,
    x: SparseSignal | np.ndarray,
    snr_db,
    rng: np.random.Generator,
) -> Observation:
    """``y = A x + w`` with i.i.d. ``N(0, sigma^2)`` noise at the requested SNR."""
    A = _entries(A)
    xv = x.values if isinstance(x, SparseSignal) else np.asarray(x, dtype=float)
    if A.shape[1] != xv.shape[0]:
        raise ParameterError(f"matrix has {A.shape[1]} columns but signal has length {xv.shape[0]}")
    snr_db = parse_snr(snr_db)
    Ax = A @ xv
    if snr_db == NOISELESS:
        return Observation(y=Ax, sigma=0.0, snr_db=NOISELESS)
    if not np.any(Ax):
        raise DegenerateSignalError("Ax = 0, noise level undefined at finite SNR")
    sigma = noise_sigma(Ax, snr_db)
    y = Ax + sigma * rng.standard_normal(A.shape[0])
    return Observation(y=y, sigma=sigma, snr_db=snr_db)


def make_instance(
    n: int,
    m: int,
    s: int,
    snr_db,
    seed: int,
    trial_index: int,
    block_size: int = 5,
    rho: float = 0.6,
) -> ProblemInstance:
    """Regenerable instance for one trial of the simulation protocol."""
    rng = make_rng(seed, n, m, s, trial_index)
    matrix = generate_block_correlated_matrix(m, n, block_size, rho, rng)
    signal = generate_sparse_signal(n, s, rng)
    obs = synthesize_observation(matrix, signal, snr_db, rng)
    params = dict(n=n, m=m, s=s, snr_db=obs.snr_db, block_size=block_size, rho=rho)
    return ProblemInstance(signal, matrix, obs, seed=seed, trial_index=trial_index, params=params)


def knockoff_rng(seed: int, n: int, m: int, s: int, trial_index: int) -> np.random.Generator:
    """Stream for knockoff sampling, disjoint from the instance stream."""
    return make_rng(seed, n, m, s, trial_index, _KNOCKOFF_STREAM)


def _entries(A) -> np.ndarray:
    if isinstance(A, MeasurementMatrix):
        return A.entries
    return np.asarray(A, dtype=float)


# -- CSV I/O ---------------------------------------------------------------

def read_matrix(path: str | Path) -> np.ndarray:
    """Read a row-major numeric CSV into a 2-D array."""
    try:
        return np.loadtxt(path, delimiter=",", ndmin=2, comments="#")
    except (OSError, ValueError) as exc:
        raise ParameterError(f"cannot read matrix from {path}: {exc}") from None


def read_vector(path: str | Path) -> np.ndarray:
    """Read a vector stored as one column (or one row)."""
    arr = read_matrix(path)
    if arr.shape[0] != 1 and arr.shape[1] != 1:
        raise ParameterError(f"{path} holds a {arr.shape[0]}x{arr.shape[1]} matrix, expected a vector")
    return arr.ravel()


def write_matrix(path: str | Path, M: np.ndarray) -> None:
    M = np.asarray(M, dtype=float)
    if M.ndim == 1:
        M = M[:, None]
    np.savetxt(path, M, delimiter=",", fmt="%.17g")


def write_vector(path: str | Path, v: np.ndarray) -> None:
    write_matrix(path, np.asarray(v, dtype=float).ravel())
