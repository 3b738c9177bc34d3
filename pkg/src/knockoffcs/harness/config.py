"""Sweep configuration and its flat ``key = value`` file format.

Lines look like ``n_list = [500, 1000]`` or ``q = 0.1``; ``#`` starts a
comment. Unknown keys are rejected so typos do not silently fall back to
defaults.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ParameterError
from ..filter import STATISTICS
from ..knockoff import COVARIANCE_ESTIMATORS, STRATEGIES
from ..model import NOISELESS, parse_snr


@dataclass(frozen=True)
class SweepConfig:
    n_list: tuple[int, ...] = (500, 1000)
    m_list: tuple[int, ...] = (50, 100, 200)
    s_list: tuple[int, ...] = (5, 10)
    snr_db_list: tuple = (2.0, 10.0, 30.0, 50.0)
    trials: int = 20
    q: float = 0.1
    lasso_lambda: float = 0.1
    omp_k: str | int = "oracle"
    knockoff_strategy: str = "gaussian"
    statistic: str = "lasso-diff"
    seed: int = 20240601
    block_size: int = 5
    rho: float = 0.6
    # knockoff-side settings the protocol leaves open
    knockoff_lambda: float | None = None
    knockoff_lambda_ratio: float = 0.03
    knockoff_covariance: str = "ledoit-wolf"
    shrinkage_eps: float = 1e-3
    offset: int = 0
    ridge_lambda: float = 0.0
    solver: str = "direct"
    methods: tuple[str, ...] = field(default=("knockoffcs", "lasso", "omp"))

    def __post_init__(self):
        for name in ("n_list", "m_list", "s_list", "snr_db_list", "methods"):
            if not getattr(self, name):
                raise ParameterError(f"{name} must be nonempty")
        if self.trials < 1:
            raise ParameterError("trials must be >= 1")
        if not 0 < self.q < 1:
            raise ParameterError(f"q must lie in (0, 1), got {self.q}")
        if self.seed < 0:
            raise ParameterError("seed must be nonnegative")
        if self.knockoff_strategy not in STRATEGIES:
            raise ParameterError(f"knockoff_strategy must be one of {STRATEGIES}")
        if self.statistic not in STATISTICS:
            raise ParameterError(f"statistic must be one of {STATISTICS}")
        if self.knockoff_covariance not in COVARIANCE_ESTIMATORS:
            raise ParameterError(f"knockoff_covariance must be one of {COVARIANCE_ESTIMATORS}")
        if self.omp_k != "oracle" and not (isinstance(self.omp_k, int) and self.omp_k >= 0):
            raise ParameterError("omp_k must be 'oracle' or a nonnegative integer")
        for meth in self.methods:
            if meth not in ("knockoffcs", "lasso", "omp"):
                raise ParameterError(f"unknown method {meth!r}")
        for n in self.n_list:
            for s in self.s_list:
                if not 1 <= s <= n:
                    raise ParameterError(f"sparsity {s} incompatible with n={n}")

    def cells(self):
        """Grid points in deterministic (n, m, s, snr) order."""
        for n in self.n_list:
            for m in self.m_list:
                for s in self.s_list:
                    for snr in self.snr_db_list:
                        yield n, m, s, snr

    def replace(self, **changes) -> "SweepConfig":
        return dataclasses.replace(self, **changes)

    def echo_lines(self) -> list[str]:
        return [f"{f.name} = {format_value(getattr(self, f.name))}" for f in dataclasses.fields(self)]


_INT_LISTS = {"n_list", "m_list", "s_list"}
_STR_LISTS = {"methods"}
_INTS = {"trials", "seed", "block_size", "offset"}
_FLOATS = {"q", "lasso_lambda", "rho", "knockoff_lambda_ratio", "shrinkage_eps", "ridge_lambda"}
_STRS = {"knockoff_strategy", "statistic", "knockoff_covariance", "solver"}


def format_value(v) -> str:
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(format_value(x) for x in v) + "]"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _split_list(text: str, key: str) -> list[str]:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParameterError(f"{key}: expected a list like [a, b]")
    inner = text[1:-1].strip()
    return [t.strip() for t in inner.split(",")] if inner else []


def _convert(key: str, raw: str):
    try:
        if key in _INT_LISTS:
            return tuple(int(t) for t in _split_list(raw, key))
        if key == "snr_db_list":
            return tuple(parse_snr(t) for t in _split_list(raw, key))
        if key in _STR_LISTS:
            return tuple(t.strip("'\"") for t in _split_list(raw, key))
        if key in _INTS:
            return int(raw)
        if key in _FLOATS:
            return float(raw)
        if key in _STRS:
            return raw.strip("'\"")
        if key == "knockoff_lambda":
            return None if raw.strip("'\"").lower() in ("none", "auto") else float(raw)
        if key == "omp_k":
            raw = raw.strip("'\"")
            return raw if raw == "oracle" else int(raw)
    except ValueError as exc:
        raise ParameterError(f"{key}: cannot parse {raw!r} ({exc})") from None
    raise ParameterError(f"unknown config key {key!r}")


def parse_config(text: str, base: SweepConfig | None = None) -> SweepConfig:
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterError(f"line {lineno}: expected key = value")
        key, raw = (part.strip() for part in line.split("=", 1))
        values[key] = _convert(key, raw)
    return (base or SweepConfig()).replace(**values)


def load_config(path: str | Path) -> SweepConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParameterError(f"cannot read config {path}: {exc}") from None
    return parse_config(text)


def snr_label(snr) -> str:
    return NOISELESS if snr == NOISELESS else format_value(float(snr))
