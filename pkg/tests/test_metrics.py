import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import orthonormal_columns
from oracles import naive_matvec
from knockoffcs import metrics
from knockoffcs.errors import ParameterError

index_sets = st.sets(st.integers(0, 9))


def test_fdp_examples():
    assert metrics.fdp({1, 2}, {1, 2}) == 0.0
    assert metrics.fdp({1, 2, 4, 5}, {1, 2, 3}) == 0.5
    assert metrics.fdp(set(), {1}) == 0.0


def test_power_examples():
    assert metrics.power_tpr({1, 2, 3, 9}, {1, 2, 3}) == 1.0
    assert metrics.power_tpr({1}, {1, 2, 3, 4}) == 0.25
    with pytest.raises(ParameterError):
        metrics.power_tpr({1}, set())


def test_f1_examples():
    assert metrics.f1({1, 2}, {1, 2}) == 1.0
    assert metrics.f1({1, 2, 4, 5}, {1, 2, 3}) == pytest.approx(4 / 7)
    assert metrics.f1(set(), {1}) == 0.0


@settings(max_examples=200, deadline=None)
@given(S_hat=index_sets, S=index_sets.filter(bool))
def test_set_metrics_match_enumeration(S_hat, S):
    tp = sum(1 for j in range(10) if j in S_hat and j in S)
    fp = sum(1 for j in range(10) if j in S_hat and j not in S)
    assert metrics.power_tpr(S_hat, S) == pytest.approx(tp / len(S))
    assert metrics.fdp(S_hat, S) == pytest.approx(fp / max(len(S_hat), 1))
    if S_hat:
        assert metrics.fdp(S_hat, S) + metrics.precision(S_hat, S) == pytest.approx(1.0)
    p, r = metrics.precision(S_hat, S), metrics.power_tpr(S_hat, S)
    if S_hat and p > 0 and r > 0:
        assert min(p, r) - 1e-12 <= metrics.f1(S_hat, S) <= max(p, r) + 1e-12


def test_relative_error_examples():
    x = np.array([0.6, 0.0, 0.8])
    assert metrics.relative_error(x, x) == 0.0
    assert metrics.relative_error(np.zeros(3), x) == 1.0
    assert metrics.relative_error(2 * x, x) == pytest.approx(1.0)
    with pytest.raises(ParameterError):
        metrics.relative_error(x, np.zeros(3))


def test_measurement_error_examples():
    g = np.random.default_rng(0)
    A, x = g.standard_normal((6, 4)), g.standard_normal(4)
    assert metrics.measurement_error(A, x, A @ x) == 0.0
    y = g.standard_normal(6)
    assert metrics.measurement_error(A, np.zeros(4), y) == pytest.approx(np.linalg.norm(y))
    expected = np.sqrt(sum(v * v for v in naive_matvec(A.tolist(), x) - y))
    assert metrics.measurement_error(A, x, y) == pytest.approx(expected, abs=1e-12)


def test_re_bounds_examples(rng):
    assert metrics.re_bounds(orthonormal_columns(10, 4, rng), range(4)) == pytest.approx((1.0, 1.0))
    A = rng.standard_normal((8, 5))
    A[:, 3] = A[:, 1]
    assert metrics.re_bounds(A, [1, 3])[0] == pytest.approx(0.0, abs=1e-12)
    sv = np.linalg.svd(A[:, [0, 2, 4]], compute_uv=False)
    assert metrics.re_bounds(A, [4, 0, 2]) == pytest.approx((sv[-1], sv[0]), abs=1e-10)


def test_re_bounds_rejects():
    with pytest.raises(ParameterError):
        metrics.re_bounds(np.eye(3), [])
    with pytest.raises(ParameterError):
        metrics.re_bounds(np.ones((2, 5)), [0, 1, 2])


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), data=st.data())
def test_re_bounds_monotone(seed, data):
    A = np.random.default_rng(seed).standard_normal((12, 10))
    big = data.draw(st.sets(st.integers(0, 9), min_size=1, max_size=10))
    small = data.draw(st.sets(st.sampled_from(sorted(big)), min_size=1))
    lo_s, hi_s = metrics.re_bounds(A, small)
    lo_b, hi_b = metrics.re_bounds(A, big)
    assert lo_b <= lo_s + 1e-12 and hi_b >= hi_s - 1e-12


def test_coherence_examples(rng):
    Q = orthonormal_columns(10, 6, rng)
    assert metrics.coherence_gamma(Q, [0, 1], [2, 3]) == pytest.approx(0.0, abs=1e-12)
    assert metrics.coherence_gamma(Q, [0, 1], []) == 0.0
    A = rng.standard_normal((8, 6))
    sv = np.linalg.svd(A[:, [0, 5]].T @ A[:, [2, 3, 4]], compute_uv=False)
    assert metrics.coherence_gamma(A, [5, 0], [4, 2, 3]) == pytest.approx(sv[0], abs=1e-10)
    with pytest.raises(ParameterError):
        metrics.coherence_gamma(A, [0, 1], [1])


def test_assumption_report(rng):
    A = orthonormal_columns(12, 6, rng)
    x = np.array([1.0, 0, 0, 0, 0, 0])
    rep = metrics.assumption_report(A, np.zeros_like(A), x, {0, 3})
    assert rep.kappa_min == pytest.approx(1.0) and rep.kappa_max == pytest.approx(1.0)
    assert rep.gamma == pytest.approx(0.0, abs=1e-12)
    assert rep.delta_min == pytest.approx(1.0)


def test_summarize():
    assert metrics.summarize([2.0]) == (2.0, 0.0)
    mean, se = metrics.summarize([1.0, 2.0, 3.0])
    assert mean == 2.0 and se == pytest.approx(1 / np.sqrt(3))
