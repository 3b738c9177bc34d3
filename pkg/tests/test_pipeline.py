import numpy as np
import pytest

from knockoffcs import metrics, model, pipeline
from knockoffcs.errors import ParameterError


def orthonormal_toy(seed):
    Q, _ = np.linalg.qr(np.random.default_rng(seed).standard_normal((8, 8)))
    x = model.generate_sparse_signal(8, 2, model.make_rng(seed)).values
    return Q, x


@pytest.mark.parametrize("seed", range(5))
def test_noiseless_orthonormal_toy_exact(seed):
    A, x = orthonormal_toy(seed)
    S = tuple(np.flatnonzero(x))
    res = pipeline.knockoff_cs(A, A @ x, rng=model.make_rng(seed, 1))
    assert metrics.f1(res.support, S) == 1.0
    assert metrics.relative_error(res.x_hat, x) <= 1e-8
    _, support, x_omp = pipeline.omp_cs(A, A @ x, 2)
    assert metrics.f1(support, S) == 1.0
    assert metrics.relative_error(x_omp, x) <= 1e-8


def test_knockoff_cs_reproducible():
    inst = model.make_instance(100, 40, 4, 30.0, 1, 0)
    a = pipeline.knockoff_cs(inst.A, inst.y, rng=model.make_rng(3))
    b = pipeline.knockoff_cs(inst.A, inst.y, rng=model.make_rng(3))
    assert a.support == b.support and np.array_equal(a.x_hat, b.x_hat)


def test_zero_observation_selects_nothing():
    inst = model.make_instance(60, 30, 3, "noiseless", 1, 0)
    res = pipeline.knockoff_cs(inst.A, np.zeros(30), rng=model.make_rng(0))
    assert res.support == () and np.all(res.x_hat == 0)


def test_overrides_and_absolute_lambda():
    inst = model.make_instance(60, 30, 3, 30.0, 1, 0)
    res = pipeline.knockoff_cs(inst.A, inst.y, rng=model.make_rng(0), lam=0.01, statistic="lasso-diff")
    assert res.w.lasso_lambda == 0.01
    res = pipeline.knockoff_cs(inst.A, inst.y, rng=model.make_rng(0), statistic="marginal")
    assert res.w.statistic_kind == "marginal"


def test_bad_ratio():
    inst = model.make_instance(60, 30, 3, 30.0, 1, 0)
    with pytest.raises(ParameterError):
        pipeline.knockoff_cs(inst.A, inst.y, rng=model.make_rng(0), lam_ratio=0.0)


def test_lasso_cs_estimate_is_thresholded_coefficients():
    inst = model.make_instance(60, 30, 3, 30.0, 1, 0)
    fit, support, x_hat = pipeline.lasso_cs(inst.A, inst.y, 0.01)
    assert tuple(np.flatnonzero(x_hat)) == support
    assert np.array_equal(x_hat[list(support)], fit.coefficients[list(support)])
