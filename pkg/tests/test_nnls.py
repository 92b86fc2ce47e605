import numpy as np
import pytest
from scipy.optimize import nnls as scipy_nnls

from lkmatrix.errors import DomainError
from lkmatrix.nnls import kkt_residuals, nnls


def test_unconstrained_interior():
    a = np.array([[1.0, 0], [0, 2], [1, 1]])
    x_true = np.array([0.5, 1.5])
    x, r = nnls(a, a @ x_true)
    np.testing.assert_allclose(x, x_true, rtol=1e-12)
    assert r < 1e-12


def test_active_constraint():
    a = np.eye(2)
    x, r = nnls(a, np.array([1.0, -2.0]))
    np.testing.assert_array_equal(x, [1.0, 0.0])
    assert r == pytest.approx(2.0)


def test_matches_scipy_and_kkt(rng):
    for _ in range(200):
        m, n = int(rng.integers(3, 15)), int(rng.integers(1, 8))
        a = rng.standard_normal((m, n))
        b = rng.standard_normal(m)
        x, r = nnls(a, b)
        x_ref, _ = scipy_nnls(a, b)
        # scipy's reported rnorm is unreliable for m < n; recompute it
        r_ref = np.linalg.norm(a @ x_ref - b)
        assert r == pytest.approx(np.linalg.norm(a @ x - b), rel=1e-12, abs=1e-14)
        assert r <= r_ref + 1e-9
        if m >= n:
            np.testing.assert_allclose(x, x_ref, atol=1e-9)
        stat, infeas = kkt_residuals(a, b, x)
        scale = np.linalg.norm(a) * max(1.0, np.linalg.norm(b))
        assert stat <= 1e-12 * scale
        assert infeas <= 1e-12 * scale
        assert np.all(x >= 0)


def test_deterministic(rng):
    a = rng.standard_normal((10, 6))
    b = rng.standard_normal(10)
    x1, _ = nnls(a, b)
    x2, _ = nnls(a.copy(), b.copy())
    np.testing.assert_array_equal(x1, x2)


def test_shape_errors():
    with pytest.raises(DomainError):
        nnls(np.ones((3, 2)), np.ones(4))
