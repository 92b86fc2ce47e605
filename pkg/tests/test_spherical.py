import numpy as np
import pytest

from lkmatrix import (
    ZERO,
    DomainError,
    MatrixPoint,
    NumericError,
    OmegaParam,
    hs_norm,
    omega_norm,
    polya_eval,
    remainder,
    remainder_bound,
    singular_values,
    small_omega_linear_bound,
    spherical_eval,
    trace_square,
)
from randgen import haar, random_matrix, random_omega

# mpmath, 40 digits
REMAINDER_REF = 9.900990099009901e-05   # 1/1.01 - 1 + 0.01
BOUND_REF = 3.755979372560998e-04       # (e^B + 1/0.99) * 1e-4, B = 1 + 0.01/0.99
PHI_REF = 0.2840833643477532            # Pi(1.5) Pi(0.5), alpha=(0.3, 0.2), gamma=0.1


def test_matrix_point_validation():
    with pytest.raises(DomainError):
        MatrixPoint(np.zeros((2, 3)))
    with pytest.raises(DomainError):
        MatrixPoint([[np.nan]])
    p = MatrixPoint([[1, 2], [3, 4]])
    assert p.n == 2
    with pytest.raises(ValueError):
        p.entries[0, 0] = 5


def test_matrix_point_json():
    p = MatrixPoint([[1 + 2j, 0], [0.5, -1j]])
    assert MatrixPoint.from_json(p.to_json()) == p
    d = MatrixPoint.from_json({"diag": [1, 2]})
    assert d == MatrixPoint.diag([1, 2])
    assert MatrixPoint.from_json({"diag": [1], "n": 3}).n == 3
    with pytest.raises(DomainError):
        MatrixPoint.from_json({"n": 3, "re": [[1.0]]})


def test_singular_values_examples():
    np.testing.assert_array_equal(singular_values(MatrixPoint.diag([3, 1])).values, [3, 1])
    np.testing.assert_array_equal(singular_values(MatrixPoint.zeros(4)).values, np.zeros(4))
    sv = singular_values(MatrixPoint.diag([-1, 3, 0.5])).values
    np.testing.assert_allclose(sv, [3, 1, 0.5])


def test_singular_values_nonfinite_raw():
    with pytest.raises(NumericError):
        singular_values(np.array([[np.inf, 0], [0, 1]]))


def test_norms():
    assert hs_norm(MatrixPoint.diag([1])) == 1
    assert hs_norm(MatrixPoint.diag([3, 4])) == 5
    assert trace_square(MatrixPoint.diag([1, 0])) == 1
    assert trace_square(MatrixPoint.diag([1, 2])) == 5


def test_spectral_identities(rng):
    for n in range(1, 8):
        xi = random_matrix(rng, n, 3.0)
        sv = singular_values(xi).values
        assert np.all(np.diff(sv) <= 0) and np.all(sv >= 0)
        assert hs_norm(xi) ** 2 == pytest.approx(np.sum(sv**2), rel=1e-10)
        assert trace_square(xi) == pytest.approx(np.sum(sv**2), rel=1e-10)


def test_unitary_invariance(rng):
    for _ in range(30):
        n = int(rng.integers(1, 9))
        xi = random_matrix(rng, n, 3.0)
        u, v = haar(rng, n), haar(rng, n)
        moved = MatrixPoint(u @ xi.entries @ v.conj().T)
        np.testing.assert_allclose(singular_values(moved).values, singular_values(xi).values, atol=1e-10)
        assert trace_square(moved) == pytest.approx(trace_square(xi), abs=1e-10)
        om = random_omega(rng)
        assert abs(spherical_eval(om, moved) - spherical_eval(om, xi)) <= 1e-10


def test_spherical_examples():
    om = OmegaParam([0.3, 0.2], 0.1)
    assert spherical_eval(om, MatrixPoint.zeros(3)) == 1.0
    xi0 = MatrixPoint.diag([1, 0, 0])
    assert spherical_eval(om, xi0) == pytest.approx(np.exp(-0.1) / (1.3 * 1.2), rel=1e-14)
    assert spherical_eval(om, xi0) == polya_eval(om, 1.0)
    assert spherical_eval(OmegaParam([1.0]), MatrixPoint.diag([1, 2])) == pytest.approx(0.1, rel=1e-15)
    assert spherical_eval(om, MatrixPoint.diag([1.5, -0.5])) == pytest.approx(PHI_REF, rel=1e-14)


def test_spherical_range_and_stack(rng):
    om = random_omega(rng)
    stack = np.stack([random_matrix(rng, 3).entries for _ in range(5)])
    vals = spherical_eval(om, stack)
    assert vals.shape == (5,)
    assert np.all((vals > 0) & (vals <= 1))
    for k in range(5):
        assert vals[k] == pytest.approx(spherical_eval(om, stack[k]), rel=1e-14)


def test_padding_invariance(rng):
    om = random_omega(rng)
    xi = random_matrix(rng, 3)
    for n in (3, 4, 7):
        big = xi.padded(n)
        assert spherical_eval(om, big) == pytest.approx(spherical_eval(om, xi), rel=1e-13)
        assert trace_square(big) == trace_square(xi)
        assert hs_norm(big) == hs_norm(xi)


def test_diagonal_factorization(rng):
    for _ in range(50):
        om = random_omega(rng)
        a = rng.uniform(-2, 2, size=int(rng.integers(1, 6)))
        expected = np.prod([polya_eval(om, x) for x in a])
        assert spherical_eval(om, MatrixPoint.diag(a)) == pytest.approx(expected, rel=1e-12)


def test_hilbert_schmidt_continuity(rng):
    # |phi(x) - phi(y)| <= 2 ||omega|| R |||x - y||| on the ball of radius R
    for _ in range(50):
        om = random_omega(rng)
        n = int(rng.integers(1, 6))
        xi = random_matrix(rng, n, 2.0)
        radius = hs_norm(xi) + 1e-2
        for eps in (1e-1, 1e-2, 1e-4, 1e-6):
            d = random_matrix(rng, n, 1.0)
            d = MatrixPoint(d.entries * (eps / max(hs_norm(d), 1e-300)))
            gap = abs(spherical_eval(om, xi + d) - spherical_eval(om, xi))
            slope = 2 * omega_norm(om) * (radius + eps)
            assert gap <= slope * hs_norm(d) + 1e-14


def test_determinant_factor_mechanism(rng):
    # |det(1 + eta^2)^(-1) - 1| <= 2 |||eta|||^2 for |||eta||| <= 1/2
    unit = OmegaParam([1.0])
    for _ in range(500):
        eta = random_matrix(rng, int(rng.integers(1, 7)), 0.5)
        assert abs(spherical_eval(unit, eta) - 1) <= 2 * hs_norm(eta) ** 2


def test_remainder_examples():
    assert remainder(ZERO, MatrixPoint.diag([1.5, 2])) == 0
    assert remainder(OmegaParam([0.2], 0.1), MatrixPoint.zeros(2)) == 0
    om, xi = OmegaParam([0.01]), MatrixPoint.diag([1.0])
    assert remainder(om, xi) == pytest.approx(REMAINDER_REF, rel=1e-12)
    assert remainder_bound(om, xi) == pytest.approx(BOUND_REF, rel=1e-12)
    assert remainder_bound(ZERO, xi) == 0


def test_remainder_matches_definition(rng):
    for _ in range(100):
        om = random_omega(rng, max_norm=2)
        xi = random_matrix(rng, 3, 2.0)
        direct = spherical_eval(om, xi) - 1 + omega_norm(om) * trace_square(xi)
        assert remainder(om, xi) == pytest.approx(direct, abs=1e-14)


def test_remainder_small_omega_accurate():
    # R = 1/(1+t) - 1 + t = t^2 / (1 + t) exactly for alpha = [t], xi = diag(1)
    for t in (1e-3, 1e-6, 1e-9, 1e-12):
        assert remainder(OmegaParam([t]), MatrixPoint.diag([1.0])) == pytest.approx(t * t / (1 + t), rel=1e-12)


def test_remainder_ratio_vanishes():
    xi = MatrixPoint.diag([1.0])
    ratios = []
    for t in (1e-2, 1e-3, 1e-4, 1e-5, 1e-6):
        om = OmegaParam([t], t)
        ratios.append(remainder(om, xi) / omega_norm(om))
    assert all(b < a for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] < 1e-3 * ratios[0]


def test_remainder_bound_sweep(rng):
    for _ in range(2000):
        xi = random_matrix(rng, int(rng.integers(1, 6)), 3.0)
        limit = min(1.0, 1.0 / max(trace_square(xi), 1e-300))
        om = random_omega(rng, max_norm=limit * 0.999)
        assert abs(remainder(om, xi)) <= remainder_bound(om, xi)


def test_remainder_bound_region():
    with pytest.raises(DomainError, match="outside expansion region"):
        remainder_bound(OmegaParam([0.3]), MatrixPoint.diag([2.0]))
    with pytest.raises(DomainError, match="outside expansion region"):
        remainder_bound(OmegaParam([1.0]), MatrixPoint.diag([0.1]))


def test_small_omega_linear_bound(rng):
    c = small_omega_linear_bound(1.0, 0.1)
    for _ in range(1000):
        xi = random_matrix(rng, int(rng.integers(1, 6)), 1.0)
        om = random_omega(rng, max_norm=0.1)
        assert abs(1 - spherical_eval(om, xi)) <= c * omega_norm(om) + 1e-15
    assert small_omega_linear_bound(1e-6, 0.1) == pytest.approx(0.1, rel=1e-9)
    rhos = [0.1, 0.5, 1.0, 2.0, 3.0]
    cs = [small_omega_linear_bound(r, 0.1) for r in rhos]
    assert cs == sorted(cs)


def test_small_omega_linear_bound_domain():
    with pytest.raises(DomainError):
        small_omega_linear_bound(2.0, 0.3)
    with pytest.raises(DomainError):
        small_omega_linear_bound(0.5, 1.0)
    with pytest.raises(DomainError):
        small_omega_linear_bound(-1.0, 0.1)
