import numpy as np
import pytest

from lkmatrix import (
    DiscreteOmegaMeasure,
    DomainError,
    IllPosedError,
    LevyTriple,
    MatrixPoint,
    ModelViolationError,
    OmegaParam,
    bochner_forward,
    default_probes,
    integrability_functional,
    lk_forward,
    lk_kernel,
    negative_type_check,
    omega_norm,
    polya_eval,
    positive_type_check,
    recover_A,
    recover_measure,
    sample_points,
    schoenberg_check,
    spherical_eval,
    trace_square,
)
from lkmatrix.levy import bochner_kernel, drift_sweep
from randgen import random_matrix, random_measure, random_triple

GRID = [
    OmegaParam([], 0.1), OmegaParam([], 1.0), OmegaParam([0.5]),
    OmegaParam([2.0]), OmegaParam([1.0, 1.0]), OmegaParam([0.2], 0.3),
]


def test_measure_merges_duplicates():
    mu = DiscreteOmegaMeasure(((OmegaParam([0.5, 0]), 0.25), (OmegaParam([0.5]), 0.5), (OmegaParam([], 1), 0.25)))
    assert len(mu) == 2
    assert mu.atoms[0] == (OmegaParam([0.5]), 0.75)


def test_measure_rejects_bad_weight():
    with pytest.raises(DomainError, match="weight"):
        DiscreteOmegaMeasure(((OmegaParam([0.5]), 0.0),))


def test_measure_json_round_trip():
    mu = DiscreteOmegaMeasure(((OmegaParam([0.5], 0.1), 0.3), (OmegaParam([], 2.0), 0.7)))
    assert DiscreteOmegaMeasure.from_json(mu.to_json()) == mu


def test_triple_validation():
    with pytest.raises(DomainError, match="omega = 0"):
        LevyTriple(0.0, 1.0, [(OmegaParam(), 1.0)])
    with pytest.raises(DomainError):
        LevyTriple(-1.0, 0.0)
    with pytest.raises(DomainError):
        LevyTriple(0.0, -0.5)
    t = LevyTriple(0.2, 0.5, [(OmegaParam([1.0]), 2.0)])
    assert LevyTriple.from_json(t.to_json()) == t


def test_bochner_examples(rng):
    om1, om2 = OmegaParam([0.5], 0.2), OmegaParam([], 1.5)
    xi = random_matrix(rng, 3)
    assert bochner_forward(DiscreteOmegaMeasure(((om1, 1.0),)), xi) == spherical_eval(om1, xi)
    mu = DiscreteOmegaMeasure(((om1, 0.5), (om2, 0.5)))
    assert bochner_forward(mu, MatrixPoint.zeros(3)) == 1.0
    d1 = MatrixPoint.diag([1.0])
    assert bochner_forward(mu, d1) == pytest.approx(0.5 * polya_eval(om1, 1) + 0.5 * polya_eval(om2, 1), rel=1e-15)


def test_bochner_requires_probability():
    mu = DiscreteOmegaMeasure(((OmegaParam([0.5]), 0.6),))
    with pytest.raises(DomainError, match="sum"):
        bochner_forward(mu, MatrixPoint.zeros(1))
    with pytest.raises(DomainError):
        bochner_kernel(mu)


def test_bochner_positive_type(rng):
    for _ in range(10):
        mu = random_measure(rng, int(rng.integers(1, 6)))
        pts = sample_points(rng, 12, 4)
        assert positive_type_check(bochner_kernel(mu), pts).passed


def test_lk_forward_examples(rng):
    xi = random_matrix(rng, 3)
    assert lk_forward(LevyTriple(), xi) == 0.0
    t = random_triple(rng)
    assert lk_forward(t, MatrixPoint.zeros(2)) == t.psi0
    t = LevyTriple(0.0, 0.5, [(OmegaParam([1.0]), 2.0)])
    assert lk_forward(t, MatrixPoint.diag([1.0])) == pytest.approx(1.5, rel=1e-15)


def test_lk_forward_properties(rng):
    for _ in range(50):
        t = random_triple(rng)
        xi = random_matrix(rng, int(rng.integers(1, 5)), 3.0)
        v = lk_forward(t, xi)
        assert v >= t.psi0
        assert lk_forward(t, -xi) == v


def test_lk_forward_negative_type(rng):
    for _ in range(10):
        t = random_triple(rng)
        pts = sample_points(rng, 10, 3)
        assert negative_type_check(lk_kernel(t), pts).passed
        assert all(r.passed for r in schoenberg_check(lk_kernel(t), pts, [0.1, 1, 10]))


def test_integrability():
    assert integrability_functional(DiscreteOmegaMeasure()) == 0
    assert integrability_functional(DiscreteOmegaMeasure(((OmegaParam([0.5], 0.5), 2.0),))) == 1.0
    with pytest.raises(DomainError):
        integrability_functional(DiscreteOmegaMeasure(((OmegaParam(), 1.0),)))


def test_integrability_additive_and_bounded(rng):
    for _ in range(20):
        nu1 = random_measure(rng, 3, total_mass=5)
        nu2 = random_measure(rng, 2, total_mass=3)
        assert integrability_functional(nu1) < nu1.total_mass
        assert integrability_functional(nu1 + nu2) == pytest.approx(
            integrability_functional(nu1) + integrability_functional(nu2), rel=1e-14)


def test_recover_A_exact_cases():
    assert recover_A(lk_kernel(LevyTriple(0.0, 0.75)), 1, [10, 30, 100]) == pytest.approx(0.75, rel=1e-14)
    assert recover_A(lambda xi: 0.0, 3, [10, 30, 100]) == 0.0


def test_recover_A_single_atom():
    t = LevyTriple(0.0, 0.5, [(OmegaParam([1.0]), 2.0)])
    # residual term sum w (1 - Pi) / s^2 <= 2 / s^2
    s, g = drift_sweep(lk_kernel(t), 2, [10, 30, 100])
    assert np.all(g - 0.5 <= 2 / s**2)
    assert recover_A(lk_kernel(t), 2, [10, 30, 100]) == pytest.approx(0.5, abs=1e-3)


def test_recover_A_random(rng):
    for _ in range(30):
        t = random_triple(rng, max_mass=10)
        a_hat = recover_A(lk_kernel(t), int(rng.integers(1, 4)), [10, 30, 100])
        assert abs(a_hat - t.A) <= 1e-3 * max(1.0, t.A)


def test_recover_A_grid_checks():
    psi = lk_kernel(LevyTriple(0.0, 1.0))
    with pytest.raises(DomainError):
        recover_A(psi, 1, [10, 30])
    with pytest.raises(DomainError):
        recover_A(psi, 1, [1, 2, 5])
    with pytest.raises(DomainError):
        recover_A(psi, 1, [10, 5, 30])


def test_recover_A_model_violation():
    quartic = lambda xi: trace_square(xi) ** 2  # noqa: E731
    with pytest.raises(ModelViolationError, match="faster than s\\^2"):
        recover_A(quartic, 1, [10, 30, 100])


def test_default_probes():
    probes = default_probes()
    assert len(probes) == 14
    assert all(p.n == 2 for p in probes)
    assert default_probes(4)[0].n == 4


def test_recover_measure_round_trip(rng):
    for _ in range(20):
        k = int(rng.integers(1, 7))
        idx = rng.choice(len(GRID), size=k, replace=False)
        w = np.zeros(len(GRID))
        w[idx] = rng.uniform(0.05, 3.0, size=k)
        t = LevyTriple(rng.uniform(0, 1), rng.uniform(0, 2), [(GRID[i], w[i]) for i in idx])
        rec = recover_measure(lk_kernel(t), None, GRID)
        np.testing.assert_allclose(rec.weights, w, rtol=1e-6, atol=1e-9)
        assert rec.A_hat == pytest.approx(t.A, rel=1e-6, abs=1e-9)
        assert rec.psi0_hat == t.psi0
        assert rec.residual <= 1e-10
        assert rec.measure() == t.nu or len(rec.measure()) >= len(t.nu)


def test_recover_measure_zero():
    rec = recover_measure(lambda xi: 0.0, None, GRID)
    assert rec.A_hat == 0
    assert np.all(rec.weights == 0)
    assert rec.residual == 0


def test_recover_measure_single_spherical():
    target = GRID[3]
    rec = recover_measure(lambda xi: 1.0 - spherical_eval(target, xi), None, GRID)
    expected = np.zeros(len(GRID))
    expected[3] = 1.0
    np.testing.assert_allclose(rec.weights, expected, atol=1e-9)
    assert rec.A_hat == pytest.approx(0.0, abs=1e-9)


def test_recover_measure_collisions():
    grid = [OmegaParam([0.5]), OmegaParam([0.5 + 1e-14]), OmegaParam([], 1.0)]
    with pytest.raises(IllPosedError) as info:
        recover_measure(lambda xi: 0.0, None, grid)
    assert ("grid[0]", "grid[1]") in info.value.collisions
    assert "grid[0] ~ grid[1]" in str(info.value)


def test_recover_measure_preconditions():
    with pytest.raises(DomainError, match="probes"):
        recover_measure(lambda xi: 0.0, default_probes()[:3], GRID)
    with pytest.raises(DomainError, match="nonzero"):
        recover_measure(lambda xi: 0.0, None, [OmegaParam()])


def test_recover_measure_report_json():
    t = LevyTriple(0.0, 0.3, [(GRID[0], 1.0)])
    data = recover_measure(lk_kernel(t), None, GRID).to_json()
    assert set(data) == {"A_hat", "psi0_hat", "weights", "residual", "condition_number"}
    assert len(data["weights"]) == len(GRID)
    assert data["condition_number"] >= 1


def test_uniqueness_integrability_ratio():
    # ||omega|| / ((1 - Pi(omega, 1)) (1 + ||omega||)) tends to 1 at 0 and infinity
    for t in (1e-8, 1e8):
        om = OmegaParam([t])
        ratio = omega_norm(om) / ((1 - polya_eval(om, 1.0)) * (1 + omega_norm(om)))
        assert ratio == pytest.approx(1.0, rel=1e-6)
