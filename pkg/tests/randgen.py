"""Random instances shared by the test modules."""

import numpy as np

from lkmatrix import DiscreteOmegaMeasure, LevyTriple, MatrixPoint, OmegaParam


def random_omega(rng, max_norm=5.0, max_atoms=6, min_norm=0.0):
    """Random nonzero omega with ||omega|| in [min_norm, max_norm]."""
    k = int(rng.integers(0, max_atoms + 1))
    parts = rng.dirichlet(np.ones(k + 1))
    total = rng.uniform(min_norm, max_norm)
    if total == 0:
        total = max_norm / 2
    return OmegaParam(parts[:k] * total, parts[k] * total)


def random_matrix(rng, n, max_norm=2.0):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return MatrixPoint(z * (max_norm * rng.random() / np.linalg.norm(z)))


def random_measure(rng, size, max_norm=3.0, normalized=False, total_mass=1.0):
    atoms = [(random_omega(rng, max_norm=max_norm, min_norm=1e-3), w)
             for w in rng.dirichlet(np.ones(size)) * total_mass]
    return DiscreteOmegaMeasure(tuple(atoms))


def random_triple(rng, max_mass=10.0, max_atoms=4, max_norm=3.0):
    size = int(rng.integers(0, max_atoms + 1))
    nu = random_measure(rng, size, max_norm=max_norm, total_mass=rng.uniform(0, max_mass)) if size else ()
    return LevyTriple(rng.uniform(0, 1), rng.uniform(0, 2), nu)


def haar(rng, n):
    from lkmatrix.haar import haar_unitary
    return haar_unitary(n, rng)
