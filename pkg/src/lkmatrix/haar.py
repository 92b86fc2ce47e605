"""Haar-random unitaries and the Haar-average multiplicativity of spherical functions.

For a spherical function ``phi`` the average of ``phi(xi + k1 eta k2*)`` over
independent Haar unitaries ``k1, k2`` of size ``n`` tends to
``phi(xi) phi(eta)`` as ``n -> infinity``. :func:`multiplicativity_estimate`
estimates that average by Monte Carlo.

Sample ``i`` of a run with seed ``seed`` is drawn from its own Philox stream
keyed by ``seed`` with counter block ``i``, so results do not depend on how
samples are batched or distributed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError
from .omega import OmegaParam
from .spherical import MatrixPoint, _svals, as_matrix, spherical_eval, spherical_from_singular_values

__all__ = [
    "McEstimate",
    "sample_rng",
    "haar_unitary",
    "haar_from_ginibre",
    "conjugate_translate",
    "multiplicativity_estimate",
    "multiplicativity_ladder",
]

_BATCH = 512


@dataclass(frozen=True)
class McEstimate:
    """Monte Carlo mean with its standard error."""

    mean: float
    stderr: float
    n_samples: int
    seed: int

    def to_json(self) -> dict:
        return {"mean": self.mean, "stderr": self.stderr, "n_samples": self.n_samples, "seed": self.seed}


def sample_rng(seed: int, index: int) -> np.random.Generator:
    """Generator for sample ``index`` of the stream ``seed`` (both ``>= 0``)."""
    if seed < 0 or index < 0:
        raise DomainError(f"seed and sample index must be nonnegative, got {seed}, {index}")
    return np.random.Generator(np.random.Philox(key=int(seed), counter=[0, 0, int(index), 0]))


def _ginibre(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2.0)


def haar_from_ginibre(z: np.ndarray) -> np.ndarray:
    """Map Ginibre matrices ``(..., n, n)`` to Haar unitaries.

    QR-factorize and rescale the columns of ``Q`` so that ``R`` has a
    positive real diagonal; without that phase fix the law is not Haar.
    """
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    phases = d / np.abs(d)
    return q * phases[..., None, :]


def haar_unitary(n: int, seed=None) -> np.ndarray:
    """Draw one ``n x n`` unitary from the normalized Haar measure on ``U(n)``.

    Parameters
    ----------
    n : int
        Dimension, at least 1.
    seed : int, numpy Generator or None
        Source of randomness.
    """
    if int(n) != n or n < 1:
        raise DomainError(f"dimension must be a positive integer, got {n!r}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return haar_from_ginibre(_ginibre(rng, (int(n), int(n))))


def conjugate_translate(xi, eta, k1, k2) -> MatrixPoint:
    """Return ``xi + k1 eta k2*``."""
    x, e = as_matrix(xi), as_matrix(eta)
    k1, k2 = np.asarray(k1, dtype=complex), np.asarray(k2, dtype=complex)
    shapes = {x.shape, e.shape, k1.shape, k2.shape}
    if len(shapes) != 1:
        raise DomainError(f"dimension mismatch: {sorted(shapes)}")
    return MatrixPoint(x + k1 @ e @ k2.conj().T)


def _embed(xi, n: int) -> np.ndarray:
    a = as_matrix(xi)
    if a.shape[0] > n:
        raise DomainError(f"a {a.shape[0]}x{a.shape[0]} matrix does not fit in dimension {n}")
    out = np.zeros((n, n), dtype=complex)
    out[: a.shape[0], : a.shape[0]] = a
    return out


def _haar_pairs(seed: int, start: int, stop: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    z = np.empty((stop - start, 2, n, n), dtype=complex)
    for i in range(start, stop):
        z[i - start] = _ginibre(sample_rng(seed, i), (2, n, n))
    u = haar_from_ginibre(z)
    return u[:, 0], u[:, 1]


def multiplicativity_estimate(omega: OmegaParam, xi, eta, n: int, n_samples: int,
                              seed: int = 0) -> McEstimate:
    """Monte Carlo estimate of ``E phi_omega(xi + k1 eta k2*)`` over Haar ``k1, k2 in U(n)``.

    ``xi`` and ``eta`` are zero-padded to dimension ``n``. Compare the mean
    with ``spherical_eval(omega, xi) * spherical_eval(omega, eta)``.
    """
    if int(n_samples) != n_samples or n_samples < 2:
        raise DomainError(f"n_samples must be an integer >= 2, got {n_samples!r}")
    n, n_samples = int(n), int(n_samples)
    x, e = _embed(xi, n), _embed(eta, n)
    values = np.empty(n_samples)
    for start in range(0, n_samples, _BATCH):
        stop = min(start + _BATCH, n_samples)
        k1, k2 = _haar_pairs(seed, start, stop, n)
        m = x + k1 @ e @ np.conj(np.swapaxes(k2, -1, -2))
        values[start:stop] = spherical_from_singular_values(omega, _svals(m))
    # shifting by the first value keeps a constant integrand exact
    shift = values[0]
    dev = values - shift
    mean = shift + float(dev.mean())
    stderr = float(dev.std(ddof=1) / math.sqrt(n_samples))
    return McEstimate(mean=mean, stderr=stderr, n_samples=n_samples, seed=int(seed))


def multiplicativity_ladder(omega: OmegaParam, xi, eta, ns: Sequence[int], n_samples: int,
                            seeds: Sequence[int] = (0,)) -> list[dict]:
    """Run :func:`multiplicativity_estimate` over dimensions and seeds.

    Returns one row per dimension with the first seed, the seed-averaged
    mean, the standard error of that average, the target
    ``phi(xi) phi(eta)`` and the absolute deviation from it.
    """
    seeds = [int(s) for s in seeds]
    if not seeds:
        raise DomainError("at least one seed is required")
    target = spherical_eval(omega, xi) * spherical_eval(omega, eta)
    rows = []
    for n in ns:
        runs = [multiplicativity_estimate(omega, xi, eta, n, n_samples, s) for s in seeds]
        mean = float(np.mean([r.mean for r in runs]))
        stderr = float(math.sqrt(sum(r.stderr**2 for r in runs)) / len(runs))
        rows.append({
            "n": int(n),
            "n_samples": int(n_samples),
            "seed": seeds[0],
            "seeds": seeds,
            "mean": mean,
            "stderr": stderr,
            "target": float(target),
            "abs_dev": abs(mean - target),
        })
    return rows
