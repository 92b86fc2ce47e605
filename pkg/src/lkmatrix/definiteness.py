"""Spectral certificates of positive and negative type on finite point sets.

For an invariant function ``f`` on matrices the relevant kernel is
``(xi_i, xi_j) -> f(xi_i - xi_j)``. Positive type means every such Gram
matrix is positive semidefinite. Negative type means the Gram matrix is
negative semidefinite on the hyperplane ``sum c_i = 0``, which we test by
projecting with ``P = I - 11^T / N``.

These are sampled certificates on the given points, not proofs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, NumericError
from .spherical import MatrixPoint

__all__ = [
    "GramReport",
    "gram_matrix",
    "positive_type_check",
    "negative_type_check",
    "schoenberg_check",
    "sample_points",
    "DEFAULT_TOL",
]

DEFAULT_TOL = 1e-8
SYMMETRY_TOL = 1e-12
DIAGONAL_LEVELS = (0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0)


@dataclass(frozen=True)
class GramReport:
    """Spectrum of a (possibly projected) Gram matrix with a verdict."""

    gram: np.ndarray
    eigenvalues: np.ndarray
    tolerance: float
    passed: bool
    kind: str = field(default="positive")

    @property
    def size(self) -> int:
        return self.gram.shape[0]

    @property
    def min_eig(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def max_eig(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        return {
            "n_points": self.size,
            "eigenvalues": self.eigenvalues.tolist(),
            "min_eig": self.min_eig,
            "max_eig": self.max_eig,
            "tol": self.tolerance,
            "verdict": self.verdict,
        }


def _check_points(points: Sequence[MatrixPoint]) -> list[MatrixPoint]:
    points = [p if isinstance(p, MatrixPoint) else MatrixPoint(p) for p in points]
    if not points:
        raise DomainError("need at least one point")
    dims = {p.n for p in points}
    if len(dims) > 1:
        raise DomainError(f"points have mixed dimensions {sorted(dims)}")
    return points


def gram_matrix(f: Callable[[MatrixPoint], float], points: Sequence[MatrixPoint]) -> np.ndarray:
    """Gram matrix ``G_ij = f(xi_i - xi_j)``.

    Every entry is evaluated; the result is then symmetrized. An asymmetry
    above ``1e-12 * max(1, max|G|)`` means ``f`` is not even and raises
    :class:`~lkmatrix.errors.NumericError`.
    """
    points = _check_points(points)
    size = len(points)
    g = np.empty((size, size))
    for i, p in enumerate(points):
        for j, q in enumerate(points):
            g[i, j] = float(f(p - q))
    if not np.all(np.isfinite(g)):
        raise NumericError("kernel produced non-finite values")
    scale = max(1.0, float(np.max(np.abs(g))))
    asym = float(np.max(np.abs(g - g.T)))
    if asym > SYMMETRY_TOL * scale:
        raise NumericError(f"kernel is not symmetric on these points (asymmetry {asym:.3g})")
    return 0.5 * (g + g.T)


def _spectrum(g: np.ndarray) -> np.ndarray:
    return np.linalg.eigvalsh(g)


def positive_type_check(f, points, tol: float = DEFAULT_TOL) -> GramReport:
    """Check ``G = [f(xi_i - xi_j)]`` is positive semidefinite.

    Passes when ``min_eig >= -tol * max(1, max|G_ij|)``.
    """
    g = gram_matrix(f, points)
    eig = _spectrum(g)
    scale = max(1.0, float(np.max(np.abs(g))))
    return GramReport(g, eig, float(tol), bool(eig[0] >= -tol * scale), "positive")


def negative_type_check(psi, points, tol: float = DEFAULT_TOL) -> GramReport:
    """Check ``psi`` is of negative type on ``points``.

    The report describes ``P G P`` with ``P`` the centering projector onto
    ``{c : sum c_i = 0}``; the check passes when
    ``max_eig(P G P) <= tol * max(1, max|G_ij|)``.
    """
    g = gram_matrix(psi, points)
    size = g.shape[0]
    proj = np.eye(size) - np.full((size, size), 1.0 / size)
    pgp = proj @ g @ proj
    pgp = 0.5 * (pgp + pgp.T)
    eig = _spectrum(pgp)
    scale = max(1.0, float(np.max(np.abs(g))))
    return GramReport(pgp, eig, float(tol), bool(eig[-1] <= tol * scale), "negative")


def schoenberg_check(psi, points, t_grid: Sequence[float], tol: float = DEFAULT_TOL) -> list[GramReport]:
    """Positive-type check of ``exp(-t psi)`` for every ``t`` in ``t_grid``.

    ``psi`` is of negative type exactly when all of these pass (for every
    ``t >= 0``); callers combine the list with ``all(r.passed for r in ...)``.
    """
    t_grid = [float(t) for t in t_grid]
    if any(not t > 0 or not math.isfinite(t) for t in t_grid):
        raise DomainError(f"t values must be positive and finite, got {t_grid}")
    points = _check_points(points)
    # evaluate psi once; exp(-t psi) is applied entrywise
    g_psi = gram_matrix(psi, points)
    reports = []
    for t in t_grid:
        g = np.exp(-t * g_psi)
        eig = _spectrum(g)
        scale = max(1.0, float(np.max(np.abs(g))))
        reports.append(GramReport(g, eig, float(tol), bool(eig[0] >= -tol * scale), "positive"))
    return reports


def sample_points(rng: np.random.Generator, size: int, n: int, diagonal_fraction: float = 0.5,
                  max_norm: float = 2.0) -> list[MatrixPoint]:
    """Random test points of dimension ``n``.

    A mix of diagonal matrices with entries from ``{0, +-0.5, +-1, +-2}`` and
    dense complex Gaussian matrices rescaled to Hilbert-Schmidt norm at most
    ``max_norm``.
    """
    points = []
    for _ in range(size):
        if rng.random() < diagonal_fraction:
            entries = rng.choice(DIAGONAL_LEVELS, size=n)
            points.append(MatrixPoint.diag(entries))
        else:
            z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            radius = max_norm * rng.random()
            points.append(MatrixPoint(z * (radius / np.linalg.norm(z))))
    return points
