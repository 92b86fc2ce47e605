"""Bochner mixtures, the Levy-Khinchin map and its inverse on discrete measures.

A function of negative type on the matrix space is described by a triple
``(psi0, A, nu)``::

    psi(xi) = psi0 + A tr(xi^2) + sum_m w_m (1 - phi_{omega_m}(xi))

with ``nu = sum_m w_m delta_{omega_m}`` a finite measure carried by nonzero
parameters. The forward map is :func:`lk_forward`; :func:`recover_A` and
:func:`recover_measure` invert it from point evaluations of ``psi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import DomainError, IllPosedError, ModelViolationError
from .nnls import nnls
from .omega import OmegaParam, omega_norm
from .spherical import MatrixPoint, _svals, as_matrix, spherical_from_singular_values, trace_square

__all__ = [
    "DiscreteOmegaMeasure",
    "LevyTriple",
    "MeasureRecovery",
    "bochner_forward",
    "bochner_kernel",
    "lk_forward",
    "lk_kernel",
    "integrability_functional",
    "drift_sweep",
    "recover_A",
    "default_probes",
    "design_matrix",
    "recover_measure",
]

NORMALIZATION_TOL = 1e-12


def _as_omega(omega) -> OmegaParam:
    if isinstance(omega, OmegaParam):
        return omega
    if isinstance(omega, dict):
        return OmegaParam.from_json(omega)
    alpha, gamma = omega
    return OmegaParam(alpha, gamma)


@dataclass(frozen=True)
class DiscreteOmegaMeasure:
    """Finitely many weighted atoms on the parameter space.

    Atoms with the same canonical parameter are merged (weights add), in
    order of first appearance.
    """

    atoms: tuple[tuple[OmegaParam, float], ...] = ()

    def __post_init__(self):
        merged: dict[OmegaParam, float] = {}
        for i, (omega, weight) in enumerate(self.atoms):
            omega = _as_omega(omega)
            weight = float(weight)
            if not (math.isfinite(weight) and weight > 0):
                raise DomainError(f"atoms[{i}].weight = {weight!r} must be positive and finite")
            merged[omega] = merged.get(omega, 0.0) + weight
        object.__setattr__(self, "atoms", tuple(merged.items()))

    def __len__(self):
        return len(self.atoms)

    def __add__(self, other: "DiscreteOmegaMeasure") -> "DiscreteOmegaMeasure":
        return DiscreteOmegaMeasure(self.atoms + other.atoms)

    @property
    def omegas(self) -> list[OmegaParam]:
        return [o for o, _ in self.atoms]

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for _, w in self.atoms], dtype=float)

    @property
    def total_mass(self) -> float:
        return math.fsum(w for _, w in self.atoms)

    def require_off_zero(self) -> None:
        for i, (omega, _) in enumerate(self.atoms):
            if omega.is_zero:
                raise DomainError(f"atoms[{i}] sits at omega = 0; a Levy measure must avoid 0")

    def to_json(self) -> list[dict]:
        return [{**omega.to_json(), "weight": w} for omega, w in self.atoms]

    @classmethod
    def from_json(cls, data: Iterable[dict]) -> "DiscreteOmegaMeasure":
        return cls(tuple((OmegaParam.from_json(d), d["weight"]) for d in data))


@dataclass(frozen=True)
class LevyTriple:
    """Data ``(psi0, A, nu)`` of a Levy-Khinchin representation."""

    psi0: float = 0.0
    A: float = 0.0
    nu: DiscreteOmegaMeasure = field(default_factory=DiscreteOmegaMeasure)

    def __post_init__(self):
        for name in ("psi0", "A"):
            value = float(getattr(self, name))
            if not (math.isfinite(value) and value >= 0):
                raise DomainError(f"{name} = {value!r} must be nonnegative and finite")
            object.__setattr__(self, name, value)
        nu = self.nu
        if not isinstance(nu, DiscreteOmegaMeasure):
            nu = DiscreteOmegaMeasure(tuple(nu))
            object.__setattr__(self, "nu", nu)
        nu.require_off_zero()
        if not math.isfinite(integrability_functional(nu)):
            raise DomainError("Levy measure is not integrable")

    def to_json(self) -> dict:
        return {"psi0": self.psi0, "A": self.A, "nu": self.nu.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "LevyTriple":
        return cls(
            data.get("psi0", 0.0),
            data.get("A", 0.0),
            DiscreteOmegaMeasure.from_json(data.get("nu", ())),
        )


def _one_minus_phi(omega: OmegaParam, svals) -> np.ndarray | float:
    return -np.expm1(spherical_from_singular_values(omega, svals, log=True))


def bochner_forward(mu: DiscreteOmegaMeasure, xi) -> float:
    """Mixture ``sum_m w_m phi_{omega_m}(xi)`` of spherical functions.

    ``mu`` must be a probability measure (weights summing to 1 within
    ``1e-12``); the result is then a normalized function of positive type.
    """
    total = mu.total_mass
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise DomainError(f"mixture weights sum to {total!r}, expected 1")
    s = _svals(as_matrix(xi))
    return math.fsum(w * spherical_from_singular_values(o, s) for o, w in mu.atoms)


def lk_forward(triple: LevyTriple, xi) -> float:
    """Evaluate ``psi0 + A tr(xi^2) + sum_m w_m (1 - phi_{omega_m}(xi))``."""
    a = as_matrix(xi)
    value = triple.psi0 + triple.A * trace_square(a)
    if triple.nu.atoms:
        s = _svals(a)
        value += math.fsum(w * _one_minus_phi(o, s) for o, w in triple.nu.atoms)
    return value


def bochner_kernel(mu: DiscreteOmegaMeasure) -> Callable[[MatrixPoint], float]:
    """``xi -> bochner_forward(mu, xi)`` (validates ``mu`` once)."""
    bochner_forward(mu, np.zeros((1, 1)))
    return lambda xi: bochner_forward(mu, xi)


def lk_kernel(triple: LevyTriple) -> Callable[[MatrixPoint], float]:
    return lambda xi: lk_forward(triple, xi)


def integrability_functional(nu: DiscreteOmegaMeasure) -> float:
    """``sum_m w_m ||omega_m|| / (1 + ||omega_m||)``; finite for any discrete ``nu``."""
    nu.require_off_zero()
    terms = []
    for omega, w in nu.atoms:
        norm = omega_norm(omega)
        terms.append(w * norm / (1.0 + norm))
    return math.fsum(terms)


def _check_s_grid(s_grid) -> np.ndarray:
    s = np.asarray(s_grid, dtype=float)
    if s.ndim != 1 or len(s) < 3:
        raise DomainError("s_grid needs at least 3 points")
    if not np.all(np.isfinite(s)) or s[0] <= 0 or np.any(np.diff(s) <= 0):
        raise DomainError("s_grid must be positive and strictly increasing")
    if s[-1] < 10:
        raise DomainError(f"s_grid must reach at least 10, got max {s[-1]:g}")
    return s


def drift_sweep(psi: Callable, n: int, s_grid) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(s, g)`` with ``g(s) = psi(s xi0) / s^2`` and ``xi0 = diag(1, 0, ..., 0)``."""
    s = _check_s_grid(s_grid)
    if int(n) != n or n < 1:
        raise DomainError(f"dimension must be a positive integer, got {n!r}")
    xi0 = MatrixPoint.diag([1.0], int(n))
    g = np.array([float(psi(xi0 * float(si))) / (si * si) for si in s])
    return s, g


def recover_A(psi: Callable, n: int, s_grid, tol: float = 1e-8) -> float:
    """Estimate the drift ``A = lim_{s -> inf} psi(s xi0) / s^2``.

    Fits ``g(s) = A + c / s^2`` through the two largest grid points (one
    Richardson step) and clamps the result at 0. For any ``psi`` given by a
    nonnegative triple ``g`` is nonincreasing in ``s``; an increase beyond
    ``tol * max(1, |g|)`` (or a non-finite value) raises
    :class:`~lkmatrix.errors.ModelViolationError`.
    """
    s, g = drift_sweep(psi, n, s_grid)
    if not np.all(np.isfinite(g)):
        raise ModelViolationError("psi(s xi0) / s^2 is not finite on the grid")
    rises = np.diff(g) - tol * np.maximum(1.0, np.abs(g[:-1]))
    if np.any(rises > 0):
        k = int(np.argmax(rises > 0))
        raise ModelViolationError(
            f"psi(s xi0) / s^2 increases from {g[k]:.6g} at s={s[k]:g} "
            f"to {g[k + 1]:.6g} at s={s[k + 1]:g}; psi grows faster than s^2"
        )
    s1, s2 = s[-2], s[-1]
    a_hat = (s2 * s2 * g[-1] - s1 * s1 * g[-2]) / (s2 * s2 - s1 * s1)
    return max(0.0, float(a_hat))


def default_probes(n: int = 2) -> list[MatrixPoint]:
    """Probe points ``s diag(1, 0)`` and ``diag(a, b)``, padded to dimension ``n``."""
    if n < 2:
        raise DomainError("default probes need dimension >= 2")
    probes = [MatrixPoint.diag([s, 0.0], n) for s in (0.25, 0.5, 1.0, 2.0, 4.0)]
    levels = (0.5, 1.0, 2.0)
    probes += [MatrixPoint.diag([a, b], n) for a in levels for b in levels]
    return probes


def design_matrix(probes: Sequence, grid: Sequence[OmegaParam]) -> np.ndarray:
    """Columns ``tr(xi^2)`` then ``1 - phi_{omega_m}(xi)`` for each grid atom."""
    rows = []
    for p in probes:
        a = as_matrix(p)
        s = _svals(a)
        rows.append([trace_square(a)] + [float(_one_minus_phi(o, s)) for o in grid])
    return np.array(rows, dtype=float)


@dataclass(frozen=True)
class MeasureRecovery:
    """Result of :func:`recover_measure`."""

    A_hat: float
    weights: np.ndarray
    residual: float
    psi0_hat: float
    condition_number: float
    grid: tuple[OmegaParam, ...]

    def measure(self) -> DiscreteOmegaMeasure:
        """The recovered Levy measure, dropping zero weights."""
        return DiscreteOmegaMeasure(tuple((o, w) for o, w in zip(self.grid, self.weights) if w > 0))

    def to_json(self) -> dict:
        return {
            "A_hat": self.A_hat,
            "psi0_hat": self.psi0_hat,
            "weights": [{**o.to_json(), "weight": float(w)} for o, w in zip(self.grid, self.weights)],
            "residual": self.residual,
            "condition_number": self.condition_number,
        }


def _column_collisions(cols: np.ndarray, labels: Sequence[str], tol: float) -> list[tuple[str, str]]:
    found = []
    for i in range(cols.shape[1]):
        for j in range(i + 1, cols.shape[1]):
            if np.linalg.norm(cols[:, i] - cols[:, j]) <= tol:
                found.append((labels[i], labels[j]))
    return found


def recover_measure(psi: Callable, probes: Sequence | None, grid: Sequence[OmegaParam],
                    tol: float = 1e-10) -> MeasureRecovery:
    """Recover ``A`` and grid weights of ``nu`` from evaluations of ``psi``.

    Solves the nonnegative least-squares problem::

        min_{A >= 0, w >= 0} sum_probes [psi(xi) - psi(0) - A tr(xi^2)
                                         - sum_m w_m (1 - phi_{omega_m}(xi))]^2

    where ``psi(0)`` is measured at the zero matrix.

    Parameters
    ----------
    psi : callable
        Function on :class:`MatrixPoint`.
    probes : sequence of MatrixPoint or None
        Evaluation points, all of one dimension; ``None`` uses
        :func:`default_probes`. At least ``len(grid) + 1`` are required.
    grid : sequence of OmegaParam
        Candidate atoms, all nonzero.
    tol : float
        Two normalized design columns closer than ``tol`` count as identical,
        and singular values below ``tol`` times the largest count as rank loss.

    Returns
    -------
    MeasureRecovery

    Raises
    ------
    IllPosedError
        If the design cannot separate the unknowns; ``collisions`` lists the
        offending atom pairs.
    """
    grid = tuple(_as_omega(o) for o in grid)
    for i, o in enumerate(grid):
        if o.is_zero:
            raise DomainError(f"grid[{i}] is omega = 0; grid atoms must be nonzero")
    probes = default_probes() if probes is None else [
        p if isinstance(p, MatrixPoint) else MatrixPoint(p) for p in probes
    ]
    if len({p.n for p in probes}) != 1:
        raise DomainError("probes have mixed dimensions")
    if len(probes) < len(grid) + 1:
        raise DomainError(f"need at least {len(grid) + 1} probes, got {len(probes)}")

    design = design_matrix(probes, grid)
    norms = np.linalg.norm(design, axis=0)
    labels = ["A"] + [f"grid[{i}]" for i in range(len(grid))]
    if np.any(norms == 0):
        dead = [labels[i] for i in np.flatnonzero(norms == 0)]
        raise IllPosedError(f"probes do not see {', '.join(dead)}", [(d, d) for d in dead])
    scaled = design / norms
    collisions = _column_collisions(scaled, labels, tol)
    if collisions:
        pairs = "; ".join(f"{a} ~ {b}" for a, b in collisions)
        raise IllPosedError(f"design columns collide: {pairs}", collisions)
    svals = np.linalg.svd(scaled, compute_uv=False)
    if svals[-1] <= tol * svals[0]:
        raise IllPosedError(f"design is rank deficient (smallest singular value {svals[-1]:.3g})")

    psi0_hat = float(psi(MatrixPoint.zeros(probes[0].n)))
    target = np.array([float(psi(p)) for p in probes]) - psi0_hat
    x_scaled, _ = nnls(scaled, target)
    x = x_scaled / norms
    resid = design @ x - target
    return MeasureRecovery(
        A_hat=float(x[0]),
        weights=x[1:],
        residual=float(np.sqrt(np.mean(resid * resid))),
        psi0_hat=psi0_hat,
        condition_number=float(svals[0] / svals[-1]),
        grid=grid,
    )
