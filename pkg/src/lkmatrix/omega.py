"""Points of the parameter space and the scalar functionals defined on it.

A parameter ``omega = (alpha, gamma)`` consists of a summable family of
nonnegative numbers ``alpha`` together with a drift ``gamma >= 0``. Only the
multiset of nonzero ``alpha`` entries matters, so every value is stored in a
canonical form: zeros stripped, the rest sorted nonincreasing. Infinite
families are represented by finite truncations; see
:func:`truncation_error_bound` for the price of dropping a tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .errors import DomainError

__all__ = [
    "OmegaParam",
    "ZERO",
    "canonicalize",
    "power_sum",
    "omega_norm",
    "l_functional",
    "sigma_moment",
    "truncation_error_bound",
]


def _canonical_alpha(raw_alpha: Iterable[float]) -> tuple[float, ...]:
    values = []
    for i, a in enumerate(raw_alpha):
        try:
            a = float(a)
        except (TypeError, ValueError):
            raise DomainError(f"alpha[{i}] = {a!r} is not a real number") from None
        if not math.isfinite(a):
            raise DomainError(f"alpha[{i}] = {a!r} is not finite")
        if a < 0:
            raise DomainError(f"alpha[{i}] = {a!r} is negative")
        if a > 0:
            values.append(a)
    values.sort(reverse=True)
    return tuple(values)


def _check_gamma(gamma) -> float:
    try:
        gamma = float(gamma)
    except (TypeError, ValueError):
        raise DomainError(f"gamma = {gamma!r} is not a real number") from None
    if not math.isfinite(gamma):
        raise DomainError(f"gamma = {gamma!r} is not finite")
    if gamma < 0:
        raise DomainError(f"gamma = {gamma!r} is negative")
    # normalise -0.0 so that equality and hashing are exact
    return gamma + 0.0


@dataclass(frozen=True)
class OmegaParam:
    """A point ``(alpha, gamma)`` of the parameter space in canonical form.

    Construction always canonicalizes, so ``OmegaParam([0, 0.5, 1], 0.2)``
    and ``OmegaParam([1, 0.5], 0.2)`` compare (and hash) equal.

    Parameters
    ----------
    alpha : iterable of float
        Nonnegative, finite entries in any order; zeros are discarded.
    gamma : float
        Nonnegative drift.
    """

    alpha: tuple[float, ...] = ()
    gamma: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "alpha", _canonical_alpha(self.alpha))
        object.__setattr__(self, "gamma", _check_gamma(self.gamma))

    @property
    def alpha_array(self) -> np.ndarray:
        return np.array(self.alpha, dtype=float)

    @property
    def is_zero(self) -> bool:
        return not self.alpha and self.gamma == 0.0

    def scaled(self, factor: float) -> "OmegaParam":
        """Return ``(factor * alpha, factor * gamma)``."""
        if factor < 0:
            raise DomainError(f"scale factor {factor!r} is negative")
        return OmegaParam([factor * a for a in self.alpha], factor * self.gamma)

    def to_json(self) -> dict:
        return {"alpha": list(self.alpha), "gamma": self.gamma}

    @classmethod
    def from_json(cls, data: dict) -> "OmegaParam":
        return cls(data.get("alpha", ()), data.get("gamma", 0.0))


ZERO = OmegaParam()


def canonicalize(raw_alpha: Iterable[float], gamma: float = 0.0) -> OmegaParam:
    """Build the canonical :class:`OmegaParam` from an arbitrary ``alpha``.

    Raises :class:`~lkmatrix.errors.DomainError` naming the first negative
    or non-finite entry, e.g. ``"alpha[1] = -0.5 is negative"``.
    """
    return OmegaParam(tuple(raw_alpha), gamma)


def power_sum(omega: OmegaParam, m: int) -> float:
    """Newton power sum ``p_m(alpha) = sum_k alpha_k**m`` for ``m >= 1``."""
    if int(m) != m or m < 1:
        raise DomainError(f"power sum order must be an integer >= 1, got {m!r}")
    if not omega.alpha:
        return 0.0
    return float(np.sum(omega.alpha_array ** int(m)))


def omega_norm(omega: OmegaParam) -> float:
    """``||omega|| = p_1(alpha) + gamma``."""
    return math.fsum(omega.alpha) + omega.gamma


def l_functional(omega: OmegaParam, f: Callable[[float], float]) -> float:
    """Integrate ``f`` against the spectral measure of ``omega``.

    The measure puts mass ``gamma`` at 0 and mass ``alpha_j`` at each
    ``alpha_j``, so the result is ``gamma * f(0) + sum_j alpha_j * f(alpha_j)``.
    """
    total = omega.gamma * f(0.0) if omega.gamma else 0.0
    return total + math.fsum(a * f(a) for a in omega.alpha)


def sigma_moment(omega: OmegaParam, m: int) -> float:
    """``m``-th moment of the spectral measure of ``omega``.

    ``M_0 = gamma + p_1(alpha)`` and ``M_m = p_{m+1}(alpha)`` for ``m >= 1``.
    """
    if int(m) != m or m < 0:
        raise DomainError(f"moment order must be an integer >= 0, got {m!r}")
    if m == 0:
        return omega_norm(omega)
    return power_sum(omega, int(m) + 1)


def truncation_error_bound(tail_mass: float, lam: float) -> float:
    """Bound on the change of ``|log Pi(omega, lam)|`` from dropping a tail.

    Removing entries of total mass ``tail_mass`` from ``alpha`` changes the
    log of the Polya function by ``sum log(1 + a lam^2) <= tail_mass lam^2``.
    """
    if tail_mass < 0:
        raise DomainError(f"tail mass {tail_mass!r} is negative")
    return float(tail_mass) * float(lam) ** 2
