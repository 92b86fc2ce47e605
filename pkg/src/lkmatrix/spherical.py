"""Spherical functions ``phi_omega`` on finite complex matrices.

A matrix ``xi`` enters only through its singular values ``s_1 >= ... >= s_n``:
``phi_omega(xi) = prod_j Pi(omega, s_j)``. For a real diagonal matrix this is
the familiar ``exp(-gamma tr(xi^2)) prod_k 1/det(1 + alpha_k xi^2)``; for a
general complex matrix it is the unique extension that is invariant under
``xi -> u xi v*`` with ``u, v`` unitary. Accordingly ``tr(xi^2)`` is read as
``sum_j s_j^2``, the squared Hilbert-Schmidt norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericError
from .omega import OmegaParam, omega_norm
from .polya import log_polya_squared

__all__ = [
    "MatrixPoint",
    "SingularSpectrum",
    "as_matrix",
    "singular_values",
    "hs_norm",
    "trace_square",
    "log_spherical",
    "spherical_eval",
    "spherical_from_singular_values",
    "remainder",
    "remainder_bound",
    "small_omega_linear_bound",
]


@dataclass(frozen=True, eq=False)
class MatrixPoint:
    """A finite square complex matrix, stored read-only."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise DomainError(f"expected a nonempty square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise DomainError("matrix has non-finite entries")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __eq__(self, other):
        if not isinstance(other, MatrixPoint):
            return NotImplemented
        return self.entries.shape == other.entries.shape and bool(
            np.array_equal(self.entries, other.entries)
        )

    def __neg__(self):
        return MatrixPoint(-self.entries)

    def __add__(self, other):
        return MatrixPoint(self.entries + as_matrix(other))

    def __sub__(self, other):
        return MatrixPoint(self.entries - as_matrix(other))

    def __mul__(self, scalar):
        return MatrixPoint(self.entries * scalar)

    __rmul__ = __mul__

    def padded(self, n: int) -> "MatrixPoint":
        """Embed top-left into an ``n x n`` zero matrix."""
        if n < self.n:
            raise DomainError(f"cannot pad a {self.n}x{self.n} matrix down to {n}x{n}")
        out = np.zeros((n, n), dtype=complex)
        out[: self.n, : self.n] = self.entries
        return MatrixPoint(out)

    @classmethod
    def diag(cls, values, n: int | None = None) -> "MatrixPoint":
        values = np.asarray(values, dtype=complex).ravel()
        point = cls(np.diag(values))
        return point if n is None else point.padded(n)

    @classmethod
    def zeros(cls, n: int) -> "MatrixPoint":
        return cls(np.zeros((n, n), dtype=complex))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "re": self.entries.real.tolist(),
            "im": self.entries.imag.tolist(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "MatrixPoint":
        """Read ``{"n", "re", "im"}`` or the shorthand ``{"diag": [...]}``."""
        if "diag" in data:
            return cls.diag(data["diag"], data.get("n"))
        re = np.asarray(data["re"], dtype=float)
        im = np.asarray(data["im"], dtype=float) if "im" in data else np.zeros_like(re)
        if re.shape != im.shape:
            raise DomainError(f"re and im have different shapes {re.shape} and {im.shape}")
        point = cls(re + 1j * im)
        if "n" in data and data["n"] != point.n:
            raise DomainError(f"declared n = {data['n']} but matrix is {point.n}x{point.n}")
        return point


@dataclass(frozen=True)
class SingularSpectrum:
    """Nonincreasing singular values of a matrix."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return len(self.values)


def as_matrix(xi) -> np.ndarray:
    """Return the complex entries of a :class:`MatrixPoint` or array-like."""
    if isinstance(xi, MatrixPoint):
        return xi.entries
    a = np.asarray(xi, dtype=complex)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise DomainError(f"expected square matrices, got shape {a.shape}")
    return a


def _svals(a: np.ndarray) -> np.ndarray:
    if not np.all(np.isfinite(a)):
        raise NumericError("singular values requested for a matrix with non-finite entries")
    try:
        return np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"singular value decomposition failed: {exc}") from exc


def singular_values(xi) -> SingularSpectrum:
    """Singular values of ``xi`` in nonincreasing order."""
    return SingularSpectrum(_svals(as_matrix(xi)))


def hs_norm(xi) -> float:
    """Hilbert-Schmidt (Frobenius) norm ``(sum |xi_ij|^2)^(1/2)``."""
    return float(np.linalg.norm(as_matrix(xi)))


def trace_square(xi) -> float:
    """``sum_j s_j^2``, i.e. ``tr(xi^2)`` on the diagonal form of ``xi``."""
    a = as_matrix(xi)
    return float(np.sum(a.real**2 + a.imag**2))


def spherical_from_singular_values(omega: OmegaParam, svals, log: bool = False):
    """Evaluate ``phi_omega`` from singular values of shape ``(..., n)``."""
    svals = np.asarray(svals, dtype=float)
    out = log_polya_squared(omega, svals * svals).sum(axis=-1)
    if not log:
        out = np.exp(out)
    return out if out.ndim else float(out)


def log_spherical(omega: OmegaParam, xi) -> float:
    """``log phi_omega(xi)``; finite even where ``phi`` itself underflows."""
    return spherical_from_singular_values(omega, _svals(as_matrix(xi)), log=True)


def spherical_eval(omega: OmegaParam, xi) -> float:
    """Evaluate the spherical function ``phi_omega`` at ``xi``.

    Parameters
    ----------
    omega : OmegaParam
        Parameter of the spherical function.
    xi : MatrixPoint or array_like
        Square complex matrix; a stack ``(..., n, n)`` is also accepted.

    Returns
    -------
    float or ndarray
        ``prod_j Pi(omega, s_j)`` over the singular values of ``xi``; equals 1
        at ``xi = 0`` and is unchanged by ``xi -> u xi v*`` and by zero padding.
    """
    return spherical_from_singular_values(omega, _svals(as_matrix(xi)))


# Series cut-offs for the cancellation-free helpers below; both series are
# truncated far past double precision on their stated ranges.
_SERIES_CUT = 0.5


def _log1p_minus_x(x: np.ndarray) -> np.ndarray:
    """``log(1 + x) - x`` for ``x >= 0`` without cancellation near 0."""
    x = np.asarray(x, dtype=float)
    small = x < _SERIES_CUT
    xs = np.where(small, x, 0.0)
    acc = np.zeros_like(xs)
    for k in range(60, 1, -1):
        acc = xs * (((-1.0) ** (k + 1)) / k + acc)
    acc = acc * xs
    big = np.log1p(np.where(small, 0.0, x)) - np.where(small, 0.0, x)
    return np.where(small, acc, big)


def _expm1_minus_x(x: float) -> float:
    """``exp(x) - 1 - x`` without cancellation near 0."""
    if abs(x) >= _SERIES_CUT:
        return math.expm1(x) - x
    term, total = x, 0.0
    for n in range(2, 30):
        term *= x / n
        total += term
    return total


def remainder(omega: OmegaParam, xi) -> float:
    """Second-order remainder ``R = phi_omega(xi) - 1 + ||omega|| tr(xi^2)``.

    Computed as ``(e^L - 1 - L) + (L + ||omega|| tr(xi^2))`` with
    ``L = log phi_omega(xi)``; the second bracket equals
    ``-sum_{k,j} (log(1 + alpha_k s_j^2) - alpha_k s_j^2)``, so neither piece
    suffers cancellation when ``omega`` is small.
    """
    s2 = _svals(as_matrix(xi)) ** 2
    if omega.alpha:
        x = np.multiply.outer(omega.alpha_array, s2)
        quad_gap = -float(np.sum(_log1p_minus_x(x)))
        log_phi = -omega.gamma * float(s2.sum()) - float(np.sum(np.log1p(x)))
    else:
        quad_gap = 0.0
        log_phi = -omega.gamma * float(s2.sum())
    return _expm1_minus_x(log_phi) + quad_gap


def _expansion_terms(norm: float, hs2: float):
    denom = 1.0 - norm * hs2
    quartic = hs2 * hs2 / denom
    exponent = hs2 + norm * quartic
    return exponent, quartic


def remainder_bound(omega: OmegaParam, xi) -> float:
    """Explicit bound on ``|remainder(omega, xi)|`` near ``omega = 0``.

    With ``h = |||xi|||^2`` and ``w = ||omega||`` the bound reads
    ``(exp(B) + h^2 / (1 - w h)) w^2`` where ``B = h + w h^2 / (1 - w h)``.
    It is only established for ``w < min(1/h, 1)``; outside that region a
    :class:`~lkmatrix.errors.DomainError` is raised.
    """
    norm = omega_norm(omega)
    hs2 = trace_square(xi)
    limit = 1.0 if hs2 <= 1.0 else 1.0 / hs2
    if not norm < limit:
        raise DomainError(
            f"outside expansion region: ||omega|| = {norm:g} must be < {limit:g}"
        )
    if norm == 0.0:
        return 0.0
    exponent, quartic = _expansion_terms(norm, hs2)
    # near the edge of the region the bound is legitimately infinite
    growth = math.exp(exponent) if exponent < 709.0 else math.inf
    return (growth + quartic) * norm * norm


def small_omega_linear_bound(rho: float, eps: float) -> float:
    """Constant ``C`` with ``|1 - phi_omega(xi)| <= C ||omega||``.

    Valid whenever ``||omega|| <= eps`` and ``|||xi||| <= rho``. Requires
    ``eps < min(1/rho^2, 1)``. With ``C1 = rho^2 + eps rho^4 / (1 - eps rho^2)``
    the constant is ``rho^2 + eps exp(C1) + C1 - rho^2``.
    """
    if not rho > 0 or not eps > 0:
        raise DomainError(f"rho and eps must be positive, got rho={rho!r}, eps={eps!r}")
    limit = min(1.0 / (rho * rho), 1.0)
    if not eps < limit:
        raise DomainError(f"outside expansion region: eps = {eps:g} must be < {limit:g}")
    c1, _ = _expansion_terms(eps, rho * rho)
    return rho * rho + eps * (math.exp(c1) + (c1 - rho * rho) / eps)
