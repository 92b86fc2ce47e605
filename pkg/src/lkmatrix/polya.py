"""Modified Polya functions ``Pi(omega, lam) = exp(-gamma lam^2) prod 1/(1 + alpha_k lam^2)``.

Everything is evaluated through ``log Pi``; the plain product underflows as
soon as ``lam`` or the number of factors gets large. All functions accept a
scalar or an array for ``lam`` and broadcast over it.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError
from .omega import OmegaParam, omega_norm

__all__ = [
    "log_polya",
    "polya_eval",
    "polya_product_form",
    "polya_log_deriv_closed",
    "polya_log_deriv_series",
    "polya_second_deriv_at_zero",
    "one_minus_polya_bound",
]

SERIES_MAX_TERMS = 64
SERIES_RTOL = 1e-15


def _as_float(x):
    x = np.asarray(x, dtype=float)
    return x if x.ndim else float(x)


def log_polya_squared(omega: OmegaParam, x2):
    """``log Pi`` as a function of ``x2 = lam**2`` (array of any shape)."""
    x2 = np.asarray(x2, dtype=float)
    out = -omega.gamma * x2
    if omega.alpha:
        out = out - np.log1p(x2[..., None] * omega.alpha_array).sum(axis=-1)
    return out


def log_polya(omega: OmegaParam, lam):
    """Natural log of ``Pi(omega, lam)``; always ``<= 0``."""
    lam = np.asarray(lam, dtype=float)
    return _as_float(log_polya_squared(omega, lam * lam))


def polya_eval(omega: OmegaParam, lam):
    """Evaluate the modified Polya function.

    Parameters
    ----------
    omega : OmegaParam
        Parameter ``(alpha, gamma)``.
    lam : float or array_like
        Real argument(s).

    Returns
    -------
    float or ndarray
        Values in ``(0, 1]`` (they may underflow to 0.0 for huge ``lam``),
        equal to 1 at ``lam = 0``.
    """
    return _as_float(np.exp(log_polya(omega, lam)))


def polya_product_form(omega: OmegaParam, lam):
    """Direct product evaluation, kept only as a cross-check of :func:`polya_eval`."""
    lam = np.asarray(lam, dtype=float)
    x2 = lam * lam
    out = np.exp(-omega.gamma * x2)
    for a in omega.alpha:
        out = out / (1.0 + a * x2)
    return _as_float(out)


def polya_log_deriv_closed(omega: OmegaParam, lam):
    """Logarithmic derivative ``Pi'(omega, lam) / Pi(omega, lam)``.

    Termwise derivative of ``log Pi``:
    ``-2 gamma lam - sum_k 2 alpha_k lam / (1 + alpha_k lam^2)``.
    Odd in ``lam`` and zero at the origin.
    """
    lam = np.asarray(lam, dtype=float)
    out = -2.0 * omega.gamma * lam
    if omega.alpha:
        a = omega.alpha_array
        out = out - (2.0 * a * lam[..., None] / (1.0 + a * (lam * lam)[..., None])).sum(axis=-1)
    return _as_float(out)


def polya_log_deriv_series(omega: OmegaParam, lam: float, m_max: int = SERIES_MAX_TERMS) -> float:
    """Power series of the logarithmic derivative around ``lam = 0``.

    Sums ``-2 (gamma + p_1) lam + sum_{m=2}^{m_max} 2 p_m(-alpha) lam^(2m-1)``
    where ``p_m(-alpha) = (-1)^m p_m(alpha)``. Summation stops early once a
    term drops below ``1e-15`` of the running sum.

    Only converges for ``max(alpha) * lam**2 < 1``; outside that disc a
    :class:`~lkmatrix.errors.DomainError` is raised.
    """
    lam = float(lam)
    if int(m_max) != m_max or m_max < 1:
        raise DomainError(f"m_max must be a positive integer, got {m_max!r}")
    if omega.alpha and omega.alpha[0] * lam * lam >= 1.0:
        raise DomainError(
            f"series divergent: max(alpha) * lam^2 = {omega.alpha[0] * lam * lam:g} >= 1"
        )
    total = -2.0 * omega_norm(omega) * lam
    if not omega.alpha:
        return total
    # term m equals -2 lam sum_k alpha_k (-alpha_k lam^2)^(m-1); carrying the
    # bounded powers avoids the overflow of lam^(2m-1) against p_m underflow
    alpha = omega.alpha_array
    ratio = -alpha * lam * lam
    powers = np.ones_like(alpha)
    for _ in range(2, int(m_max) + 1):
        powers *= ratio
        term = -2.0 * lam * float(np.dot(alpha, powers))
        total += term
        if abs(term) < SERIES_RTOL * abs(total):
            break
    return total


def polya_second_deriv_at_zero(omega: OmegaParam) -> float:
    """``Pi''(omega, 0) = -2 ||omega||``."""
    return -2.0 * omega_norm(omega)


def one_minus_polya_bound(omega: OmegaParam, s):
    """Upper bound ``2 ||omega|| s^2`` on ``1 - Pi(omega, s)``.

    ``Pi(omega, .)`` is the Fourier transform of a symmetric probability
    measure, so ``1 - Pi(s) <= s^2 / 2 * second moment = -s^2 Pi''(0)``.
    """
    s = np.asarray(s, dtype=float)
    return _as_float(-polya_second_deriv_at_zero(omega) * s * s)
