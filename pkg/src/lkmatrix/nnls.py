"""Active-set nonnegative least squares (Lawson-Hanson).

Small dense problems only. The iteration is deterministic given the column
order: ties in the dual vector are broken by the lowest column index.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError, NumericError

__all__ = ["nnls", "kkt_residuals"]


def _lstsq(a, b):
    return np.linalg.lstsq(a, b, rcond=None)[0]


def nnls(a, b, tol: float | None = None, max_iter: int | None = None):
    """Solve ``min ||A x - b||_2`` subject to ``x >= 0``.

    Parameters
    ----------
    a : (m, n) array_like
    b : (m,) array_like
    tol : float, optional
        Dual feasibility threshold; defaults to
        ``10 * eps * max(m, n) * ||A||_1 * max(1, ||b||_inf)``.
    max_iter : int, optional
        Outer iteration cap, default ``3 n``.

    Returns
    -------
    x : ndarray
        Minimizer.
    rnorm : float
        ``||A x - b||_2``.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 2 or b.ndim != 1 or a.shape[0] != b.shape[0]:
        raise DomainError(f"incompatible shapes {a.shape} and {b.shape}")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise NumericError("non-finite input to nnls")
    m, n = a.shape
    if tol is None:
        tol = 10 * np.finfo(float).eps * max(m, n) * np.linalg.norm(a, 1) * max(1.0, np.abs(b).max(initial=0))
    if max_iter is None:
        max_iter = 3 * n

    x = np.zeros(n)
    passive = np.zeros(n, dtype=bool)
    w = a.T @ b
    it = 0
    while not passive.all():
        dual = np.where(passive, -np.inf, w)
        j = int(np.argmax(dual))
        if dual[j] <= tol:
            break
        if it >= max_iter:
            raise NumericError("nnls did not converge")
        it += 1
        passive[j] = True
        skipped = False
        first = True
        while True:
            z = np.zeros(n)
            z[passive] = _lstsq(a[:, passive], b)
            if np.all(z[passive] > 0):
                x = z
                break
            if first and z[j] <= 0:
                # rounding made the entering column useless; skip it this pass
                passive[j] = False
                skipped = True
                break
            first = False
            blocking = passive & (z <= 0)
            step = np.min(x[blocking] / (x[blocking] - z[blocking]))
            x = x + step * (z - x)
            passive &= x > 0
            x[~passive] = 0.0
        if skipped:
            w[j] = 0.0
        else:
            w = a.T @ (b - a @ x)
    return x, float(np.linalg.norm(a @ x - b))


def kkt_residuals(a, b, x):
    """Return ``(stationarity, dual_infeasibility)`` of a candidate solution.

    ``stationarity`` is the largest ``|grad_i|`` over positive ``x_i``;
    ``dual_infeasibility`` the largest ``max(0, -grad_i)`` over ``x_i = 0``,
    with ``grad = A^T (A x - b)``.
    """
    a = np.asarray(a, dtype=float)
    grad = a.T @ (a @ x - np.asarray(b, dtype=float))
    active = x > 0
    stat = float(np.max(np.abs(grad[active]), initial=0.0))
    infeas = float(np.max(np.maximum(-grad[~active], 0.0), initial=0.0))
    return stat, infeas
