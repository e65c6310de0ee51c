"""Independent reference routes used to certify the eigen engine.

Neither oracle shares code with :mod:`ptdirac.eigen`: Sturm counts bisect
real symmetric tridiagonals, and small dense matrices go through their
characteristic polynomial (Faddeev-LeVerrier in extended precision, roots by
simultaneous iteration, no companion matrix).
"""

from __future__ import annotations

import mpmath
import numpy as np


def sturm_count(diag, off, x):
    """Number of eigenvalues strictly below each entry of ``x`` (vectorized)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    diag = np.asarray(diag, dtype=float)
    off_sq = np.asarray(off, dtype=float) ** 2
    tiny = np.finfo(float).tiny ** 0.5
    q = diag[0] - x
    q = np.where(q == 0.0, -tiny, q)
    count = (q < 0).astype(int)
    for i in range(1, diag.shape[0]):
        q = diag[i] - x - off_sq[i - 1] / q
        q = np.where(q == 0.0, -tiny, q)
        count += q < 0
    return count


def sturm_bisection(diag, off, rel_tol: float = 4 * np.finfo(float).eps) -> np.ndarray:
    """All eigenvalues of a real symmetric tridiagonal, ascending."""
    diag = np.asarray(diag, dtype=float)
    off = np.asarray(off, dtype=float)
    n = diag.shape[0]
    radius = np.zeros(n)
    radius[:-1] += np.abs(off)
    radius[1:] += np.abs(off)
    lo_bound = float((diag - radius).min())
    hi_bound = float((diag + radius).max())
    span = max(hi_bound - lo_bound, 1.0)
    lo = np.full(n, lo_bound - 1e-3 * span)
    hi = np.full(n, hi_bound + 1e-3 * span)
    k = np.arange(n)
    scale = max(abs(lo_bound), abs(hi_bound), 1.0)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        below = sturm_count(diag, off, mid)
        upper = below > k
        hi = np.where(upper, mid, hi)
        lo = np.where(upper, lo, mid)
        if np.max(hi - lo) <= rel_tol * scale:
            break
    return 0.5 * (lo + hi)


def characteristic_polynomial(matrix, dps: int = 50):
    """Monic coefficients [1, c1, ..., cn] of det(x I - A) by Faddeev-LeVerrier."""
    a = np.asarray(matrix, dtype=complex)
    n = a.shape[0]
    with mpmath.workdps(dps):
        A = mpmath.matrix([[mpmath.mpc(complex(a[i, j])) for j in range(n)] for i in range(n)])
        coeffs = [mpmath.mpc(1)]
        m = mpmath.zeros(n, n)
        ident = mpmath.eye(n)
        for k in range(1, n + 1):
            m = A * m + coeffs[-1] * ident
            am = A * m
            trace = sum(am[i, i] for i in range(n))
            coeffs.append(-trace / k)
        return coeffs


def charpoly_roots(matrix, dps: int = 50) -> np.ndarray:
    """Eigenvalues as roots of the characteristic polynomial (Durand-Kerner)."""
    with mpmath.workdps(dps):
        coeffs = characteristic_polynomial(matrix, dps)
        roots = mpmath.polyroots(coeffs, maxsteps=500, extraprec=2 * dps)
        return np.array([complex(r) for r in roots])
