"""Compiled inner loops for the eigenvalue engine.

Everything here works on plain complex128 arrays and returns status codes
instead of raising, so the public wrappers in :mod:`ptdirac.eigen` can turn
failures into proper exceptions with partial results attached.
"""

import numpy as np
from numba import njit

# status codes shared with ptdirac.eigen
OK = 0
NO_CONVERGENCE = 1

# largest |c|, |s| accepted in a complex-orthogonal rotation before the sweep
# is discarded and retried with an exceptional shift
_ROT_GROWTH = 1.0e3


@njit(cache=True)
def _sweep(d, e, l, m, shift_g, work_d, work_e):
    """One implicit QL sweep on rows l..m of a complex symmetric tridiagonal.

    Works on copies of the active window; returns False (leaving d, e intact)
    when the complex-orthogonal rotations break down or grow too large.
    """
    for i in range(l, m + 1):
        work_d[i] = d[i]
        work_e[i] = e[i]
    g = shift_g
    s = 1.0 + 0.0j
    c = 1.0 + 0.0j
    p = 0.0 + 0.0j
    for i in range(m - 1, l - 1, -1):
        f = s * work_e[i]
        b = c * work_e[i]
        r = np.sqrt(f * f + g * g)
        scale = abs(f) + abs(g)
        work_e[i + 1] = r
        if scale == 0.0:
            # exact decoupling; finish like the real-arithmetic algorithm
            work_d[i + 1] -= p
            work_e[m] = 0.0
            for k in range(l, m + 1):
                d[k] = work_d[k]
                e[k] = work_e[k]
            return True
        if abs(r) * _ROT_GROWTH < scale:
            return False
        s = f / r
        c = g / r
        g = work_d[i + 1] - p
        r = (work_d[i] - g) * s + 2.0 * c * b
        p = s * r
        work_d[i + 1] = g + p
        g = c * r - b
    work_d[l] -= p
    work_e[l] = g
    work_e[m] = 0.0
    for k in range(l, m + 1):
        d[k] = work_d[k]
        e[k] = work_e[k]
    return True


@njit(cache=True)
def tridiag_csym_eigvals(d, e, tol, budget):
    """Eigenvalues of a complex symmetric tridiagonal matrix (in place).

    ``d`` holds the diagonal (length n), ``e`` the off-diagonal padded with a
    trailing zero (length n).  Implicit QL iteration with complex-orthogonal
    plane rotations (c**2 + s**2 = 1) keeps the matrix tridiagonal and
    symmetric.  Returns ``(status, n_done, sweeps)``; on success ``d`` holds the
    eigenvalues, on failure ``d[:n_done]`` are converged.
    """
    n = d.shape[0]
    work_d = np.empty(n, dtype=np.complex128)
    work_e = np.empty(n, dtype=np.complex128)
    sweeps = 0
    # deterministic pseudo-random factors for exceptional shifts
    seed = 12345
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= tol * dd or abs(e[m]) < 1e-300:
                    break
                m += 1
            if m == l:
                break
            if sweeps >= budget:
                return NO_CONVERGENCE, l, sweeps
            it += 1
            sweeps += 1
            if it % 12 == 0:
                # exceptional shift: perturb in a direction unrelated to the data
                seed = (seed * 1103515245 + 12345) % 2147483648
                theta = 2.0 * np.pi * seed / 2147483648.0
                mu = d[l] + abs(e[l]) * (np.cos(theta) + 1j * np.sin(theta))
                g = d[m] - mu
            else:
                g = (d[l + 1] - d[l]) / (2.0 * e[l])
                r = np.sqrt(g * g + 1.0)
                if abs(g - r) > abs(g + r):
                    r = -r
                g = d[m] - d[l] + e[l] / (g + r)
            if not _sweep(d, e, l, m, g, work_d, work_e):
                # breakdown: nudge the shift and try again on the next pass
                seed = (seed * 1103515245 + 12345) % 2147483648
                theta = 2.0 * np.pi * seed / 2147483648.0
                mu = d[l] + 0.5 * abs(e[l]) * (np.cos(theta) + 1j * np.sin(theta))
                _sweep(d, e, l, m, d[m] - mu, work_d, work_e)
    return OK, n, sweeps


@njit(cache=True)
def hessenberg_reduce(a):
    """Householder reduction of a square complex matrix to upper Hessenberg (in place)."""
    n = a.shape[0]
    for k in range(n - 2):
        alpha_sq = 0.0
        for i in range(k + 1, n):
            alpha_sq += a[i, k].real ** 2 + a[i, k].imag ** 2
        norm = np.sqrt(alpha_sq)
        if norm == 0.0:
            continue
        x0 = a[k + 1, k]
        phase = x0 / abs(x0) if abs(x0) > 0.0 else 1.0 + 0.0j
        v = np.zeros(n - k - 1, dtype=np.complex128)
        for i in range(k + 1, n):
            v[i - k - 1] = a[i, k]
        v[0] += phase * norm
        vnorm_sq = 0.0
        for i in range(v.shape[0]):
            vnorm_sq += v[i].real ** 2 + v[i].imag ** 2
        if vnorm_sq == 0.0:
            continue
        beta = 2.0 / vnorm_sq
        # a[k+1:, k:] -= beta v (v^H a[k+1:, k:])
        for j in range(k, n):
            w = 0.0 + 0.0j
            for i in range(k + 1, n):
                w += np.conj(v[i - k - 1]) * a[i, j]
            w *= beta
            for i in range(k + 1, n):
                a[i, j] -= v[i - k - 1] * w
        # a[:, k+1:] -= beta (a[:, k+1:] v) v^H
        for i in range(n):
            w = 0.0 + 0.0j
            for j in range(k + 1, n):
                w += a[i, j] * v[j - k - 1]
            w *= beta
            for j in range(k + 1, n):
                a[i, j] -= w * np.conj(v[j - k - 1])
        for i in range(k + 2, n):
            a[i, k] = 0.0
    return a


@njit(cache=True)
def _givens(x, y):
    """Unitary rotation (c real, s complex) mapping (x, y) to (r, 0)."""
    ax = abs(x)
    ay = abs(y)
    if ay == 0.0:
        return 1.0, 0.0 + 0.0j
    if ax == 0.0:
        return 0.0, np.conj(y) / ay
    r = np.sqrt(ax * ax + ay * ay)
    c = ax / r
    s = (x / ax) * np.conj(y) / r
    return c, s


@njit(cache=True)
def hessenberg_qr_eigvals(h, tol, budget):
    """Eigenvalues of an upper Hessenberg matrix by shifted QR (destroys ``h``).

    Single complex Wilkinson shift per step with exceptional shifts every
    ten stalled iterations.  Returns ``(status, eigs, n_found, steps)``; on
    failure only ``eigs[hi+1:]`` (the deflated tail) is meaningful and
    ``n_found`` says how many.
    """
    n = h.shape[0]
    eigs = np.zeros(n, dtype=np.complex128)
    cs = np.zeros(n, dtype=np.float64)
    ss = np.zeros(n, dtype=np.complex128)
    hnorm = 0.0
    for i in range(n):
        for j in range(n):
            hnorm = max(hnorm, abs(h[i, j]))
    hi = n - 1
    it = 0
    steps = 0
    while hi >= 0:
        lo = hi
        while lo > 0:
            sub = abs(h[lo, lo - 1])
            ref = abs(h[lo - 1, lo - 1]) + abs(h[lo, lo])
            if ref == 0.0:
                ref = hnorm
            if sub <= tol * ref or sub < 1e-300:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            eigs[hi] = h[hi, hi]
            hi -= 1
            it = 0
            continue
        if steps >= budget:
            return NO_CONVERGENCE, eigs, n - 1 - hi, steps
        it += 1
        steps += 1
        a = h[hi - 1, hi - 1]
        b = h[hi - 1, hi]
        c = h[hi, hi - 1]
        d = h[hi, hi]
        if it % 10 == 0:
            mu = d + 0.75 * abs(c) * (1.0 + 0.5j)
        else:
            half_tr = 0.5 * (a + d)
            disc = np.sqrt(0.25 * (a - d) * (a - d) + b * c)
            mu1 = half_tr + disc
            mu2 = half_tr - disc
            mu = mu1 if abs(mu1 - d) <= abs(mu2 - d) else mu2
        for k in range(lo, hi + 1):
            h[k, k] -= mu
        # QR on the active window
        for k in range(lo, hi):
            cr, sr = _givens(h[k, k], h[k + 1, k])
            cs[k] = cr
            ss[k] = sr
            for j in range(k, hi + 1):
                t1 = h[k, j]
                t2 = h[k + 1, j]
                h[k, j] = cr * t1 + sr * t2
                h[k + 1, j] = -np.conj(sr) * t1 + cr * t2
        # RQ
        for k in range(lo, hi):
            cr = cs[k]
            sr = ss[k]
            top = min(k + 2, hi)
            for i in range(lo, top + 1):
                t1 = h[i, k]
                t2 = h[i, k + 1]
                h[i, k] = cr * t1 + np.conj(sr) * t2
                h[i, k + 1] = -sr * t1 + cr * t2
        for k in range(lo, hi + 1):
            h[k, k] += mu
    return OK, eigs, n, steps


@njit(cache=True)
def tridiag_solve(sub, diag, sup, rhs):
    """Solve a general complex tridiagonal system with partial pivoting.

    ``sub[i]`` couples row i+1 to column i, ``sup[i]`` couples row i to column
    i+1 (both length n-1).  Zero pivots are replaced by a tiny value so that
    inverse iteration at an exact eigenvalue still produces a direction.
    """
    n = diag.shape[0]
    # LU with row interchanges; U has up to two superdiagonals
    u0 = diag.copy()
    u1 = np.zeros(n, dtype=np.complex128)
    u2 = np.zeros(n, dtype=np.complex128)
    lmult = np.zeros(n, dtype=np.complex128)
    swapped = np.zeros(n, dtype=np.bool_)
    x = rhs.copy()
    for i in range(n - 1):
        u1[i] = sup[i]
    scale = 0.0
    for i in range(n):
        scale = max(scale, abs(diag[i]))
    for i in range(n - 1):
        scale = max(scale, abs(sub[i]), abs(sup[i]))
    tiny = 1e-14 * scale if scale > 0.0 else 1e-300
    for i in range(n - 1):
        below = sub[i]
        if abs(below) > abs(u0[i]):
            # swap rows i and i+1
            swapped[i] = True
            t0, t1, t2 = u0[i], u1[i], u2[i]
            diag_next = u0[i + 1]
            u0[i] = below
            u1[i] = diag_next
            u2[i] = u1[i + 1]
            if u0[i] == 0.0:
                u0[i] = tiny
            mult = t0 / u0[i]
            lmult[i] = mult
            u0[i + 1] = t1 - mult * diag_next
            u1[i + 1] = t2 - mult * u2[i]
            xi = x[i]
            x[i] = x[i + 1]
            x[i + 1] = xi - mult * x[i]
        else:
            if u0[i] == 0.0:
                u0[i] = tiny
            mult = below / u0[i]
            lmult[i] = mult
            u0[i + 1] = u0[i + 1] - mult * u1[i]
            u1[i + 1] = u1[i + 1] - mult * u2[i]
            x[i + 1] = x[i + 1] - mult * x[i]
    if u0[n - 1] == 0.0:
        u0[n - 1] = tiny
    x[n - 1] = x[n - 1] / u0[n - 1]
    if n > 1:
        x[n - 2] = (x[n - 2] - u1[n - 2] * x[n - 1]) / u0[n - 2]
    for i in range(n - 3, -1, -1):
        x[i] = (x[i] - u1[i] * x[i + 1] - u2[i] * x[i + 2]) / u0[i]
    return x


@njit(cache=True)
def lu_solve_dense(a, rhs):
    """Gaussian elimination with partial pivoting; zero pivots get a tiny nudge."""
    n = a.shape[0]
    m = a.copy()
    x = rhs.copy()
    scale = 0.0
    for i in range(n):
        for j in range(n):
            scale = max(scale, abs(m[i, j]))
    tiny = 1e-14 * scale if scale > 0.0 else 1e-300
    for k in range(n):
        piv = k
        best = abs(m[k, k])
        for i in range(k + 1, n):
            if abs(m[i, k]) > best:
                best = abs(m[i, k])
                piv = i
        if piv != k:
            for j in range(n):
                t = m[k, j]
                m[k, j] = m[piv, j]
                m[piv, j] = t
            t = x[k]
            x[k] = x[piv]
            x[piv] = t
        if m[k, k] == 0.0:
            m[k, k] = tiny
        for i in range(k + 1, n):
            f = m[i, k] / m[k, k]
            if f != 0.0:
                for j in range(k + 1, n):
                    m[i, j] -= f * m[k, j]
                x[i] -= f * x[k]
    for i in range(n - 1, -1, -1):
        acc = x[i]
        for j in range(i + 1, n):
            acc -= m[i, j] * x[j]
        x[i] = acc / m[i, i]
    return x
