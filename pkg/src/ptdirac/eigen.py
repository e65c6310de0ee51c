"""Self-contained eigenvalue engine.

Complex symmetric tridiagonals (every Schrödinger operator here, and the
staggered Dirac operator in interleaved order) go through implicit QL with
complex-orthogonal rotations, which preserves the tridiagonal symmetric
shape and costs O(N) per sweep.  Anything else is reduced to Hessenberg
form by Householder reflections and finished with single-shift complex QR.
Eigenvectors come from inverse iteration.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .discretize import BlockDiracOperator, TridiagonalOperator
from .errors import CapacityError, ConvergenceError, DomainError

#: fits the staggered Dirac operator (2N+1) at N = 3000
DEFAULT_MAX_SIZE = 6001
#: QR/QL iteration budget per unit of matrix size
DEFAULT_BUDGET_FACTOR = 50
#: deflation threshold relative to the neighbouring diagonal entries
DEFLATION_TOL = 1e-14


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted by (real, imag); ``residuals[k]`` belongs to ``eigenvalues[k]``."""

    eigenvalues: np.ndarray
    residuals: Optional[np.ndarray] = None
    source: str = ""

    def __len__(self):
        return len(self.eigenvalues)

    def below(self, cutoff: float) -> "Spectrum":
        keep = self.eigenvalues.real < cutoff
        res = None if self.residuals is None else self.residuals[keep]
        return Spectrum(self.eigenvalues[keep], res, self.source)


def sort_eigenvalues(values) -> np.ndarray:
    """Canonical order: real part, then imaginary part; stable for ties."""
    values = np.asarray(values, dtype=complex)
    order = np.lexsort((values.imag, values.real))
    return values[order]


def _as_tridiagonal(a: np.ndarray):
    """(diag, off) if ``a`` is complex symmetric tridiagonal, else None."""
    n = a.shape[0]
    if n == 1:
        return a.diagonal().copy(), np.zeros(0, dtype=complex)
    off_up = np.diagonal(a, 1)
    if not np.array_equal(off_up, np.diagonal(a, -1)):
        return None
    band = np.abs(np.triu(a, 2)).sum() + np.abs(np.tril(a, -2)).sum()
    if band != 0:
        return None
    return a.diagonal().copy(), off_up.copy()


def _tridiagonal_eigvals(diag, off, budget_factor):
    n = diag.shape[0]
    d = np.array(diag, dtype=np.complex128)
    e = np.zeros(n, dtype=np.complex128)
    e[: n - 1] = off
    status, done, _ = _kernels.tridiag_csym_eigvals(d, e, DEFLATION_TOL, budget_factor * n)
    if status != _kernels.OK:
        raise ConvergenceError(
            f"tridiagonal QL did not converge within {budget_factor * n} sweeps", partial=sort_eigenvalues(d[:done])
        )
    return d


def _dense_eigvals(a, budget_factor):
    n = a.shape[0]
    h = _kernels.hessenberg_reduce(np.array(a, dtype=np.complex128))
    status, eigs, found, _ = _kernels.hessenberg_qr_eigvals(h, DEFLATION_TOL, budget_factor * n)
    if status != _kernels.OK:
        raise ConvergenceError(
            f"Hessenberg QR did not converge within {budget_factor * n} steps",
            partial=sort_eigenvalues(eigs[n - found :]),
        )
    return eigs


def _operator_parts(op):
    """Return ('tri', diag, off, matvec, size) or ('dense', matrix, ...)."""
    if isinstance(op, TridiagonalOperator):
        return "tri", (op.diagonal, op.off_diagonal), op.size
    if isinstance(op, BlockDiracOperator):
        if op.interleaved_off is not None:
            return "dirac", op, op.size
        return "dense", op.to_dense(), op.size
    a = np.asarray(op)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {a.shape}")
    return "dense", a, a.shape[0]


def eigenvalues(
    op,
    *,
    max_size: int = DEFAULT_MAX_SIZE,
    budget_factor: int = DEFAULT_BUDGET_FACTOR,
    with_residuals: bool = False,
) -> Spectrum:
    """All eigenvalues of a tridiagonal, Dirac-block or dense complex operator."""
    kind, payload, n = _operator_parts(op)
    if n > max_size:
        raise CapacityError(f"matrix size {n} exceeds the solver cap {max_size}")
    if kind == "tri":
        diag, off = payload
        values = _tridiagonal_eigvals(diag, off, budget_factor)
        source = getattr(op, "label", "") or "tridiagonal"
    elif kind == "dirac":
        tri = payload.as_tridiagonal()
        values = _tridiagonal_eigvals(tri.diagonal, tri.off_diagonal, budget_factor)
        source = f"dirac ({payload.scheme})"
    else:
        a = np.asarray(payload, dtype=complex)
        if not np.all(np.isfinite(a)):
            raise DomainError("matrix has non-finite entries")
        parts = _as_tridiagonal(a)
        if parts is not None:
            values = _tridiagonal_eigvals(parts[0], parts[1], budget_factor)
            source = "dense (tridiagonal)"
        else:
            values = _dense_eigvals(a, budget_factor)
            source = "dense"
    values = sort_eigenvalues(values)
    residuals = None
    if with_residuals:
        residuals = np.array([eigenvector(op, lam)[2] for lam in values])
    return Spectrum(values, residuals, source)


def _matvec_and_solver(op):
    if isinstance(op, TridiagonalOperator):
        diag = op.diagonal.astype(complex)
        off = op.off_diagonal.astype(complex)

        def solve(shift, rhs):
            return _kernels.tridiag_solve(off, diag - shift, off, rhs)

        return op.matvec, solve, op.norm(), True
    if isinstance(op, BlockDiracOperator) and op.interleaved_off is not None:
        tri = op.as_tridiagonal()
        perm = op.interleave_permutation()
        inv = np.empty_like(perm)
        inv[perm] = np.arange(perm.size)
        off = tri.off_diagonal

        def solve(shift, rhs):
            x = _kernels.tridiag_solve(off, tri.diagonal - shift, off, rhs[perm])
            return x[inv]

        return op.matvec, solve, tri.norm(), True
    a = op.to_dense() if isinstance(op, BlockDiracOperator) else np.asarray(op, dtype=complex)
    ident = np.eye(a.shape[0], dtype=complex)

    def solve(shift, rhs):
        return _kernels.lu_solve_dense(a - shift * ident, rhs)

    norm = float(np.abs(a).sum(axis=1).max())
    return (lambda v: a @ v), solve, norm, bool(np.array_equal(a, a.T))


def eigenvector(op, lam: complex, *, max_iter: int = 100):
    """Inverse iteration at shift ``lam``.

    Returns ``(vector, refined_lambda, residual)`` with unit 2-norm vector
    and residual ||A v - lambda v||_2.  Complex symmetric operators use the
    bilinear Rayleigh quotient v^T A v / v^T v, others v^H A v.
    """
    matvec, solve, norm, symmetric = _matvec_and_solver(op)
    n = len(matvec(np.zeros(_size_of(op), dtype=complex)))
    shift = complex(lam)
    # perturbation keeps the shifted matrix from being exactly singular
    shift += 1e-12 * max(1.0, abs(shift))
    rng = np.random.default_rng(20260101)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    v /= np.linalg.norm(v)
    target = 1e-8 * max(norm, 1e-300)
    best = None
    for _ in range(max_iter):
        w = solve(shift, v)
        nw = np.linalg.norm(w)
        if not np.isfinite(nw) or nw == 0.0:
            raise ConvergenceError("inverse iteration produced a degenerate iterate")
        v = w / nw
        av = matvec(v)
        if symmetric:
            denom = v @ v
            refined = (v @ av) / denom if abs(denom) > 1e-8 else np.vdot(v, av)
        else:
            refined = np.vdot(v, av)
        res = float(np.linalg.norm(av - refined * v))
        if best is None or res < best[2]:
            best = (v.copy(), complex(refined), res)
        if res <= target:
            return best
    raise ConvergenceError(f"inverse iteration did not reach residual {target:.3g} (best {best[2]:.3g})")


def _size_of(op):
    if isinstance(op, (TridiagonalOperator, BlockDiracOperator)):
        return op.size
    return np.asarray(op).shape[0]


def hermitian_check(matrix) -> float:
    """max |A - A^H| entrywise."""
    a = np.asarray(matrix.to_dense() if hasattr(matrix, "to_dense") else matrix)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError("hermitian_check needs a square matrix")
    return float(np.abs(a - a.conj().T).max())
