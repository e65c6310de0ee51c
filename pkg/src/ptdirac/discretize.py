"""Finite-difference operators on uniform Dirichlet grids.

Schrödinger-like operators use the 3-point Laplacian and are stored as
complex symmetric tridiagonals.  The Dirac operator is discretized on a
staggered grid by default: the component carrying the Dirichlet condition
lives on the N interior nodes, its partner on the N+1 half-nodes, and both
first-order blocks use the compact box stencil.  That keeps the 2x2 block
operator complex symmetric and, in interleaved ordering, tridiagonal with
zero diagonal (so the spectrum is exactly E <-> -E paired).  The collocated
central-difference variant is kept as ``scheme="central"`` for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError
from .models import Model, as_branch

DEFAULT_HALF_WIDTH = {"oscillator": 12.0, "scarf2": 15.0}


@dataclass(frozen=True)
class Grid:
    """Uniform grid on [x_min, x_max] with N interior unknowns (Dirichlet ends)."""

    x_min: float
    x_max: float
    n_interior: int
    shift: float = 0.0

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.n_interior + 1)

    @property
    def points(self) -> np.ndarray:
        return self.x_min + self.spacing * np.arange(1, self.n_interior + 1)

    @property
    def half_points(self) -> np.ndarray:
        """The N+1 cell midpoints x_{j+1/2}, j = 0..N."""
        return self.x_min + self.spacing * (np.arange(self.n_interior + 1) + 0.5)

    @property
    def contour(self) -> np.ndarray:
        return self.points - 1j * self.shift

    def is_symmetric(self, tol: float = 1e-12) -> bool:
        return abs(self.x_min + self.x_max) <= tol * max(1.0, abs(self.x_min), abs(self.x_max))

    def as_dict(self):
        return {"x_min": self.x_min, "x_max": self.x_max, "n": self.n_interior, "h": self.spacing, "shift": self.shift}


def make_grid(x_min: float, x_max: float, n_interior: int, shift: float = 0.0) -> Grid:
    if not (math.isfinite(x_min) and math.isfinite(x_max)) or x_max <= x_min:
        raise DomainError(f"need finite x_min < x_max, got ({x_min}, {x_max})")
    if int(n_interior) != n_interior or n_interior < 3:
        raise DomainError(f"need at least 3 interior points, got {n_interior}")
    if not math.isfinite(shift) or shift < 0:
        raise DomainError(f"shift must be >= 0, got {shift}")
    return Grid(float(x_min), float(x_max), int(n_interior), float(shift))


def grid_for(spec: Model, n_interior: int, half_width: float | None = None) -> Grid:
    """Default grid for a model: (-L, L) for line models, (-pi, pi) for the periodic one."""
    if spec.name == "periodic":
        return make_grid(-math.pi, math.pi, n_interior)
    L = DEFAULT_HALF_WIDTH.get(spec.name, 12.0) if half_width is None else half_width
    return make_grid(-L, L, n_interior, spec.contour_shift)


def _check_contour(spec: Model, grid: Grid):
    if abs(grid.shift - spec.contour_shift) > 1e-15 * max(1.0, abs(spec.contour_shift)):
        raise DomainError(f"grid shift {grid.shift} does not match the model's contour shift {spec.contour_shift}")


def _sample(fn, xs, what):
    values = np.asarray(fn(xs), dtype=complex)
    if values.shape != xs.shape:
        values = np.broadcast_to(values, xs.shape).copy()
    bad = ~np.isfinite(values)
    if np.any(bad):
        raise DomainError(f"{what} is not finite at x_j = {xs[np.argmax(bad)]!r}")
    return values


@dataclass(frozen=True)
class TridiagonalOperator:
    """Complex symmetric tridiagonal matrix (sub-diagonal == super-diagonal)."""

    diagonal: np.ndarray
    off_diagonal: np.ndarray
    grid: Grid | None = None
    label: str = ""

    def __post_init__(self):
        if self.off_diagonal.shape[0] != self.diagonal.shape[0] - 1:
            raise DomainError("off-diagonal must have length N-1")

    @property
    def size(self) -> int:
        return self.diagonal.shape[0]

    def to_dense(self) -> np.ndarray:
        n = self.size
        a = np.zeros((n, n), dtype=complex)
        idx = np.arange(n)
        a[idx, idx] = self.diagonal
        a[idx[:-1], idx[1:]] = self.off_diagonal
        a[idx[1:], idx[:-1]] = self.off_diagonal
        return a

    def matvec(self, v):
        v = np.asarray(v)
        out = self.diagonal * v
        out[:-1] += self.off_diagonal * v[1:]
        out[1:] += self.off_diagonal * v[:-1]
        return out

    def norm(self) -> float:
        """Infinity norm (max absolute row sum)."""
        row = np.abs(self.diagonal).astype(float)
        row[:-1] += np.abs(self.off_diagonal)
        row[1:] += np.abs(self.off_diagonal)
        return float(row.max())


def assemble_schrodinger(spec: Model, omega, grid: Grid) -> TridiagonalOperator:
    """-d^2/dx^2 + V_omega on the grid; V sampled on z_j = x_j - i*shift."""
    w = as_branch(omega)
    _check_contour(spec, grid)
    xs = grid.points
    h = grid.spacing
    v = _sample(lambda x: spec.potential(x, w), xs, f"{spec.name} potential (omega={int(w):+d})")
    diag = 2.0 / h**2 + v
    off = np.full(grid.n_interior - 1, -1.0 / h**2, dtype=complex)
    return TridiagonalOperator(diag, off, grid, label=f"{spec.name} H(omega={int(w):+d})")


def laplacian(grid: Grid) -> TridiagonalOperator:
    h = grid.spacing
    n = grid.n_interior
    return TridiagonalOperator(
        np.full(n, 2.0 / h**2, dtype=complex), np.full(n - 1, -1.0 / h**2, dtype=complex), grid, "free"
    )


def first_derivative(n: int, h: float) -> np.ndarray:
    """Central-difference matrix D1 (antisymmetric, entries +-1/(2h))."""
    d1 = np.zeros((n, n))
    idx = np.arange(n - 1)
    d1[idx, idx + 1] = 0.5 / h
    d1[idx + 1, idx] = -0.5 / h
    return d1


@dataclass(frozen=True)
class BlockDiracOperator:
    """[[0, -d + M], [d + M, 0]] acting on the block vector (psi_plus, psi_minus).

    The top-right block maps psi_minus into the psi_plus rows, the
    bottom-left block maps psi_plus into the psi_minus rows.  ``mass`` holds
    M on the half-nodes (staggered) or on the nodes (central).  In the
    staggered scheme ``pinned`` is the component living on the N interior
    nodes; its partner lives on the N+1 half-nodes.
    """

    grid: Grid
    mass: np.ndarray = field(repr=False)
    scheme: str = "staggered"
    pinned: int = 1

    @property
    def plus_size(self) -> int:
        n = self.grid.n_interior
        if self.scheme == "central":
            return n
        return n if self.pinned == 1 else n + 1

    @property
    def minus_size(self) -> int:
        n = self.grid.n_interior
        if self.scheme == "central":
            return n
        return n + 1 if self.pinned == 1 else n

    @property
    def size(self) -> int:
        return self.plus_size + self.minus_size

    # staggered stencil: K = (s d/dx + M) from nodes to half-nodes, s = pinned
    def _node_to_half(self, v):
        h = self.grid.spacing
        s = self.pinned
        padded = np.concatenate([[0.0], np.asarray(v), [0.0]])
        return s * (padded[1:] - padded[:-1]) / h + 0.5 * self.mass * (padded[1:] + padded[:-1])

    def _half_to_node(self, u):
        """K^T: (-s d/dx + M) from half-nodes back to nodes."""
        h = self.grid.spacing
        s = self.pinned
        mu = self.mass * np.asarray(u)
        u = np.asarray(u)
        return -s * (u[1:] - u[:-1]) / h + 0.5 * (mu[1:] + mu[:-1])

    def _central(self, v, sign):
        h = self.grid.spacing
        padded = np.concatenate([[0.0], np.asarray(v), [0.0]])
        return sign * (padded[2:] - padded[:-2]) / (2 * h) + self.mass * np.asarray(v)

    def apply_top_right(self, psi_minus):
        """(-d + M) psi_minus, landing on the psi_plus points."""
        if self.scheme == "central":
            return self._central(psi_minus, -1)
        return self._half_to_node(psi_minus) if self.pinned == 1 else self._node_to_half(psi_minus)

    def apply_bottom_left(self, psi_plus):
        """(d + M) psi_plus, landing on the psi_minus points."""
        if self.scheme == "central":
            return self._central(psi_plus, 1)
        return self._node_to_half(psi_plus) if self.pinned == 1 else self._half_to_node(psi_plus)

    def apply_pinned_partner(self, psi):
        """Map the pinned (node) component to the partner's points: (pinned*d + M) psi."""
        if self.scheme == "central":
            return self._central(psi, self.pinned or 1)
        return self._node_to_half(psi)

    def matvec(self, v):
        v = np.asarray(v)
        p = self.plus_size
        return np.concatenate([self.apply_top_right(v[p:]), self.apply_bottom_left(v[:p])])

    def blocks(self):
        """Dense (top_right, bottom_left); for inspection and small grids."""
        p, m = self.plus_size, self.minus_size
        top = np.column_stack([self.apply_top_right(e) for e in np.eye(m, dtype=complex)])
        bottom = np.column_stack([self.apply_bottom_left(e) for e in np.eye(p, dtype=complex)])
        return top, bottom

    def to_dense(self) -> np.ndarray:
        p, m = self.plus_size, self.minus_size
        top, bottom = self.blocks()
        a = np.zeros((p + m, p + m), dtype=complex)
        a[:p, p:] = top
        a[p:, :p] = bottom
        return a

    @property
    def interleaved_off(self):
        if self.scheme != "staggered":
            return None
        n = self.grid.n_interior
        h = self.grid.spacing
        s = self.pinned
        off = np.empty(2 * n, dtype=complex)
        off[0::2] = s / h + 0.5 * self.mass[:n]
        off[1::2] = -s / h + 0.5 * self.mass[1:]
        return off

    def interleave_permutation(self) -> np.ndarray:
        """Block-order index of each interleaved position (half, node, half, ..., half)."""
        if self.scheme != "staggered":
            raise DomainError("interleaving is only defined for the staggered scheme")
        n = self.grid.n_interior
        node_offset, half_offset = (0, n) if self.pinned == 1 else (n + 1, 0)
        perm = np.empty(2 * n + 1, dtype=int)
        perm[0::2] = half_offset + np.arange(n + 1)
        perm[1::2] = node_offset + np.arange(n)
        return perm

    def as_tridiagonal(self) -> TridiagonalOperator:
        """Same operator in interleaved order: zero-diagonal complex symmetric tridiagonal."""
        off = self.interleaved_off
        if off is None:
            raise DomainError("the central-difference Dirac operator is not tridiagonal")
        return TridiagonalOperator(np.zeros(self.size, dtype=complex), off, self.grid, label="dirac (interleaved)")

    def pinned_square(self) -> TridiagonalOperator:
        """K^T K on the pinned component: the exact pinned block of D^2 (staggered only).

        It differs from the 3-point Schrödinger matrix by O(h^2) in the
        interior, so its eigenvectors reconstruct Dirac spinors exactly.
        """
        if self.scheme != "staggered":
            raise DomainError("the pinned square is only defined for the staggered scheme")
        h = self.grid.spacing
        s = self.pinned
        a = s / h + 0.5 * self.mass  # K[k, k]
        b = -s / h + 0.5 * self.mass  # K[k, k-1]
        diag = a[:-1] ** 2 + b[1:] ** 2
        off = b[1:-1] * a[1:-1]
        return TridiagonalOperator(diag, off, self.grid, label="dirac pinned square")

    def norm(self) -> float:
        if self.scheme == "staggered":
            return self.as_tridiagonal().norm()
        return float(np.abs(self.to_dense()).sum(axis=1).max())


def assemble_dirac(spec: Model, grid: Grid, scheme: str = "staggered", pinned=1) -> BlockDiracOperator:
    """Discretize [[0, -d + M], [d + M, 0]].

    ``pinned`` (+1/-1) selects which spinor component carries the Dirichlet
    condition in the staggered scheme; it is ignored for ``"central"``.
    """
    _check_contour(spec, grid)
    if scheme == "central":
        mass = _sample(spec.mass, grid.points, f"{spec.name} mass")
        return BlockDiracOperator(grid, mass, "central", 0)
    if scheme != "staggered":
        raise DomainError(f"unknown Dirac scheme {scheme!r}")
    mass = _sample(spec.mass, grid.half_points, f"{spec.name} mass")
    return BlockDiracOperator(grid, mass, "staggered", int(as_branch(pinned)))


def assemble_intertwiner(generator: Callable, grid: Grid) -> np.ndarray:
    """eta = -i D1 + diag(G); Hermitian for real G."""
    g = np.asarray(generator(grid.points), dtype=float)
    if g.shape != grid.points.shape or not np.all(np.isfinite(g)):
        raise DomainError("generator must be finite and real on the grid")
    eta = -1j * first_derivative(grid.n_interior, grid.spacing)
    eta[np.diag_indices(grid.n_interior)] += g
    return eta


def dump_operator(op, path) -> None:
    """Write a matrix in Matrix Market coordinate format (row col real imag)."""
    from scipy.io import mmwrite
    from scipy.sparse import coo_matrix

    dense = op.to_dense() if hasattr(op, "to_dense") else np.asarray(op)
    mmwrite(str(path), coo_matrix(dense.astype(complex)), field="complex")


def load_operator(path) -> np.ndarray:
    from scipy.io import mmread

    return np.asarray(mmread(str(path)).toarray())
