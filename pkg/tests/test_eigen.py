import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptdirac import oracles
from ptdirac.discretize import TridiagonalOperator, assemble_intertwiner, assemble_schrodinger, make_grid
from ptdirac.eigen import eigenvalues, eigenvector, hermitian_check, sort_eigenvalues
from ptdirac.errors import CapacityError, ConvergenceError, DomainError
from ptdirac.models import PeriodicPseudo, ScarfII, ScarfParams, pseudo_generator


def test_diagonal_matrix():
    vals = eigenvalues(np.diag([1, 2 + 1j, -3])).eigenvalues
    assert np.allclose(vals, [-3, 1, 2 + 1j])


def test_free_particle_tridiagonal():
    a = np.diag([2.0] * 3) - np.eye(3, k=1) - np.eye(3, k=-1)
    assert np.allclose(eigenvalues(a).eigenvalues, [2 - math.sqrt(2), 2, 2 + math.sqrt(2)])


def test_dense_nonsymmetric_path():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((30, 30)) + 1j * rng.standard_normal((30, 30))
    spec = eigenvalues(a)
    assert spec.source == "dense"
    ref = oracles.charpoly_roots(a[:8, :8])
    ours = eigenvalues(a[:8, :8]).eigenvalues
    assert max(np.min(np.abs(ours - r)) for r in ref) <= 1e-8
    assert abs(spec.eigenvalues.sum() - np.trace(a)) <= 1e-10 * np.abs(a).sum(axis=1).max()


def test_charpoly_oracle_six_by_six():
    rng = np.random.default_rng(11)
    b = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    b = b + b.T
    ours = eigenvalues(b).eigenvalues
    roots = oracles.charpoly_roots(b)
    for r in roots:
        assert np.min(np.abs(ours - r)) <= 1e-8


def test_sturm_oracle_real_symmetric():
    rng = np.random.default_rng(5)
    d = rng.uniform(-1, 1, 1000)
    e = rng.uniform(-1, 1, 999)
    ours = eigenvalues(TridiagonalOperator(d + 0j, e + 0j)).eigenvalues
    assert np.max(np.abs(ours.imag)) <= 1e-10
    assert np.max(np.abs(ours.real - oracles.sturm_bisection(d, e))) <= 1e-10


def test_trace_identity_on_physical_operator():
    op = assemble_schrodinger(PeriodicPseudo(), 1, make_grid(-math.pi, math.pi, 1000))
    vals = eigenvalues(op).eigenvalues
    assert abs(vals.sum() - op.diagonal.sum()) <= 1e-8 * op.norm()


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 60))
def test_similarity_invariance_under_permutation(seed, n):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    p = rng.permutation(n)
    b = a[np.ix_(p, p)]
    va = eigenvalues(a).eigenvalues
    vb = eigenvalues(b).eigenvalues
    for v in va:
        assert np.min(np.abs(vb - v)) <= 1e-9 * max(1, np.abs(a).sum(axis=1).max())


def test_determinism():
    op = assemble_schrodinger(ScarfII(ScarfParams(2.5, 1.5)), 1, make_grid(-15, 15, 800))
    a = eigenvalues(op).eigenvalues
    b = eigenvalues(op).eigenvalues
    assert a.tobytes() == b.tobytes()


def test_sort_order_and_stability():
    vals = sort_eigenvalues([1 + 1j, 1 - 1j, -2, 1 + 1j])
    assert list(vals) == [-2, 1 - 1j, 1 + 1j, 1 + 1j]


def test_capacity_and_domain_errors():
    with pytest.raises(CapacityError):
        eigenvalues(np.eye(10), max_size=5)
    with pytest.raises(DomainError):
        eigenvalues(np.ones((2, 3)))
    with pytest.raises(DomainError):
        eigenvalues(np.array([[1.0, np.nan], [0, 1]]))


def test_convergence_error_carries_partial_results():
    rng = np.random.default_rng(0)
    a = rng.standard_normal((40, 40)) + 1j * rng.standard_normal((40, 40))
    with pytest.raises(ConvergenceError) as info:
        eigenvalues(a, budget_factor=0)
    assert info.value.partial is not None


def test_eigenvector_examples():
    v, lam, res = eigenvector(np.diag([1.0, 2.0, 3.0]), 2.0)
    assert abs(abs(v[1]) - 1) < 1e-10 and lam == pytest.approx(2)
    a = TridiagonalOperator(np.full(3, 2.0 + 0j), np.full(2, -1.0 + 0j))
    v, lam, res = eigenvector(a, 2.0)
    target = np.array([1, 0, -1]) / math.sqrt(2)
    assert abs(abs(np.vdot(target, v)) - 1) < 1e-10
    assert res <= 1e-8 * a.norm()


def test_eigenvector_scarf_ground_state_decays():
    op = assemble_schrodinger(ScarfII(ScarfParams(2.5, 1.5)), -1, make_grid(-15, 15, 3000))
    v, lam, res = eigenvector(op, 7.0)
    assert lam.real == pytest.approx(7, abs=5e-3)
    x = op.grid.points
    amp = np.abs(v)
    floor = 1e-10 * amp.max()  # below this the tail is rounding noise
    right = amp[(x > 5) & (amp > floor)]
    left = amp[(x < -5) & (amp > floor)][::-1]
    assert right.size > 100 and left.size > 100
    assert np.all(np.diff(right) <= 0) and np.all(np.diff(left) <= 0)


def test_hermitian_check_examples():
    rng = np.random.default_rng(2)
    s = rng.standard_normal((5, 5))
    assert hermitian_check(s + s.T) == 0
    eta = assemble_intertwiner(pseudo_generator, make_grid(-math.pi, math.pi, 30))
    assert hermitian_check(eta) == 0
    with pytest.raises(DomainError):
        hermitian_check(np.ones((2, 3)))


def test_residuals_attached_on_request():
    op = assemble_schrodinger(ScarfII(ScarfParams(2.5, 1.5)), 1, make_grid(-10, 10, 60))
    spec = eigenvalues(op, with_residuals=True)
    assert spec.residuals.shape == spec.eigenvalues.shape
    assert np.all(spec.residuals <= 1e-8 * op.norm())
