import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptdirac import models
from ptdirac.errors import DomainError
from ptdirac.models import (
    Branch,
    CustomModel,
    OscillatorParams,
    PeriodicPseudo,
    ScarfII,
    ScarfParams,
    ShiftedOscillator,
    compose_mass,
    generator_to_model,
    partner_potential,
    pseudo_generator,
    pseudo_generator_derivative,
    superpotential,
)

SCARF = ScarfII(ScarfParams(2.5, 1.5))
OSC = ShiftedOscillator(OscillatorParams(B=2.0, alpha=0.25, shift=1.0))
PERIODIC = PeriodicPseudo()


def test_branch_and_quasi_parity_only_admit_two_values():
    assert models.as_branch("+1") is Branch.PLUS
    assert models.as_branch(-1) is Branch.MINUS
    assert int(models.as_branch(Branch.MINUS)) == -1
    for bad in (0, 2, "x", 0.5):
        with pytest.raises(DomainError):
            models.as_branch(bad)
    assert models.as_quasi_parity("-1") == -1
    with pytest.raises(DomainError):
        models.as_quasi_parity(3)


def test_branch_round_trips_through_int():
    for w in Branch:
        assert models.as_branch(int(w)) is w


@pytest.mark.parametrize(
    "kwargs",
    [dict(B=-1.0, alpha=0.25), dict(B=1.0, alpha=-0.1), dict(B=1.0, alpha=0.25, shift=0.0)],
)
def test_oscillator_params_validation(kwargs):
    with pytest.raises(DomainError):
        OscillatorParams(**kwargs)


def test_scarf_params_need_positive_sum():
    with pytest.raises(DomainError):
        ScarfParams(1.0, -1.0)


def test_compose_mass_examples():
    assert compose_mass(SCARF, 0.0) == pytest.approx(-1.0j, abs=1e-15)
    assert compose_mass(SCARF, 40.0) == pytest.approx(4.0, abs=1e-12)
    assert compose_mass(OSC, 0.0) == pytest.approx(-1.25j, abs=1e-15)


def test_superpotential_examples():
    assert superpotential(SCARF, 0.0) == pytest.approx(1.0j, abs=1e-15)
    assert superpotential(OSC, 0.0) == pytest.approx(1.25j, abs=1e-15)
    x = np.linspace(-3, 3, 11)
    assert np.all(superpotential(SCARF, x) + compose_mass(SCARF, x) == 0)


def test_partner_potential_examples():
    assert partner_potential(OSC, 1, 0.0) == pytest.approx(-2.3125, abs=1e-12)
    assert partner_potential(SCARF, 1, 0.0) == pytest.approx(-5.0, abs=1e-12)
    assert SCARF.coefficients(1) == (21.0, 9.0)
    for w in (1, -1):
        assert partner_potential(PERIODIC, w, 0.0) == pytest.approx(-7.5625, abs=1e-12)


def test_pseudo_generator_examples():
    assert pseudo_generator(0.0) == pytest.approx(2.75)
    assert pseudo_generator(math.pi / 2) == pytest.approx(-0.25)
    x = np.linspace(-math.pi, math.pi, 301)
    assert np.array_equal(pseudo_generator(x), pseudo_generator(-x))


def test_generator_to_model_examples():
    const = generator_to_model(lambda x: np.full_like(x, 1.5), lambda x: np.zeros_like(x), 1, np.linspace(-1, 1, 5))
    assert np.allclose(const, -2.25) and np.all(const.imag == 0)
    for w in (1, -1):
        assert generator_to_model(pseudo_generator, pseudo_generator_derivative, w, 0.0) == pytest.approx(-7.5625)
        x = math.pi / 4
        a = generator_to_model(pseudo_generator, pseudo_generator_derivative, w, x)
        b = PERIODIC.closed_form_potential(x, w)
        assert abs(a - b) <= 1e-12


def test_generator_derivative_matches_finite_difference():
    x = np.linspace(-3, 3, 41)
    h = 1e-5
    fd = (pseudo_generator(x + h) - pseudo_generator(x - h)) / (2 * h)
    assert np.max(np.abs(fd - pseudo_generator_derivative(x))) < 1e-7


@pytest.mark.parametrize("spec,lo,hi", [(SCARF, -15, 15), (OSC, -12, 12), (PERIODIC, -math.pi, math.pi)])
@pytest.mark.parametrize("omega", [1, -1])
def test_generic_and_closed_form_potentials_agree(spec, lo, hi, omega):
    x = np.linspace(lo, hi, 1001)
    generic = spec.generic_potential(x, omega)
    closed = spec.closed_form_potential(x, omega)
    assert np.max(np.abs(generic - closed) / (1 + np.abs(closed))) <= 1e-10


@pytest.mark.parametrize("spec", [SCARF, PERIODIC, OSC])
@pytest.mark.parametrize("omega", [1, -1])
def test_pt_symmetry_pointwise(spec, omega):
    x = np.linspace(-3, 3, 2001)
    assert np.max(np.abs(np.conj(spec.potential(-x, omega)) - spec.potential(x, omega))) <= 1e-12


def test_periodic_mirror_and_generator_forms():
    x = np.linspace(-math.pi, math.pi, 2001)
    assert np.max(np.abs(PERIODIC.potential(-x, 1) - PERIODIC.potential(x, -1))) <= 1e-12
    for w in (1, -1):
        a = PERIODIC.generator_form_potential(x, w)
        b = PERIODIC.closed_form_potential(x, w)
        assert np.max(np.abs(a - b)) <= 1e-12


def test_scarf_imaginary_part_vanishes_iff_a_equals_b():
    x = np.linspace(-4, 4, 101)
    herm = ScarfII(ScarfParams(1.7, 1.7))
    assert np.max(np.abs(herm.potential(x, 1).imag)) == 0
    assert np.max(np.abs(SCARF.potential(x, 1).imag)) > 0.1


def test_oscillator_decomposition_and_contour():
    x = np.array([-1.0, 0.5, 2.0])
    z = x - 1j
    assert np.allclose(OSC.evaluation_point(x), z)
    assert np.allclose(OSC.mass_profile(x) + OSC.scalar(x), OSC.mass(x))


def test_custom_model_derivative_and_errors():
    spec = CustomModel(mass_fn=lambda x: np.sin(x), scalar_imag=lambda x: np.cos(x))
    x = np.linspace(-2, 2, 9)
    assert np.max(np.abs(spec.mass_derivative(x) - (np.cos(x) - 1j * np.sin(x)))) < 1e-10
    bad = CustomModel(mass_fn=lambda x: 1.0 / x)
    with pytest.raises(DomainError):
        bad.mass(np.array([0.0, 1.0]))


def test_constant_mass_partners_are_equal():
    spec = models.constant_mass(1.3)
    x = np.linspace(-2, 2, 11)
    assert np.allclose(spec.potential(x, 1), 1.69)
    assert np.allclose(spec.potential(x, -1), 1.69)


def test_models_are_immutable():
    with pytest.raises(Exception):
        SCARF.p = ScarfParams(1, 1)


@settings(max_examples=60, deadline=None)
@given(
    a=st.floats(0.1, 5),
    b=st.floats(0.1, 5),
    x=st.floats(-8, 8),
    omega=st.sampled_from([1, -1]),
)
def test_superpotential_generates_partners(a, b, x, omega):
    spec = ScarfII(ScarfParams(a, b))
    w = superpotential(spec, x)
    w_prime = -spec.mass_derivative(x)
    v = spec.potential(x, omega)
    assert abs(w**2 + omega * w_prime - v) <= 1e-10 * (1 + abs(v))
