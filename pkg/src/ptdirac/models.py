"""Model catalog: composite masses, partner potentials and the periodic generator.

A Dirac particle with position-dependent mass ``m(x)`` in a Lorentz scalar
``S(x)`` sees the composite mass ``M = m + S``.  Squaring the Dirac operator
gives the two Schrödinger-like partners

    V_omega(x) = M(x)**2 - omega * M'(x),   omega = +1 / -1,

with superpotential ``W = -M``.  Every model below evaluates ``M`` and ``M'``
analytically (or by a documented finite difference for custom models) and,
for the three catalog models, also the hand-derived closed form of
``V_omega`` so the two routes can be checked against each other.

All evaluators accept scalars or numpy arrays of real ``x`` and return
complex values.  Models are immutable; validation happens at construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Callable

import numpy as np

from .errors import DomainError


class Branch(IntEnum):
    """Partner label omega; V_omega = M**2 - omega*M'."""

    PLUS = 1
    MINUS = -1


class QuasiParity(IntEnum):
    """Quasi-parity q of the complexified oscillator levels."""

    EVEN = 1
    ODD = -1


def _as_pm_one(value, enum_cls, what):
    if isinstance(value, enum_cls):
        return value
    if isinstance(value, str):
        text = value.strip()
        aliases = {"+": 1, "-": -1, "plus": 1, "minus": -1}
        if text.lower() in aliases:
            return enum_cls(aliases[text.lower()])
        try:
            value = int(text)
        except ValueError:
            raise DomainError(f"{what} must be +1 or -1, got {text!r}") from None
    try:
        if value != int(value):
            raise ValueError
        return enum_cls(int(value))
    except (ValueError, TypeError):
        raise DomainError(f"{what} must be +1 or -1, got {value!r}") from None


def as_branch(omega) -> Branch:
    """Coerce ``+1``/``-1`` (int, str or Branch) to :class:`Branch`."""
    return _as_pm_one(omega, Branch, "omega")


def as_quasi_parity(q) -> QuasiParity:
    return _as_pm_one(q, QuasiParity, "quasi-parity")


def _finite_check(values, x, what):
    values = np.asarray(values)
    bad = ~np.isfinite(values)
    if np.any(bad):
        xs = np.broadcast_to(np.asarray(x, dtype=float), values.shape)
        raise DomainError(f"{what} is not finite at x = {float(xs[bad].flat[0])!r}")
    return values


def _ret(values, x):
    """Return a Python complex for scalar input, an array otherwise."""
    if np.ndim(x) == 0:
        return complex(values)
    return values


# ---------------------------------------------------------------------------
# parameters


@dataclass(frozen=True)
class OscillatorParams:
    """Complex-shifted oscillator: M(z) = (B/2) z + A/z with A = alpha - 1/2, z = x - i*shift."""

    B: float
    alpha: float
    shift: float = 1.0

    def __post_init__(self):
        for name in ("B", "alpha", "shift"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value!r}")
        if self.B < 0:
            raise DomainError(f"B must be >= 0, got {self.B}")
        if self.alpha < 0:
            raise DomainError(f"alpha must be >= 0, got {self.alpha}")
        if self.shift <= 0:
            raise DomainError(f"shift must be > 0 (contour must avoid z = 0), got {self.shift}")

    @property
    def A(self) -> float:
        return self.alpha - 0.5


@dataclass(frozen=True)
class ScarfParams:
    """PT-symmetric Scarf II: M(x) = (A+B) tanh x - i (A-B) sech x."""

    A: float
    B: float

    def __post_init__(self):
        if not (math.isfinite(self.A) and math.isfinite(self.B)):
            raise DomainError(f"A, B must be finite, got {self.A!r}, {self.B!r}")
        if self.A + self.B <= 0:
            raise DomainError(f"A + B must be > 0 for any real bound level, got {self.A + self.B}")


# ---------------------------------------------------------------------------
# models


class Model:
    """Common interface of every model.

    Subclasses provide ``_mass`` and ``_mass_derivative`` on the (possibly
    complex) evaluation point, and optionally ``_closed_form``.
    """

    name = "model"
    contour_shift = 0.0

    def evaluation_point(self, x):
        x = np.asarray(x, dtype=float)
        if self.contour_shift:
            return x - 1j * self.contour_shift
        return x

    def mass(self, x):
        """Composite mass M = m + S at real x (at z = x - i*shift for shifted models)."""
        return _ret(_finite_check(self._mass(self.evaluation_point(x)), x, f"{self.name} mass"), x)

    def mass_derivative(self, x):
        return _ret(
            _finite_check(self._mass_derivative(self.evaluation_point(x)), x, f"{self.name} mass derivative"),
            x,
        )

    def generic_potential(self, x, omega):
        """V_omega = M**2 - omega*M' from the mass and its derivative."""
        w = int(as_branch(omega))
        z = self.evaluation_point(x)
        with np.errstate(all="ignore"):  # non-finite samples are reported just below
            values = self._mass(z) ** 2 - w * self._mass_derivative(z)
        return _ret(_finite_check(values, x, f"{self.name} potential"), x)

    def closed_form_potential(self, x, omega):
        """Hand-derived closed form of V_omega, or None when the model has none."""
        w = int(as_branch(omega))
        values = self._closed_form(self.evaluation_point(x), w)
        if values is None:
            return None
        return _ret(_finite_check(values, x, f"{self.name} potential"), x)

    def potential(self, x, omega):
        """Preferred evaluation of V_omega: closed form when available."""
        value = self.closed_form_potential(x, omega)
        if value is None:
            return self.generic_potential(x, omega)
        return value

    def _closed_form(self, z, w):
        return None

    def params(self) -> dict:
        return {}


@dataclass(frozen=True)
class ShiftedOscillator(Model):
    """Linear-plus-inverse-linear mass on the contour z = x - i*shift.

    The mass ``m(x) = B x / 4`` combines with the complexified scalar
    ``S(z) = B z / 4 + A / z - i B shift / 4`` into ``M(z) = B z / 2 + A / z``.
    """

    p: OscillatorParams
    name = "oscillator"

    @property
    def contour_shift(self):
        return self.p.shift

    def _mass(self, z):
        return 0.5 * self.p.B * z + self.p.A / z

    def _mass_derivative(self, z):
        return 0.5 * self.p.B - self.p.A / z**2

    def _closed_form(self, z, w):
        B, A = self.p.B, self.p.A
        return 0.25 * B**2 * z**2 + A * (A + w) / z**2 + B * (A - 0.5 * w)

    def mass_profile(self, x):
        return 0.25 * self.p.B * np.asarray(x, dtype=float)

    def scalar(self, x):
        z = self.evaluation_point(x)
        B, A, b = self.p.B, self.p.A, self.p.shift
        return _ret(0.25 * B * z + A / z - 0.25j * B * b, x)

    def params(self):
        return {"B": self.p.B, "alpha": self.p.alpha, "A": self.p.A, "shift": self.p.shift}


@dataclass(frozen=True)
class ScarfII(Model):
    """M(x) = (A+B) tanh x - i (A-B) sech x; partners form the PT-symmetric Scarf II family."""

    p: ScarfParams
    name = "scarf2"

    def _mass(self, x):
        A, B = self.p.A, self.p.B
        return (A + B) * np.tanh(x) - 1j * (A - B) / np.cosh(x)

    def _mass_derivative(self, x):
        A, B = self.p.A, self.p.B
        sech = 1.0 / np.cosh(x)
        return (A + B) * sech**2 + 1j * (A - B) * sech * np.tanh(x)

    def coefficients(self, omega):
        """(C1, C2) of V = -C1 sech^2 - i C2 sech tanh + (A+B)^2."""
        w = int(as_branch(omega))
        A, B = self.p.A, self.p.B
        return 2 * (A**2 + B**2) + w * (A + B), (2 * A + 2 * B + w) * (A - B)

    def _closed_form(self, x, w):
        c1, c2 = self.coefficients(w)
        sech = 1.0 / np.cosh(x)
        return -c1 * sech**2 - 1j * c2 * sech * np.tanh(x) + (self.p.A + self.p.B) ** 2

    def continuum_threshold(self):
        return (self.p.A + self.p.B) ** 2

    def params(self):
        return {"A": self.p.A, "B": self.p.B}


def pseudo_generator(x):
    """Periodic pseudo-Hermiticity generator G(x) = -4/(3 cos^2 x - 4) - 5/4.

    The denominator lies in [-4, -1], so G is smooth and real everywhere.
    """
    c2 = np.cos(x) ** 2
    return -4.0 / (3.0 * c2 - 4.0) - 1.25


def pseudo_generator_derivative(x):
    c = np.cos(x)
    return -12.0 * np.sin(2.0 * np.asarray(x)) / (3.0 * c**2 - 4.0) ** 2


def generator_to_model(generator, derivative, omega, x):
    """Partner potential induced by a real generator: V = -G**2 - i*omega*G'."""
    w = int(as_branch(omega))
    g = np.asarray(generator(x))
    gp = np.asarray(derivative(x))
    return _ret(-(g**2) - 1j * w * gp, x)


@dataclass(frozen=True)
class GeneratorModel(Model):
    """Dirac model built from a real generator G with S_r = -m and S_i = G.

    Then M = i G and the partners are V_omega = -G**2 - i*omega*G'.  The
    intertwiner ``eta = -i d/dx + G_omega`` of branch omega uses
    ``G_omega = omega * G``.
    """

    generator: Callable
    derivative: Callable
    name = "generator"

    def _mass(self, x):
        return 1j * np.asarray(self.generator(x), dtype=float)

    def _mass_derivative(self, x):
        return 1j * np.asarray(self.derivative(x), dtype=float)

    def _closed_form(self, x, w):
        return generator_to_model(self.generator, self.derivative, w, x)

    def scalar_imag(self, x):
        return self.generator(x)

    def intertwiner_generator(self, omega):
        w = int(as_branch(omega))
        g = self.generator
        return lambda x: w * np.asarray(g(x), dtype=float)


@dataclass(frozen=True)
class PeriodicPseudo(GeneratorModel):
    """Generator model with the fixed periodic G; V_omega = -6/(cos x + 2i omega sin x)^2 - 25/16."""

    generator: Callable = field(default=pseudo_generator, repr=False)
    derivative: Callable = field(default=pseudo_generator_derivative, repr=False)
    name = "periodic"

    def _closed_form(self, x, w):
        return -6.0 / (np.cos(x) + 2j * w * np.sin(x)) ** 2 - 25.0 / 16.0

    def generator_form_potential(self, x, omega):
        """The same potential via -G**2 - i*omega*G' (equal to the closed form)."""
        return generator_to_model(self.generator, self.derivative, omega, x)


def _central_derivative(f, x):
    """Fourth-order central difference with step 1e-4*(1+|x|)."""
    x = np.asarray(x, dtype=float)
    h = 1e-4 * (1.0 + np.abs(x))
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h)


@dataclass(frozen=True)
class CustomModel(Model):
    """User-supplied mass and complex scalar: M = m + S_r + i S_i.

    Evaluators take a real numpy array.  ``M'`` uses fourth-order central
    differences; ``contour_shift`` is accepted for symmetry with the
    oscillator but custom evaluators always receive the real x.
    """

    mass_fn: Callable
    scalar_real: Callable = field(default=lambda x: np.zeros_like(np.asarray(x, dtype=float)))
    scalar_imag: Callable = field(default=lambda x: np.zeros_like(np.asarray(x, dtype=float)))
    label: str = "custom"
    name = "custom"

    def evaluation_point(self, x):
        return np.asarray(x, dtype=float)

    def _composite(self, x):
        return (
            np.asarray(self.mass_fn(x), dtype=complex)
            + np.asarray(self.scalar_real(x), dtype=complex)
            + 1j * np.asarray(self.scalar_imag(x), dtype=complex)
        )

    def _mass(self, x):
        with np.errstate(all="ignore"):
            return self._composite(x)

    def _mass_derivative(self, x):
        with np.errstate(all="ignore"):
            return _central_derivative(self._composite, x)

    def params(self):
        return {"label": self.label}


def constant_mass(m0: float) -> CustomModel:
    """Control model M = m0: both partners equal m0**2, no zero mode."""
    return CustomModel(mass_fn=lambda x: np.full(np.shape(x), m0, dtype=float), label=f"constant({m0})")


# ---------------------------------------------------------------------------
# functional interface


def compose_mass(spec: Model, x):
    """M(x) = m(x) + S(x) (evaluated on the shifted contour where relevant)."""
    return spec.mass(x)


def superpotential(spec: Model, x):
    """W = -M; the partners are W**2 + omega*W'."""
    return -spec.mass(x)


def partner_potential(spec: Model, omega, x):
    return spec.potential(x, omega)
