"""Closed-form levels, reality conditions and level crossings of the catalog models."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError
from .models import Branch, OscillatorParams, QuasiParity, ScarfParams, as_branch, as_quasi_parity

#: |x - round(x)| below this counts as an integer for crossing conditions
INTEGER_TOL = 1e-9

DEFAULT_N_MAX = 50


@dataclass(frozen=True)
class AnalyticLevel:
    """One analytic level: Schrödinger eigenvalue ``lam`` and signed Dirac energy."""

    n: int
    omega: Branch
    lam: float
    energy: complex
    q: Optional[QuasiParity] = None
    real: bool = True

    def as_dict(self):
        return {
            "n": self.n,
            "omega": int(self.omega),
            "q": None if self.q is None else int(self.q),
            "lambda": self.lam,
            "energy": [self.energy.real, self.energy.imag],
            "real": self.real,
        }


@dataclass(frozen=True)
class CrossingPair:
    """Two levels of one energy family that coincide.

    ``first``/``second`` are ``(n, label)`` where label is the quasi-parity for
    the oscillator and the branch for Scarf II.  ``observable`` marks whether
    each member lies in the normalizable bound-state range.
    """

    family: str
    first: tuple
    second: tuple
    level: complex
    observable: tuple = (True, True)

    def as_dict(self):
        return {
            "family": self.family,
            "first": list(self.first),
            "second": list(self.second),
            "level": [self.level.real, self.level.imag],
            "observable": list(self.observable),
        }


def signed_root(lam: float, omega) -> complex:
    """omega * sqrt(lam), purely imaginary for negative lam."""
    w = int(as_branch(omega))
    return w * cmath.sqrt(lam) if lam < 0 else complex(w * math.sqrt(lam))


def _params(p, cls):
    p = getattr(p, "p", p)
    if not isinstance(p, cls):
        raise DomainError(f"expected {cls.__name__}, got {type(p).__name__}")
    return p


def _check_n(n, minimum=0):
    if isinstance(n, bool) or int(n) != n or n < minimum:
        raise DomainError(f"quantum number must be an integer >= {minimum}, got {n!r}")
    return int(n)


def _integer_value(x):
    """Nearest integer if x is integral within INTEGER_TOL, else None."""
    r = round(x)
    return int(r) if abs(x - r) <= INTEGER_TOL else None


# ---------------------------------------------------------------------------
# complex-shifted oscillator


def oscillator_lambda(p: OscillatorParams, omega, q, n) -> float:
    p = _params(p, OscillatorParams)
    w = int(as_branch(omega))
    qq = int(as_quasi_parity(q))
    if qq == 1:
        return 2.0 * p.B * (n + p.alpha)
    return 2.0 * p.B * n if w == 1 else 2.0 * p.B * (n + 1)


def oscillator_levels(p: OscillatorParams, omega, q, n: int) -> AnalyticLevel:
    """Level n of quasi-parity q on partner omega; energy sign follows omega."""
    p = _params(p, OscillatorParams)
    n = _check_n(n)
    lam = oscillator_lambda(p, omega, q, n)
    return AnalyticLevel(
        n=n,
        omega=as_branch(omega),
        lam=lam,
        energy=signed_root(lam, omega),
        q=as_quasi_parity(q),
        real=lam >= 0,
    )


def oscillator_spectrum(p: OscillatorParams, omega, n_max: int) -> list:
    """Both quasi-parities for n = 0..n_max, sorted by lambda."""
    levels = [oscillator_levels(p, omega, q, n) for n in range(n_max + 1) for q in (1, -1)]
    return sorted(levels, key=lambda lv: (lv.lam, -int(lv.q), lv.n))


def oscillator_crossings(p: OscillatorParams, n_max: int = DEFAULT_N_MAX) -> list:
    """Quasi-parity crossings: E+(n1,q=+1) = E+(n2,q=-1) iff n2 - n1 = alpha,
    and E-(n3,q=+1) = E-(n4,q=-1) iff n4 - n3 = alpha - 1.

    The offset may be negative (alpha = 0 gives n4 = n3 - 1 on E-); pairs are
    kept whenever both indices lie in 0..n_max.  With B = 0 every level sits
    at zero and all pairs are reported.
    """
    p = _params(p, OscillatorParams)
    n_max = _check_n(n_max)
    pairs = []
    for w, family, offset in ((1, "E+", p.alpha), (-1, "E-", p.alpha - 1.0)):
        if p.B == 0:
            combos = [(a, b) for a in range(n_max + 1) for b in range(n_max + 1)]
        else:
            k = _integer_value(offset)
            if k is None:
                continue
            combos = [(a, a + k) for a in range(n_max + 1) if 0 <= a + k <= n_max]
        for a, b in combos:
            lam = oscillator_lambda(p, w, 1, a)
            pairs.append(
                CrossingPair(
                    family=family,
                    first=(a, int(QuasiParity.EVEN)),
                    second=(b, int(QuasiParity.ODD)),
                    level=signed_root(lam, w),
                )
            )
    return pairs


# ---------------------------------------------------------------------------
# Scarf II


def scarf2_lambda(p: ScarfParams, omega, n) -> float:
    p = _params(p, ScarfParams)
    s = p.A + p.B
    k = n + 1 if int(as_branch(omega)) == 1 else n
    # factored form of 2 s k - k**2 keeps the sign exact at the reality edge
    return k * (2.0 * s - k)


def scarf2_is_real(p: ScarfParams, omega, n) -> bool:
    """Reality condition: 2(A+B) - 1 >= n for omega=+1, 2(A+B) >= n for omega=-1."""
    p = _params(p, ScarfParams)
    s = p.A + p.B
    if int(as_branch(omega)) == 1:
        return 2.0 * s - 1.0 >= n
    return 2.0 * s >= n


def scarf2_levels(p: ScarfParams, omega, n: int) -> AnalyticLevel:
    p = _params(p, ScarfParams)
    n = _check_n(n)
    lam = scarf2_lambda(p, omega, n)
    return AnalyticLevel(
        n=n, omega=as_branch(omega), lam=lam, energy=signed_root(lam, omega), real=scarf2_is_real(p, omega, n)
    )


def scarf2_bound_count(p: ScarfParams, omega) -> int:
    """Number of normalizable levels: indices with n + 1 < A + B (omega=+1) or n < A + B (omega=-1)."""
    p = _params(p, ScarfParams)
    s = p.A + p.B
    limit = s - 1.0 if int(as_branch(omega)) == 1 else s
    return max(0, math.ceil(limit))


def scarf2_crossings(p: ScarfParams, n_max: int = DEFAULT_N_MAX) -> list:
    """Index pairs n1 <= n2 with n1 + n2 = 2(A+B-1) (omega=+1) or 2(A+B) (omega=-1)."""
    p = _params(p, ScarfParams)
    n_max = _check_n(n_max)
    s = p.A + p.B
    pairs = []
    for w, family, total in ((1, "E+", 2.0 * (s - 1.0)), (-1, "E-", 2.0 * s)):
        k = _integer_value(total)
        if k is None or k < 0:
            continue
        bound = scarf2_bound_count(p, w)
        for a in range(0, k // 2 + 1):
            b = k - a
            if b > n_max:
                continue
            lam = scarf2_lambda(p, w, a)
            pairs.append(
                CrossingPair(
                    family=family,
                    first=(a, w),
                    second=(b, w),
                    level=signed_root(lam, w),
                    observable=(a < bound, b < bound),
                )
            )
    return pairs


# ---------------------------------------------------------------------------
# periodic model


def periodic_lambda(n) -> float:
    return n * n / 4.0 - 25.0 / 16.0


def periodic_levels(n: int) -> tuple:
    """(E+, E-) levels for index n >= 1; n = 1, 2 give negative lambda (not real)."""
    n = _check_n(n, minimum=1)
    lam = periodic_lambda(n)
    real = lam >= 0
    return (
        AnalyticLevel(n=n, omega=Branch.PLUS, lam=lam, energy=signed_root(lam, 1), real=real),
        AnalyticLevel(n=n, omega=Branch.MINUS, lam=lam, energy=signed_root(lam, -1), real=real),
    )


def periodic_spectrum(n_min: int = 3, n_max: int = 8) -> list:
    return [periodic_levels(n)[0] for n in range(n_min, n_max + 1)]


def scarf2_spectrum(p: ScarfParams, omega, n_max: Optional[int] = None) -> list:
    """Normalizable levels by default, else n = 0..n_max."""
    p = _params(p, ScarfParams)
    count = scarf2_bound_count(p, omega) if n_max is None else n_max + 1
    return [scarf2_levels(p, omega, n) for n in range(count)]
