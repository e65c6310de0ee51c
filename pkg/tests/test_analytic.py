import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptdirac import analytic
from ptdirac.errors import DomainError
from ptdirac.models import OscillatorParams, ScarfParams
from ptdirac.suite import brute_oscillator_crossings, brute_scarf_crossings

OSC = OscillatorParams(B=2.0, alpha=0.25)
SCARF = ScarfParams(2.5, 1.5)


def test_oscillator_level_examples():
    lv = analytic.oscillator_levels(OSC, 1, 1, 1)
    assert lv.lam == pytest.approx(5.0) and lv.energy == pytest.approx(math.sqrt(5))
    lv = analytic.oscillator_levels(OSC, 1, -1, 0)
    assert lv.lam == 0 and lv.energy == 0
    lv = analytic.oscillator_levels(OSC, -1, -1, 0)
    assert lv.lam == pytest.approx(4.0) and lv.energy == pytest.approx(-2.0)


def test_level_energy_invariants():
    for n in range(10):
        for lv in (analytic.scarf2_levels(SCARF, 1, n), analytic.scarf2_levels(SCARF, -1, n)):
            if lv.lam >= 0:
                assert abs(lv.energy**2 - lv.lam) <= 1e-12 * max(1, lv.lam)
            else:
                assert lv.energy.real == 0 and not lv.real


def test_oscillator_crossing_examples():
    p = OscillatorParams(B=1.0, alpha=2.0)
    plus = [(c.first[0], c.second[0]) for c in analytic.oscillator_crossings(p, 5) if c.family == "E+"]
    assert plus == [(0, 2), (1, 3), (2, 4), (3, 5)]
    assert analytic.oscillator_crossings(OSC, 50) == []
    p = OscillatorParams(B=1.0, alpha=1.0)
    minus = [(c.first[0], c.second[0]) for c in analytic.oscillator_crossings(p, 3) if c.family == "E-"]
    assert minus == [(0, 0), (1, 1), (2, 2), (3, 3)]


def test_oscillator_crossings_with_alpha_zero_have_negative_offset():
    p = OscillatorParams(B=1.0, alpha=0.0)
    minus = [(c.first[0], c.second[0]) for c in analytic.oscillator_crossings(p, 3) if c.family == "E-"]
    assert minus == [(1, 0), (2, 1), (3, 2)]


def test_crossing_levels_agree():
    for c in analytic.oscillator_crossings(OscillatorParams(B=1.5, alpha=3.0), 20):
        w = 1 if c.family == "E+" else -1
        a = analytic.oscillator_levels(OscillatorParams(B=1.5, alpha=3.0), w, 1, c.first[0]).energy
        b = analytic.oscillator_levels(OscillatorParams(B=1.5, alpha=3.0), w, -1, c.second[0]).energy
        assert abs(a - b) <= 1e-12 * max(1, abs(a))


def test_scarf_level_examples():
    lv = analytic.scarf2_levels(SCARF, 1, 0)
    assert lv.lam == 7 and lv.energy == pytest.approx(2.645751, abs=1e-6)
    lv = analytic.scarf2_levels(SCARF, -1, 0)
    assert lv.lam == 0 and lv.energy == 0
    lv = analytic.scarf2_levels(SCARF, 1, 8)
    assert lv.lam == -9 and not lv.real


def test_scarf_crossing_examples():
    pairs = analytic.scarf2_crossings(SCARF, 6)
    assert [(c.first[0], c.second[0]) for c in pairs if c.family == "E+"] == [(0, 6), (1, 5), (2, 4), (3, 3)]
    pairs = analytic.scarf2_crossings(SCARF, 8)
    assert [(c.first[0], c.second[0]) for c in pairs if c.family == "E-"] == [
        (0, 8),
        (1, 7),
        (2, 6),
        (3, 5),
        (4, 4),
    ]
    assert [c for c in analytic.scarf2_crossings(ScarfParams(0.3, 0.3), 10) if c.family == "E+"] == []


def test_scarf_crossings_mark_observability():
    pairs = {(c.first[0], c.second[0]): c.observable for c in analytic.scarf2_crossings(SCARF, 8) if c.family == "E+"}
    assert pairs[(1, 5)] == (True, False)
    assert pairs[(3, 3)] == (False, False)


def test_periodic_level_examples():
    e3 = analytic.periodic_levels(3)
    assert e3[0].lam == 0.6875 and e3[0].energy == pytest.approx(0.829156, abs=1e-6)
    assert e3[1].energy == pytest.approx(-0.829156, abs=1e-6)
    assert analytic.periodic_levels(5)[0].energy == pytest.approx(2.165064, abs=1e-6)
    e2 = analytic.periodic_levels(2)
    assert e2[0].lam == -9 / 16 and not e2[0].real
    for bad in (0, -1, 1.5):
        with pytest.raises(DomainError):
            analytic.periodic_levels(bad)


def test_oscillator_susy_multisets():
    p = OscillatorParams(B=1.5, alpha=0.7)
    n = 100
    plus = sorted([analytic.oscillator_lambda(p, 1, q, k) for k in range(n + 1) for q in (1, -1)])
    minus = sorted([analytic.oscillator_lambda(p, -1, q, k) for k in range(n + 1) for q in (1, -1)] + [0.0])
    # the ladders agree up to the truncation at n: compare below the shorter top
    top = 2 * p.B * n
    assert [v for v in plus if v <= top] == [v for v in minus if v <= top]


def test_scarf_susy_multisets():
    p = ScarfParams(3.1, 0.4)
    plus = {analytic.scarf2_lambda(p, 1, n) for n in range(100)} | {0.0}
    minus = {analytic.scarf2_lambda(p, -1, n) for n in range(101)}
    assert plus == minus


@settings(max_examples=100, deadline=None)
@given(s=st.floats(0.01, 10), d=st.floats(-5, 5), n=st.integers(0, 100), omega=st.sampled_from([1, -1]))
def test_reality_flag_matches_sign(s, d, n, omega):
    p = ScarfParams((s + d) / 2, (s - d) / 2)
    lv = analytic.scarf2_levels(p, omega, n)
    assert (lv.lam >= 0) == lv.real


@settings(max_examples=40, deadline=None)
@given(alpha=st.one_of(st.integers(0, 8).map(float), st.floats(0, 8)), b=st.floats(0.1, 3))
def test_oscillator_crossings_match_brute_force(alpha, b):
    p = OscillatorParams(B=b, alpha=alpha)
    formula = {(c.family, c.first[0], c.second[0]) for c in analytic.oscillator_crossings(p, 20)}
    assert formula == brute_oscillator_crossings(p, 20)


@settings(max_examples=40, deadline=None)
@given(total=st.one_of(st.integers(1, 40).map(lambda k: k / 2), st.floats(0.05, 20)), d=st.floats(-2, 2))
def test_scarf_crossings_match_brute_force(total, d):
    p = ScarfParams((total + d) / 2, (total - d) / 2)
    formula = {(c.family, c.first[0], c.second[0]) for c in analytic.scarf2_crossings(p, 20)}
    assert formula == brute_scarf_crossings(p, 20)


def test_zero_strength_oscillator_reports_every_pair():
    pairs = analytic.oscillator_crossings(OscillatorParams(B=0.0, alpha=0.5), 2)
    assert len(pairs) == 2 * 9


def test_level_serialization():
    d = analytic.scarf2_levels(SCARF, 1, 0).as_dict()
    assert d["omega"] == 1 and d["lambda"] == 7 and d["q"] is None
    c = analytic.scarf2_crossings(SCARF, 6)[0].as_dict()
    assert c["family"] == "E+" and c["first"] == [0, 1]
