"""Verification suites: the acceptance checks plus informational reports.

Every check returns one or more :class:`VerificationReport` objects.  Checks
tagged ``acceptance`` decide the suite outcome; ``informational`` reports
record measurements that have no pass/fail target (open questions, the
oscillator constant-term discrepancy, the degenerate periodic levels).
"""

from __future__ import annotations

import math
import time
from typing import Callable

import numpy as np

from . import analytic, oracles, verify
from .discretize import assemble_dirac, assemble_schrodinger, grid_for, make_grid
from .eigen import eigenvalues, eigenvector
from .models import (
    OscillatorParams,
    PeriodicPseudo,
    ScarfII,
    ScarfParams,
    ShiftedOscillator,
    pseudo_generator,
    pseudo_generator_derivative,
)
from .errors import DomainError
from .verify import FAIL, INFO, PASS, VerificationReport

SEED = 20261018

SCARF = ScarfParams(2.5, 1.5)
OSCILLATOR = OscillatorParams(B=2.0, alpha=0.25, shift=1.0)

PERIODIC_N = 2000
LINE_N = 3000
PERIODIC_RUNTIME_LIMIT = 60.0


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def _lowest(values, count):
    return np.asarray(values)[:count]


class _Cache:
    """Spectra shared between checks within one suite run."""

    def __init__(self):
        self._store = {}

    def get(self, key, compute: Callable):
        if key not in self._store:
            self._store[key] = compute()
        return self._store[key]

    def schrodinger(self, spec, omega, grid):
        return self.get(("H", spec.name, int(omega), grid), lambda: verify.schrodinger_spectrum(spec, omega, grid))


# ---------------------------------------------------------------------------
# acceptance checks


def check_periodic_spectrum(cache: _Cache):
    spec = PeriodicPseudo()
    grid = make_grid(-math.pi, math.pi, PERIODIC_N)
    start = time.perf_counter()
    numeric = cache.schrodinger(spec, 1, grid)
    elapsed = time.perf_counter() - start
    levels = analytic.periodic_spectrum(3, 8)
    match = verify.match_spectra(numeric, levels, verify.PERIODIC_TOL, cutoff=16.0)
    ok = match.complete and elapsed <= PERIODIC_RUNTIME_LIMIT
    return [
        VerificationReport(
            claim_id="ac1.periodic_spectrum",
            status=_status(ok),
            measured=[p[0].real for p in match.pairs],
            expected=[lv.lam for lv in levels],
            tolerance=verify.PERIODIC_TOL,
            notes=(
                f"omega=+1, N={PERIODIC_N}; max |dRe|={match.max_deviation:.3g}; "
                f"max |Im|={max(abs(p[0].imag) for p in match.pairs):.3g}; "
                f"unmatched={match.unmatched_analytic}; solve time {elapsed:.2f}s (limit {PERIODIC_RUNTIME_LIMIT:.0f}s)"
            ),
        )
    ]


def _bound_values(spectrum, cutoff):
    values = spectrum.eigenvalues
    return values[values.real < cutoff]


def _list_match(measured, expected, tol):
    measured = np.sort(np.asarray(measured).real)
    expected = np.sort(np.asarray(expected, dtype=float))
    return measured.size == expected.size and bool(np.all(np.abs(measured - expected) <= tol))


def check_scarf(cache: _Cache):
    spec = ScarfII(SCARF)
    grid = grid_for(spec, LINE_N)
    tol = verify.LINE_TOL
    cutoff = verify.default_cutoff(spec, grid, tol)
    reports = []
    bound = {}
    for w in (1, -1):
        expected = [lv.lam for lv in analytic.scarf2_spectrum(SCARF, w)]
        bound[w] = _bound_values(cache.schrodinger(spec, w, grid), cutoff)
        reports.append(
            VerificationReport(
                claim_id=f"ac2.scarf2_spectrum.omega{w:+d}",
                status=_status(_list_match(bound[w], expected, tol)),
                measured=[float(v.real) for v in bound[w]],
                expected=expected,
                tolerance=tol,
                notes=f"bound eigenvalues below cutoff {cutoff:.6g} vs the closed-form family labelled {w:+d}",
            )
        )
    susy = verify.susy_report(spec, grid, tol, cutoff)
    susy.claim_id = "ac2.scarf2_susy"
    reports.append(susy)
    # the closed-form families with the branch labels exchanged
    swapped = all(
        _list_match(bound[w], [lv.lam for lv in analytic.scarf2_spectrum(SCARF, -w)], tol) for w in (1, -1)
    )
    reports.append(
        VerificationReport(
            claim_id="info.scarf2_branch_assignment",
            status=INFO,
            measured=[float(v.real) for v in bound[1]],
            expected=[lv.lam for lv in analytic.scarf2_spectrum(SCARF, -1)],
            tolerance=tol,
            notes=(
                "V_omega = M^2 - omega M' puts the normalizable zero mode exp(-int M) on omega=+1. "
                f"Numeric spectra match the closed-form families with labels exchanged: {swapped}"
            ),
        )
    )
    return reports


def check_oscillator(cache: _Cache):
    spec = ShiftedOscillator(OSCILLATOR)
    grid = grid_for(spec, LINE_N)
    tol = verify.LINE_TOL
    expected = {1: [0.0, 1.0, 4.0, 5.0, 8.0, 9.0], -1: [1.0, 4.0, 5.0, 8.0, 9.0, 12.0]}
    reports = []
    for w in (1, -1):
        lowest = _lowest(cache.schrodinger(spec, w, grid).eigenvalues, 6)
        analytic_six = [lv.lam for lv in analytic.oscillator_spectrum(OSCILLATOR, w, 6)][:6]
        ok = _list_match(lowest, expected[w], tol) and _list_match(analytic_six, expected[w], 1e-12)
        reports.append(
            VerificationReport(
                claim_id=f"ac3.oscillator_spectrum.omega{w:+d}",
                status=_status(ok),
                measured=[float(v.real) for v in lowest],
                expected=expected[w],
                tolerance=tol,
                notes=f"lowest six of H_omega, max |Im|={float(np.max(np.abs(lowest.imag))):.3g}",
            )
        )
    susy = verify.susy_report(spec, grid, tol)
    susy.claim_id = "ac3.oscillator_susy"
    reports.append(susy)
    return reports


def check_reality(seed: int = SEED):
    rng = np.random.default_rng(seed)
    exceptions = []
    checked = 0
    for _ in range(100):
        s = rng.uniform(0.0, 10.0)
        if s == 0.0:
            s = 1e-3
        diff = rng.uniform(-5.0, 5.0)
        p = ScarfParams((s + diff) / 2.0, (s - diff) / 2.0)
        for w in (1, -1):
            for n in range(101):
                checked += 1
                lam = analytic.scarf2_lambda(p, w, n)
                if (lam >= 0) != analytic.scarf2_is_real(p, w, n):
                    exceptions.append((p.A, p.B, w, n))
    return [
        VerificationReport(
            claim_id="ac4.scarf2_reality",
            status=_status(not exceptions),
            measured=[float(len(exceptions))],
            expected=[0.0],
            tolerance=0.0,
            notes=f"{checked} (A, B, omega, n) cases, exceptions={exceptions[:5]}",
        )
    ]


def _close(a, b):
    return abs(a - b) <= 1e-9 * (1.0 + abs(a) + abs(b))


def brute_oscillator_crossings(p: OscillatorParams, n_max: int):
    """Energy-equality scan between the q=+1 and q=-1 ladders of each family."""
    found = set()
    for w, family in ((1, "E+"), (-1, "E-")):
        for a in range(n_max + 1):
            ea = analytic.oscillator_levels(p, w, 1, a).energy
            for b in range(n_max + 1):
                if _close(ea, analytic.oscillator_levels(p, w, -1, b).energy):
                    found.add((family, a, b))
    return found


def brute_scarf_crossings(p: ScarfParams, n_max: int):
    """Energy-equality scan within each family.

    Within one family equal lambda means equal signed energy.  A diagonal pair
    (n, n) is the vertex of the parabola lambda(n), recognised by its
    neighbours n - 1 and n + 1 coinciding (the formula is evaluated at -1 for
    a vertex at 0).
    """
    found = set()
    for w, family in ((1, "E+"), (-1, "E-")):
        energies = [analytic.scarf2_levels(p, w, n).energy for n in range(n_max + 1)]
        for a in range(n_max + 1):
            for b in range(a + 1, n_max + 1):
                if _close(energies[a], energies[b]):
                    found.add((family, a, b))
            if _close(analytic.scarf2_lambda(p, w, a - 1), analytic.scarf2_lambda(p, w, a + 1)):
                found.add((family, a, a))
    return found


def _formula_set(pairs):
    return {(c.family, c.first[0], c.second[0]) for c in pairs}


def crossing_samples(seed: int = SEED):
    rng = np.random.default_rng(seed + 1)
    osc = [OscillatorParams(B=1.0, alpha=a) for a in (0.0, 1.0, 2.0, 3.0, 5.0, 0.25)]
    osc += [OscillatorParams(B=0.0, alpha=1.0), OscillatorParams(B=2.0, alpha=49.0)]
    while len(osc) < 20:
        alpha = float(rng.integers(0, 12)) if rng.random() < 0.5 else float(rng.uniform(0, 12))
        osc.append(OscillatorParams(B=float(rng.uniform(0.1, 4.0)), alpha=alpha))
    scarf = [ScarfParams(2.5, 1.5), ScarfParams(0.3, 0.3), ScarfParams(0.25, 0.25), ScarfParams(0.5, 0.5)]
    while len(scarf) < 20:
        total = float(rng.integers(1, 60)) / 2.0 if rng.random() < 0.6 else float(rng.uniform(0.1, 30))
        diff = float(rng.uniform(-3, 3))
        scarf.append(ScarfParams((total + diff) / 2.0, (total - diff) / 2.0))
    return osc, scarf


def check_crossings(n_max: int = 50, seed: int = SEED):
    osc, scarf = crossing_samples(seed)
    bad = []
    total = 0
    for p in osc:
        total += 1
        if _formula_set(analytic.oscillator_crossings(p, n_max)) != brute_oscillator_crossings(p, n_max):
            bad.append(("oscillator", p.B, p.alpha))
    for p in scarf:
        total += 1
        if _formula_set(analytic.scarf2_crossings(p, n_max)) != brute_scarf_crossings(p, n_max):
            bad.append(("scarf2", p.A, p.B))
    return [
        VerificationReport(
            claim_id="ac5.crossings",
            status=_status(not bad),
            measured=[float(len(bad))],
            expected=[0.0],
            tolerance=0.0,
            notes=f"n_max={n_max}; {total} parameter samples (20 per model); mismatches={bad}",
        )
    ]


def check_intertwining():
    results, controls = {}, {}
    for n in (500, 1000):
        grid = make_grid(-math.pi, math.pi, n)
        results[n] = verify.intertwining_residual(pseudo_generator, pseudo_generator_derivative, 1, grid)
        controls[n] = verify.intertwining_residual(
            pseudo_generator, pseudo_generator_derivative, 1, grid, flip_imaginary=True
        )
    ratio = results[500].raw / results[1000].raw
    herm_ratio = results[500].hermitian_defect / results[1000].hermitian_defect
    control = min(controls[n].raw / results[n].raw for n in (500, 1000))
    ok = 3.0 <= ratio <= 5.0 and 3.0 <= herm_ratio <= 5.0 and control >= 1e3
    order = math.log(ratio) / math.log(results[500].spacing / results[1000].spacing)
    return [
        VerificationReport(
            claim_id="ac6.intertwining",
            status=_status(ok),
            measured=[ratio, herm_ratio, control],
            expected=[4.0, 4.0, 1e3],
            tolerance=1.0,
            notes=(
                f"raw N=500 {results[500].raw:.4g}, N=1000 {results[1000].raw:.4g} (order {order:.3f}); "
                f"hermitian defect {results[500].hermitian_defect:.4g} -> {results[1000].hermitian_defect:.4g}; "
                f"flipped-sign control {controls[500].raw:.4g} / {controls[1000].raw:.4g}; "
                f"entrywise max-norm (not decaying, corner terms) {results[500].entrywise:.3g} -> "
                f"{results[1000].entrywise:.3g}; probes are windowed smooth functions"
            ),
        )
    ]


def check_pt():
    models = [
        (ScarfII(SCARF), make_grid(-15.0, 15.0, 2001)),
        (ShiftedOscillator(OSCILLATOR), make_grid(-12.0, 12.0, 2001, OSCILLATOR.shift)),
        (PeriodicPseudo(), make_grid(-math.pi, math.pi, 2001)),
    ]
    measured, labels = [], []
    for spec, grid in models:
        for w in (1, -1):
            measured.append(verify.pt_residual(spec, w, grid))
            labels.append(f"{spec.name}{w:+d}")
    periodic, grid = models[2]
    measured.append(verify.mirror_residual(periodic, grid))
    labels.append("mirror")
    return [
        VerificationReport(
            claim_id="ac7.pt_residuals",
            status=_status(max(measured) <= 1e-12),
            measured=measured,
            expected=[0.0] * len(measured),
            tolerance=1e-12,
            notes="order: " + ", ".join(labels),
        )
    ]


def check_dirac_pairing():
    reports = []
    for spec, n, tol in ((ScarfII(SCARF), LINE_N, verify.LINE_TOL), (PeriodicPseudo(), PERIODIC_N, verify.PERIODIC_TOL)):
        grid = grid_for(spec, n)
        report = verify.dirac_pairing_report(spec, grid, tol)
        report.claim_id = f"ac8.dirac_pairing.{spec.name}"
        reports.append(report)
    return reports


def check_wavefunctions():
    reports = []
    fine = make_grid(-math.pi, math.pi, PERIODIC_N)
    coarse = make_grid(-math.pi, math.pi, PERIODIC_N // 2)
    for n in (3, 4, 5):
        r_fine = verify.wavefunction_residual(n, 1, fine)
        r_coarse = verify.wavefunction_residual(n, 1, coarse)
        order = verify.refinement_order(r_coarse, r_fine, coarse.spacing, fine.spacing)
        reports.append(
            VerificationReport(
                claim_id=f"ac9.wavefunction.n{n}",
                status=_status(r_fine <= 1e-4 and order >= 1.8),
                measured=[r_fine, order],
                expected=[0.0, 2.0],
                tolerance=1e-4,
                notes=(
                    f"max-norm residual at N={PERIODIC_N} (limit 1e-4) and observed order from "
                    f"N={PERIODIC_N // 2} (limit >= 1.8); coarse residual {r_coarse:.4g}"
                ),
            )
        )
    return reports


def _nearest_assignment(left, right) -> float:
    """Largest distance of the closest-first injective pairing of two equal-size sets."""
    dist = np.abs(np.asarray(left)[:, None] - np.asarray(right)[None, :])
    worst = 0.0
    for _ in range(dist.shape[0]):
        i, j = np.unravel_index(np.argmin(dist), dist.shape)
        worst = max(worst, float(dist[i, j]))
        dist[i, :] = np.inf
        dist[:, j] = np.inf
    return worst


def check_eigensolver(seed: int = SEED):
    rng = np.random.default_rng(seed + 2)
    reports = []

    diag = rng.uniform(-2, 2, 500)
    off = rng.uniform(-1, 1, 499)
    a = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
    ours = eigenvalues(a).eigenvalues
    ref = oracles.sturm_bisection(diag, off)
    dev_sturm = float(np.max(np.abs(ours.real - ref)))
    max_imag = float(np.max(np.abs(ours.imag)))
    reports.append(
        VerificationReport(
            claim_id="ac10.sturm_oracle",
            status=_status(dev_sturm <= 1e-10 and max_imag <= 1e-10),
            measured=[dev_sturm, max_imag],
            expected=[0.0, 0.0],
            tolerance=1e-10,
            notes="random real symmetric tridiagonal N=500 against Sturm bisection",
        )
    )

    b = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    b = b + b.T
    ours = eigenvalues(b).eigenvalues
    roots = oracles.charpoly_roots(b)
    dev_poly = _nearest_assignment(ours, roots)
    reports.append(
        VerificationReport(
            claim_id="ac10.charpoly_oracle",
            status=_status(dev_poly <= 1e-8),
            measured=[dev_poly],
            expected=[0.0],
            tolerance=1e-8,
            notes="random 6x6 complex symmetric, roots of the Faddeev-LeVerrier polynomial",
        )
    )

    trace_devs = []
    cases = []
    d = rng.standard_normal(1000) + 1j * rng.standard_normal(1000)
    e = rng.standard_normal(999) + 1j * rng.standard_normal(999)
    cases.append(("random complex symmetric tridiagonal", d, e))
    op = assemble_schrodinger(PeriodicPseudo(), 1, make_grid(-math.pi, math.pi, 1000))
    cases.append(("periodic H(+1)", op.diagonal, op.off_diagonal))
    for _, dd, ee in cases:
        t = np.diag(dd) + np.diag(ee, 1) + np.diag(ee, -1)
        vals = eigenvalues(t).eigenvalues
        norm = float(np.abs(t).sum(axis=1).max())
        trace_devs.append(float(abs(vals.sum() - np.trace(t)) / norm))
    reports.append(
        VerificationReport(
            claim_id="ac10.trace_identity",
            status=_status(max(trace_devs) <= 1e-8),
            measured=trace_devs,
            expected=[0.0] * len(trace_devs),
            tolerance=1e-8,
            notes="|sum(lambda) - trace| / ||A||_inf at N=1000 for: " + "; ".join(c[0] for c in cases),
        )
    )
    return reports


# ---------------------------------------------------------------------------
# informational reports


def info_oscillator_constant(cache: _Cache):
    spec = ShiftedOscillator(OSCILLATOR)
    grid = grid_for(spec, LINE_N)
    lowest = cache.schrodinger(spec, 1, grid).eigenvalues[0]
    x = np.linspace(-12, 12, 1001)
    generic = spec.generic_potential(x, 1)
    closed = spec.closed_form_potential(x, 1)
    agreement = float(np.max(np.abs(generic - closed) / (1 + np.abs(closed))))
    return [
        VerificationReport(
            claim_id="info.oscillator_constant_term",
            status=INFO,
            measured=[float(lowest.real), agreement],
            expected=[0.0, float(OSCILLATOR.B)],
            tolerance=verify.LINE_TOL,
            notes=(
                "constant B(A - omega/2) reproduces M^2 - omega M' (relative gap "
                f"{agreement:.2g}) and puts the lowest omega=+1 eigenvalue at {lowest.real:.6g}; the "
                f"alternative constant B(A + 1/2) would shift every level by B = {OSCILLATOR.B}"
            ),
        )
    ]


def info_periodic_low_levels(cache: _Cache):
    spec = PeriodicPseudo()
    grid = make_grid(-math.pi, math.pi, PERIODIC_N)
    values = cache.schrodinger(spec, 1, grid).eigenvalues
    notes = []
    measured = []
    for n in (1, 2):
        lam = analytic.periodic_lambda(n)
        nearest = float(np.min(np.abs(values - lam)))
        res = verify.wavefunction_residual(n, 1, grid)
        measured += [nearest, res]
        notes.append(f"n={n}: lambda={lam}, nearest eigenvalue distance {nearest:.3g}, wavefunction residual {res:.3g}")
    notes.append("n=2 closed form vanishes identically (residual nan)")
    return [
        VerificationReport(
            claim_id="info.periodic_low_levels",
            status=INFO,
            measured=measured,
            expected=[0.0, 0.0, 0.0, 0.0],
            tolerance=verify.PERIODIC_TOL,
            notes="; ".join(notes),
        )
    ]


def info_periodic_near_degeneracy(cache: _Cache):
    spec = PeriodicPseudo()
    grid = make_grid(-math.pi, math.pi, PERIODIC_N)
    values = cache.schrodinger(spec, 1, grid).eigenvalues
    close = values[np.abs(values.real - analytic.periodic_lambda(4)) < 0.05]
    return [
        VerificationReport(
            claim_id="info.periodic_n4_pair",
            status=INFO,
            measured=[float(v.real) for v in close] + [float(v.imag) for v in close],
            expected=[analytic.periodic_lambda(4)],
            tolerance=verify.PERIODIC_TOL,
            notes=(
                f"{len(close)} eigenvalues near lambda(4) = 2.4375 on omega=+1: a nearly defective pair "
                "whose imaginary parts shrink under refinement"
            ),
        )
    ]


def info_spinors():
    spec = ScarfII(SCARF)
    grid = grid_for(spec, LINE_N)
    dirac = assemble_dirac(spec, grid, pinned=1)
    vec, lam, _ = eigenvector(dirac.pinned_square(), 7.0)
    energy = math.sqrt(lam.real)
    consistent = [verify.spinor_reconstruct(vec, spec, s * energy, 1, grid).residual for s in (1, -1)]
    vec3, lam3, _ = eigenvector(assemble_schrodinger(spec, 1, grid), 7.0)
    three_point = verify.spinor_reconstruct(vec3, spec, math.sqrt(lam3.real), 1, grid).residual
    return [
        VerificationReport(
            claim_id="info.scarf2_spinor_reconstruction",
            status=INFO,
            measured=consistent + [three_point],
            expected=[0.0, 0.0, 0.0],
            tolerance=1e-4,
            notes=(
                "Dirac residuals for the ground state (lambda ~ 7) at N=3000: E=+sqrt, E=-sqrt using the "
                "eigenvector of the Dirac-consistent square, then E=+sqrt from the 3-point Schrödinger "
                "eigenvector (O(h^2) stencil mismatch)"
            ),
        )
    ]


# ---------------------------------------------------------------------------
# suite registry

ACCEPTANCE = {
    "periodic": [check_periodic_spectrum],
    "scarf": [check_scarf],
    "oscillator": [check_oscillator],
    "reality": [lambda cache: check_reality()],
    "crossings": [lambda cache: check_crossings()],
    "intertwining": [lambda cache: check_intertwining()],
    "pt": [lambda cache: check_pt()],
    "pairing": [lambda cache: check_dirac_pairing()],
    "wavefunction": [lambda cache: check_wavefunctions()],
    "eigensolver": [lambda cache: check_eigensolver()],
}

INFORMATIONAL = {
    "periodic": [info_periodic_low_levels, info_periodic_near_degeneracy],
    "oscillator": [info_oscillator_constant],
    "pairing": [lambda cache: info_spinors()],
}

SUITES = ("all",) + tuple(ACCEPTANCE)


def run_suite(name: str = "all", informational: bool = True) -> list:
    """Run a named suite and return its reports ordered by claim id."""
    if name not in SUITES:
        raise DomainError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    keys = list(ACCEPTANCE) if name == "all" else [name]
    cache = _Cache()
    reports = []
    for key in keys:
        for check in ACCEPTANCE[key]:
            reports.extend(check(cache))
        if informational:
            for check in INFORMATIONAL.get(key, []):
                reports.extend(check(cache))
    return sorted(reports, key=lambda r: r.claim_id)


def suite_passed(reports) -> bool:
    return all(r.status != FAIL for r in reports)
