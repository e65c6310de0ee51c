"""Numerical certification of the analytic claims.

Each check compares a finite-difference computation against a closed form
or an exact identity and records the outcome as a :class:`VerificationReport`.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import analytic
from .analytic import AnalyticLevel
from .discretize import Grid, assemble_dirac, assemble_intertwiner, assemble_schrodinger, laplacian
from .eigen import Spectrum, eigenvalues, sort_eigenvalues
from .errors import DomainError, ZeroModeError
from .models import (
    Branch,
    GeneratorModel,
    Model,
    PeriodicPseudo,
    ScarfII,
    ShiftedOscillator,
    as_branch,
    generator_to_model,
)

PASS = "pass"
FAIL = "fail"
INFO = "informational"

LINE_TOL = 5e-3
PERIODIC_TOL = 1e-3
ZERO_MODE_ENERGY = 1e-6


@dataclass
class VerificationReport:
    claim_id: str
    status: str
    measured: list = field(default_factory=list)
    expected: list = field(default_factory=list)
    tolerance: float = 0.0
    notes: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def as_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        return cls(**data)


def deviation_status(measured, expected, tol) -> str:
    dev = [abs(m - e) for m, e in zip(measured, expected)]
    return PASS if len(measured) == len(expected) and all(d <= tol for d in dev) else FAIL


# ---------------------------------------------------------------------------
# spectrum matching


@dataclass(frozen=True)
class MatchResult:
    pairs: list  # (numeric, analytic, |delta|)
    unmatched_numeric: list
    unmatched_analytic: list
    cutoff: float
    tolerance: float

    @property
    def complete(self) -> bool:
        return not self.unmatched_analytic

    @property
    def max_deviation(self) -> float:
        return max((d for _, _, d in self.pairs), default=0.0)


def _values(seq):
    if isinstance(seq, Spectrum):
        return np.asarray(seq.eigenvalues, dtype=complex)
    out = []
    for item in seq:
        out.append(item.lam if isinstance(item, AnalyticLevel) else item)
    return np.asarray(out, dtype=complex)


def greedy_match(left, right, tol):
    """Injective nearest-first matching on real parts; returns index pairs."""
    left = np.asarray(left, dtype=complex)
    right = np.asarray(right, dtype=complex)
    if left.size == 0 or right.size == 0:
        return []
    dist = np.abs(left.real[:, None] - right.real[None, :])
    ii, jj = np.nonzero(dist <= tol)
    order = np.lexsort((jj, ii, dist[ii, jj]))
    used_l, used_r, pairs = set(), set(), []
    for k in order:
        i, j = int(ii[k]), int(jj[k])
        if i in used_l or j in used_r:
            continue
        used_l.add(i)
        used_r.add(j)
        pairs.append((i, j))
    return pairs


def match_spectra(numeric, analytic_levels, tol: float, cutoff: float) -> MatchResult:
    """Match numeric eigenvalues to analytic lambdas below ``cutoff``.

    Numeric values are put in canonical order first, so the result does not
    depend on the order they were supplied in.
    """
    num = sort_eigenvalues(_values(numeric))
    ana = np.sort(_values(analytic_levels).real)
    if num.size == 0 or ana.size == 0:
        raise DomainError("match_spectra needs non-empty numeric and analytic inputs")
    num = num[num.real < cutoff]
    ana = ana[ana < cutoff]
    pairs = greedy_match(num, ana, tol)
    pairs.sort(key=lambda p: p[1])
    used_n = {i for i, _ in pairs}
    used_a = {j for _, j in pairs}
    return MatchResult(
        pairs=[(complex(num[i]), float(ana[j]), float(abs(num[i].real - ana[j]))) for i, j in pairs],
        unmatched_numeric=[complex(v) for k, v in enumerate(num) if k not in used_n],
        unmatched_analytic=[float(v) for k, v in enumerate(ana) if k not in used_a],
        cutoff=cutoff,
        tolerance=tol,
    )


# ---------------------------------------------------------------------------
# cutoffs and analytic expectations


def resolution_cutoff(grid: Grid, tol: float) -> float:
    """Largest lambda whose 3-point truncation error, estimated as h^2 lambda^2 / 6
    (twice the leading free-particle term, for headroom), stays below tol."""
    return math.sqrt(6.0 * tol) / grid.spacing


def default_cutoff(spec: Model, grid: Grid, tol: float) -> float:
    res = resolution_cutoff(grid, tol)
    if isinstance(spec, ScarfII):
        return min(spec.continuum_threshold() - 0.5, res)
    if isinstance(spec, ShiftedOscillator):
        edge = min(
            abs(spec.potential(x, w)) for x in (grid.x_min, grid.x_max) for w in (Branch.PLUS, Branch.MINUS)
        )
        return min(0.8 * edge, res)
    return res


def default_tolerance(spec: Model) -> float:
    return PERIODIC_TOL if isinstance(spec, GeneratorModel) else LINE_TOL


def analytic_levels(spec: Model, omega, cutoff: float) -> Optional[list]:
    """Real analytic levels of ``spec`` on branch omega below ``cutoff`` (None if unknown)."""
    w = as_branch(omega)
    if isinstance(spec, ScarfII):
        return [lv for lv in analytic.scarf2_spectrum(spec.p, w) if lv.real and lv.lam < cutoff]
    if isinstance(spec, ShiftedOscillator):
        if spec.p.B == 0:
            return None
        n_max = int(cutoff / (4.0 * spec.p.B)) + 2
        return [lv for lv in analytic.oscillator_spectrum(spec.p, w, n_max) if lv.lam < cutoff]
    if isinstance(spec, PeriodicPseudo):
        n_max = int(2 * math.sqrt(max(cutoff, 0.0) + 25.0 / 16.0)) + 1
        return [lv for lv in analytic.periodic_spectrum(3, n_max) if lv.lam < cutoff]
    return None


def expected_zero_modes(spec: Model) -> Optional[dict]:
    """Analytic zero-mode count per branch, None when the model has no prediction."""
    if isinstance(spec, ScarfII):
        return {1: 0, -1: 1}
    if isinstance(spec, ShiftedOscillator):
        return {1: 1, -1: 0}
    if isinstance(spec, PeriodicPseudo):
        return {1: 0, -1: 0}
    if spec.name == "custom" and spec.params().get("label", "").startswith("constant"):
        return {1: 0, -1: 0}
    return None


def schrodinger_spectrum(spec: Model, omega, grid: Grid) -> Spectrum:
    return eigenvalues(assemble_schrodinger(spec, omega, grid))


def spectrum_report(spec: Model, omega, grid: Grid, tol=None, cutoff=None, levels=None, claim_id=None):
    """Numeric spectrum of H_omega against the analytic levels."""
    w = as_branch(omega)
    tol = default_tolerance(spec) if tol is None else tol
    cutoff = default_cutoff(spec, grid, tol) if cutoff is None else cutoff
    levels = analytic_levels(spec, w, cutoff) if levels is None else levels
    numeric = schrodinger_spectrum(spec, w, grid)
    match = match_spectra(numeric, levels, tol, cutoff)
    return VerificationReport(
        claim_id=claim_id or f"{spec.name}.spectrum.omega{int(w):+d}",
        status=PASS if match.complete else FAIL,
        measured=[p[0].real for p in match.pairs],
        expected=[p[1] for p in match.pairs] + match.unmatched_analytic,
        tolerance=tol,
        notes=(
            f"cutoff={cutoff:.6g}; max |dRe|={match.max_deviation:.3g}; "
            f"max |Im| matched={max((abs(p[0].imag) for p in match.pairs), default=0.0):.3g}; "
            f"unmatched analytic={match.unmatched_analytic}; "
            f"unmatched numeric={[round(v.real, 6) for v in match.unmatched_numeric]}"
        ),
    ), match


# ---------------------------------------------------------------------------
# supersymmetric pairing


def susy_report(spec: Model, grid: Grid, tol: float, cutoff: Optional[float] = None) -> VerificationReport:
    """Compare sigma(H+) and sigma(H-) below the cutoff; the residue should be the zero modes."""
    cutoff = default_cutoff(spec, grid, tol) if cutoff is None else cutoff
    spectra = {}
    for w in (1, -1):
        values = schrodinger_spectrum(spec, w, grid).eigenvalues
        spectra[w] = values[values.real < cutoff + tol]
    pairs = greedy_match(spectra[1], spectra[-1], tol)
    used = {1: {i for i, _ in pairs}, -1: {j for _, j in pairs}}
    residue = {
        w: [complex(v) for k, v in enumerate(spectra[w]) if k not in used[w] and v.real < cutoff] for w in (1, -1)
    }
    zero_threshold = max(tol, 1e-6 * max(1.0, laplacian(grid).norm() * grid.spacing**2))
    zeros = {w: [v for v in residue[w] if abs(v) <= zero_threshold] for w in (1, -1)}
    non_zero = [v for w in (1, -1) for v in residue[w] if abs(v) > zero_threshold]
    expected = expected_zero_modes(spec)
    counts = {w: len(zeros[w]) for w in (1, -1)}
    if non_zero:
        ok = False
    elif expected is None:
        ok = counts[1] + counts[-1] <= 1
    else:
        ok = counts == expected
    return VerificationReport(
        claim_id=f"{spec.name}.susy",
        status=PASS if ok else FAIL,
        measured=[abs(v) for w in (1, -1) for v in residue[w]],
        expected=[0.0] * (sum(expected.values()) if expected else 0),
        tolerance=tol,
        notes=(
            f"cutoff={cutoff:.6g}; matched={len(pairs)}; residue(+1)={[_fmt(v) for v in residue[1]]}; "
            f"residue(-1)={[_fmt(v) for v in residue[-1]]}; expected zero modes={expected}"
        ),
    )


def _fmt(z):
    return f"{z.real:.6g}{z.imag:+.2g}j"


# ---------------------------------------------------------------------------
# PT symmetry


def pt_residual(spec, omega, grid: Grid) -> float:
    """max_j |conj(V(-x_j)) - V(x_j)| on a grid symmetric about 0.

    ``spec`` may be a model (V = V_omega) or a plain callable V(x).
    """
    if not grid.is_symmetric():
        raise DomainError(f"grid ({grid.x_min}, {grid.x_max}) is not symmetric about 0")
    x = grid.points
    if isinstance(spec, Model):
        w = as_branch(omega)
        v = np.asarray(spec.potential(x, w))
        v_mirror = np.asarray(spec.potential(-x, w))
    else:
        v = np.asarray(spec(x), dtype=complex)
        v_mirror = np.asarray(spec(-x), dtype=complex)
    return float(np.max(np.abs(np.conj(v_mirror) - v)))


def mirror_residual(spec: Model, grid: Grid) -> float:
    """max_j |V_+(-x_j) - V_-(x_j)|."""
    x = grid.points
    return float(np.max(np.abs(np.asarray(spec.potential(-x, 1)) - np.asarray(spec.potential(x, -1)))))


# ---------------------------------------------------------------------------
# intertwining


def smooth_probes(grid: Grid) -> np.ndarray:
    """Columns: windowed smooth functions vanishing to high order at both ends."""
    t = (grid.points - grid.x_min) / (grid.x_max - grid.x_min)
    window = np.sin(np.pi * t) ** 8
    return np.column_stack([window * np.exp(2j * np.pi * k * t) for k in range(3)])


def _probe_norm(apply, probes):
    return max(float(np.max(np.abs(apply(f))) / np.max(np.abs(f))) for f in probes.T)


@dataclass(frozen=True)
class IntertwiningResult:
    raw: float
    normalized: float
    hermitian_defect: float
    entrywise: float
    spacing: float


def intertwining_residual(generator, derivative, omega, grid: Grid, *, flip_imaginary: bool = False):
    """How far eta H - H^dagger eta is from zero for eta = -i d/dx + omega*G.

    ``raw`` is the largest value of ||(eta H - H^dagger eta) f||_inf / ||f||_inf
    over smooth probes ``f`` vanishing at the walls; ``normalized`` divides by
    h**2.  ``hermitian_defect`` measures (eta H) - (eta H)^dagger the same way
    but from the explicitly assembled product, and ``entrywise`` is the plain
    max-norm of that difference.  ``flip_imaginary`` builds V with the wrong
    sign of Im V (negative control).
    """
    from scipy import sparse

    w = int(as_branch(omega))
    x = grid.points
    h = grid.spacing
    sign = -1 if flip_imaginary else 1
    g = np.asarray(generator(x), dtype=float)
    gp = np.asarray(derivative(x), dtype=float)
    v = -(g**2) - 1j * w * sign * gp
    n = grid.n_interior
    diag = 2.0 / h**2 + v
    off = np.full(n - 1, -1.0 / h**2)

    def ham(f):
        out = diag * f
        out[:-1] += off * f[1:]
        out[1:] += off * f[:-1]
        return out

    def ham_adj(f):
        out = np.conj(diag) * f
        out[:-1] += off * f[1:]
        out[1:] += off * f[:-1]
        return out

    def eta(f):
        padded = np.concatenate([[0.0], f, [0.0]])
        return -1j * (padded[2:] - padded[:-2]) / (2 * h) + w * g * f

    probes = smooth_probes(grid)
    raw = _probe_norm(lambda f: eta(ham(f)) - ham_adj(eta(f)), probes)

    eta_m = sparse.csr_matrix(assemble_intertwiner(lambda s: w * np.asarray(generator(s), dtype=float), grid))
    h_m = sparse.diags([off, diag, off], [-1, 0, 1], format="csr")
    product = eta_m @ h_m
    defect = (product - product.conj().T).tocsr()
    herm = _probe_norm(lambda f: defect @ f, probes)
    entrywise = float(np.max(np.abs(defect.data))) if defect.nnz else 0.0
    return IntertwiningResult(raw, raw / h**2, herm, entrywise, h)


# ---------------------------------------------------------------------------
# Dirac spinors and pairing


@dataclass(frozen=True)
class SpinorResult:
    plus: np.ndarray
    minus: np.ndarray
    residual: float


def spinor_reconstruct(psi, spec: Model, energy: complex, omega, grid: Grid, threshold: float = ZERO_MODE_ENERGY):
    """Rebuild the partner component from a Schrödinger eigenvector.

    omega=+1: psi_minus = (d + M) psi_plus / E; omega=-1: psi_plus = (-d + M) psi_minus / E.
    The residual is ||D Psi - E Psi||_inf / ||Psi||_inf for the staggered Dirac
    operator whose Dirichlet component is psi_omega.
    """
    w = int(as_branch(omega))
    energy = complex(energy)
    if abs(energy) < threshold:
        raise ZeroModeError(f"|E| = {abs(energy):.3g} is below the zero-mode threshold {threshold:.3g}")
    dirac = assemble_dirac(spec, grid, "staggered", pinned=w)
    psi = np.asarray(psi, dtype=complex)
    partner = dirac.apply_pinned_partner(psi) / energy
    plus, minus = (psi, partner) if w == 1 else (partner, psi)
    spinor = np.concatenate([plus, minus])
    residual = float(np.max(np.abs(dirac.matvec(spinor) - energy * spinor)) / np.max(np.abs(spinor)))
    return SpinorResult(plus, minus, residual)


def dirac_spectrum(spec: Model, grid: Grid, pinned=1, scheme: str = "staggered") -> Spectrum:
    return eigenvalues(assemble_dirac(spec, grid, scheme, pinned))


def dirac_pairing_report(spec: Model, grid: Grid, tol: float, cutoff: Optional[float] = None) -> VerificationReport:
    """Every certified lambda > tol of H_omega must show up as +-sqrt(lambda) in the Dirac spectrum.

    Certified means: real part below the cutoff and |Im lambda| <= 10 tol.
    The Dirac operator used for branch omega carries the Dirichlet condition
    on psi_omega, like the Schrödinger problem it is compared with.
    """
    cutoff = default_cutoff(spec, grid, tol) if cutoff is None else cutoff
    measured, expected, missing = [], [], []
    for w in (1, -1):
        lam = schrodinger_spectrum(spec, w, grid).eigenvalues
        certified = lam[(lam.real < cutoff) & (lam.real > tol) & (np.abs(lam.imag) <= 10 * tol)]
        energies = dirac_spectrum(spec, grid, pinned=w).eigenvalues
        for value in certified:
            root = math.sqrt(value.real)
            for target in (root, -root):
                dev = float(np.min(np.abs(energies - target)))
                measured.append(dev)
                expected.append(0.0)
                if dev > tol:
                    missing.append((w, round(target, 6)))
    ok = bool(measured) and not missing
    return VerificationReport(
        claim_id=f"{spec.name}.dirac_pairing",
        status=PASS if ok else FAIL,
        measured=measured,
        expected=expected,
        tolerance=tol,
        notes=f"cutoff={cutoff:.6g}; checked {len(measured)} signed roots; missing={missing}",
    )


# ---------------------------------------------------------------------------
# periodic model: explicit eigenfunctions


def periodic_eigenfunction(n: int, branch, x):
    """Closed-form eigenfunction of H_branch for the periodic model, vanishing at x = +-pi."""
    s = int(as_branch(branch))
    x = np.asarray(x, dtype=float)
    phase = 0.5 * n * (np.pi + s * x)
    numerator = ((16 - n * n) * np.cos(x) - s * 2j * (n * n - 4) * np.sin(x)) * np.sin(phase) - s * 6 * n * np.sin(
        x
    ) * np.cos(phase)
    values = numerator / (np.cos(x) + s * 2j * np.sin(x))
    return complex(values) if values.ndim == 0 else values


def wavefunction_residual(n: int, branch, grid: Grid) -> float:
    """||H psi - lambda_n psi||_inf / ||psi||_inf for the sampled closed-form eigenfunction.

    Returns nan when the closed form vanishes identically on the grid (n = 2).
    """
    w = as_branch(branch)
    op = assemble_schrodinger(PeriodicPseudo(), w, grid)
    psi = periodic_eigenfunction(n, w, grid.points)
    scale = float(np.max(np.abs(psi)))
    if scale < 1e-12:
        return float("nan")
    lam = analytic.periodic_lambda(n)
    return float(np.max(np.abs(op.matvec(psi) - lam * psi)) / scale)


def refinement_order(coarse: float, fine: float, h_coarse: float, h_fine: float) -> float:
    return math.log(coarse / fine) / math.log(h_coarse / h_fine)


# ---------------------------------------------------------------------------
# Dirac / Schrödinger consistency


def squared_dirac_residual(spec: Model, grid: Grid, omega=1) -> float:
    """Apply (D^2 restricted to the pinned block) - H_omega to smooth probes.

    For the staggered operator the pinned block of D^2 is K^T K with K the
    node-to-half map; it should agree with -D2 + M^2 - omega M' to O(h^2).
    """
    w = int(as_branch(omega))
    dirac = assemble_dirac(spec, grid, "staggered", pinned=w)
    ham = assemble_schrodinger(spec, w, grid)
    probes = smooth_probes(grid)

    def defect(f):
        partner = dirac.apply_pinned_partner(f)
        back = dirac.apply_top_right(partner) if w == 1 else dirac.apply_bottom_left(partner)
        return back - ham.matvec(f)

    return _probe_norm(defect, probes)
