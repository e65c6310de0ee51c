"""Command-line front end.

    ptdirac spectrum  --model scarf2 --A 2.5 --B 1.5 --omega +1 --format csv
    ptdirac dirac     --model periodic --n 2000
    ptdirac verify    --suite all
    ptdirac crossings --model oscillator --alpha 2 --B 1 --n-max 5 --format json

Exit codes: 0 success, 1 verification failure, 2 usage or I/O error,
3 numerical non-convergence.  Floats are written with 12 significant digits.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__, analytic, verify
from .discretize import assemble_dirac, assemble_schrodinger, grid_for
from .eigen import eigenvalues, eigenvector
from .errors import CapacityError, ConvergenceError, DomainError, PtDiracError
from .models import OscillatorParams, PeriodicPseudo, ScarfII, ScarfParams, ShiftedOscillator, as_branch, as_quasi_parity
from .suite import SUITES, run_suite, suite_passed

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CONVERGENCE = 0, 1, 2, 3

MODEL_DEFAULTS = {
    "scarf2": {"A": 2.5, "B": 1.5, "n": 3000},
    "oscillator": {"B": 2.0, "alpha": 0.25, "shift": 1.0, "n": 3000},
    "periodic": {"n": 2000},
}

SPECTRUM_COLUMNS = [
    "index",
    "lambda_re",
    "lambda_im",
    "energy_plus_re",
    "energy_plus_im",
    "energy_minus_re",
    "energy_minus_im",
    "residual",
]
DIRAC_COLUMNS = ["index", "energy_re", "energy_im", "residual"]
REPORT_COLUMNS = ["claim_id", "status", "tolerance", "measured", "expected", "notes"]
CROSSING_COLUMNS = ["family", "n_first", "label_first", "n_second", "label_second", "level_re", "level_im", "observable"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _num(x):
    """Round to 12 significant digits (None and nan pass through as null)."""
    if x is None:
        return None
    x = float(x)
    if not math.isfinite(x):
        return None
    return float(f"{x:.12g}")


def _fmt(x):
    return "" if x is None or (isinstance(x, float) and not math.isfinite(x)) else f"{float(x):.12g}"


def _branch(text):
    try:
        return as_branch(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _quasi_parity(text):
    try:
        return as_quasi_parity(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False, allow_abbrev=False)
    common.add_argument("--model", choices=["scarf2", "oscillator", "periodic"], default="scarf2")
    common.add_argument("--A", type=float, default=None, help="Scarf II parameter A")
    common.add_argument("--B", type=float, default=None, help="Scarf II B, or oscillator strength B")
    common.add_argument("--alpha", type=float, default=None, help="oscillator core parameter")
    common.add_argument("--shift", type=float, default=None, help="oscillator contour shift b")
    common.add_argument("--format", choices=["table", "json", "csv"], default="table")
    common.add_argument("--output", default="-", help="output path, '-' for standard output")

    grid = _Parser(add_help=False, allow_abbrev=False)
    grid.add_argument("--omega", type=_branch, default=as_branch(1))
    grid.add_argument("--quasi-parity", type=_quasi_parity, default=None, help="oscillator: restrict analytic levels")
    grid.add_argument("--L", type=float, default=None, help="half-width of the line domain")
    grid.add_argument("--n", type=int, default=None, help="number of interior grid points")
    grid.add_argument("--tol", type=float, default=None, help="matching tolerance")
    grid.add_argument("--cutoff", type=float, default=None, help="largest lambda reported (default: model cutoff)")

    parser = _Parser(prog="ptdirac", description=__doc__.split("\n\n")[0], allow_abbrev=False)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sp = sub.add_parser("spectrum", parents=[common, grid], allow_abbrev=False, help="Schrödinger-like spectrum of H_omega")
    sp.add_argument("--no-residuals", action="store_true", help="skip inverse-iteration residuals")
    dp = sub.add_parser("dirac", parents=[common, grid], allow_abbrev=False, help="Dirac spectrum (2x2 block operator)")
    dp.add_argument("--scheme", choices=["staggered", "central"], default="staggered")
    vp = sub.add_parser("verify", parents=[common], allow_abbrev=False, help="run a verification suite")
    vp.add_argument("--suite", choices=SUITES, default="all")
    cp = sub.add_parser("crossings", parents=[common], allow_abbrev=False, help="enumerate level crossings")
    cp.add_argument("--n-max", type=int, default=analytic.DEFAULT_N_MAX)
    return parser


# ---------------------------------------------------------------------------
# configuration


def make_model(args):
    defaults = MODEL_DEFAULTS[args.model]

    def pick(name):
        value = getattr(args, name, None)
        return defaults.get(name) if value is None else value

    if args.model == "scarf2":
        return ScarfII(ScarfParams(pick("A"), pick("B")))
    if args.model == "oscillator":
        return ShiftedOscillator(OscillatorParams(B=pick("B"), alpha=pick("alpha"), shift=pick("shift")))
    for name in ("A", "B", "alpha", "shift"):
        if getattr(args, name, None) is not None:
            raise UsageError(f"--{name} does not apply to the periodic model")
    return PeriodicPseudo()


def make_grid_for(args, spec):
    n = MODEL_DEFAULTS[args.model]["n"] if args.n is None else args.n
    if spec.name == "periodic" and args.L is not None:
        raise UsageError("--L does not apply to the periodic model (fixed interval (-pi, pi))")
    return grid_for(spec, n, args.L)


def _meta(args, spec, grid=None, tolerances=None):
    return {
        "model": spec.name,
        "params": {k: _num(v) for k, v in spec.params().items()},
        "grid": None if grid is None else {k: _num(v) if k != "n" else v for k, v in grid.as_dict().items()},
        "tolerances": tolerances or {},
        "version": __version__,
    }


def _report_dict(report):
    return {
        "claim_id": report.claim_id,
        "status": report.status,
        "measured": [_num(v) for v in report.measured],
        "expected": [_num(v) for v in report.expected],
        "tolerance": _num(report.tolerance),
        "notes": report.notes,
    }


# ---------------------------------------------------------------------------
# commands


def cmd_spectrum(args):
    spec = make_model(args)
    grid = make_grid_for(args, spec)
    tol = verify.default_tolerance(spec) if args.tol is None else args.tol
    cutoff = verify.default_cutoff(spec, grid, tol) if args.cutoff is None else args.cutoff
    op = assemble_schrodinger(spec, args.omega, grid)
    spectrum = eigenvalues(op)
    values = spectrum.eigenvalues[spectrum.eigenvalues.real < cutoff]
    rows = []
    for k, lam in enumerate(values):
        residual = None if args.no_residuals else eigenvector(op, lam)[2]
        root = cmath.sqrt(lam)
        rows.append(
            {
                "index": k,
                "lambda_re": lam.real,
                "lambda_im": lam.imag,
                "energy_plus_re": root.real,
                "energy_plus_im": root.imag,
                "energy_minus_re": -root.real,
                "energy_minus_im": -root.imag,
                "residual": residual,
            }
        )
    reports = []
    levels = verify.analytic_levels(spec, args.omega, cutoff)
    if levels is not None and args.quasi_parity is not None:
        levels = [lv for lv in levels if lv.q == args.quasi_parity]
    if levels and values.size:
        match = verify.match_spectra(values, levels, tol, cutoff)
        reports.append(
            verify.VerificationReport(
                claim_id=f"{spec.name}.spectrum.omega{int(args.omega):+d}",
                status=verify.PASS if match.complete else verify.FAIL,
                measured=[p[0].real for p in match.pairs],
                expected=[p[1] for p in match.pairs] + match.unmatched_analytic,
                tolerance=tol,
                notes=f"closed-form levels below cutoff {cutoff:.6g}; unmatched analytic={match.unmatched_analytic}",
            )
        )
    meta = _meta(args, spec, grid, {"match": _num(tol), "cutoff": _num(cutoff)})
    meta["omega"] = int(args.omega)
    return meta, SPECTRUM_COLUMNS, rows, reports, EXIT_OK


def cmd_dirac(args):
    spec = make_model(args)
    grid = make_grid_for(args, spec)
    tol = verify.default_tolerance(spec) if args.tol is None else args.tol
    cutoff = verify.default_cutoff(spec, grid, tol) if args.cutoff is None else args.cutoff
    op = assemble_dirac(spec, grid, args.scheme, args.omega)
    energies = eigenvalues(op).eigenvalues
    bound = math.sqrt(cutoff) if cutoff > 0 else 0.0
    energies = energies[np.abs(energies.real) < bound]
    rows = []
    for k, e in enumerate(energies):
        residual = eigenvector(op, e)[2]
        rows.append({"index": k, "energy_re": e.real, "energy_im": e.imag, "residual": residual})
    meta = _meta(args, spec, grid, {"match": _num(tol), "cutoff": _num(cutoff)})
    meta["omega"] = int(args.omega)
    meta["scheme"] = args.scheme
    return meta, DIRAC_COLUMNS, rows, [], EXIT_OK


def cmd_verify(args):
    reports = run_suite(args.suite)
    meta = {
        "model": "suite",
        "params": {"suite": args.suite},
        "grid": None,
        "tolerances": {"line": verify.LINE_TOL, "periodic": verify.PERIODIC_TOL},
        "version": __version__,
    }
    rows = [
        {
            "claim_id": r.claim_id,
            "status": r.status,
            "tolerance": r.tolerance,
            "measured": " ".join(_fmt(v) for v in r.measured),
            "expected": " ".join(_fmt(v) for v in r.expected),
            "notes": r.notes,
        }
        for r in reports
    ]
    return meta, REPORT_COLUMNS, rows, reports, EXIT_OK if suite_passed(reports) else EXIT_FAIL


def cmd_crossings(args):
    spec = make_model(args)
    if args.n_max < 0:
        raise UsageError("--n-max must be >= 0")
    if isinstance(spec, ScarfII):
        pairs = analytic.scarf2_crossings(spec.p, args.n_max)
    elif isinstance(spec, ShiftedOscillator):
        pairs = analytic.oscillator_crossings(spec.p, args.n_max)
    else:
        raise UsageError("the periodic model has no crossing conditions")
    rows = [
        {
            "family": c.family,
            "n_first": c.first[0],
            "label_first": c.first[1],
            "n_second": c.second[0],
            "label_second": c.second[1],
            "level_re": c.level.real,
            "level_im": c.level.imag,
            "observable": " ".join(str(bool(o)).lower() for o in c.observable),
        }
        for c in pairs
    ]
    meta = _meta(args, spec)
    meta["n_max"] = args.n_max
    meta["crossings"] = [
        {
            "family": c.family,
            "first": list(c.first),
            "second": list(c.second),
            "level": [_num(c.level.real), _num(c.level.imag)],
            "observable": list(c.observable),
        }
        for c in pairs
    ]
    return meta, CROSSING_COLUMNS, rows, [], EXIT_OK


COMMANDS = {"spectrum": cmd_spectrum, "dirac": cmd_dirac, "verify": cmd_verify, "crossings": cmd_crossings}


# ---------------------------------------------------------------------------
# output


def _cell(value):
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)) or value is None:
        return _fmt(value)
    return str(value)


def render(meta, columns, rows, reports, fmt) -> str:
    if fmt == "json":
        payload = {"meta": {k: v for k, v in meta.items() if k != "crossings"}}
        if "lambda_re" in columns or "energy_re" in columns:
            re_key, im_key = ("lambda_re", "lambda_im") if "lambda_re" in columns else ("energy_re", "energy_im")
            payload["eigenvalues"] = [
                {"re": _num(r[re_key]), "im": _num(r[im_key]), "residual": _num(r["residual"])} for r in rows
            ]
        else:
            payload["eigenvalues"] = []
        if "crossings" in meta:
            payload["crossings"] = meta["crossings"]
        payload["reports"] = [_report_dict(r) for r in reports]
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for r in rows:
            writer.writerow([_cell(r[c]) for c in columns])
        return buf.getvalue()
    cells = [[_cell(r[c]) for c in columns] for r in rows]
    if columns == REPORT_COLUMNS:
        cells = [c[:2] + [c[2]] + [c[5]] for c in cells]
        header = ["claim_id", "status", "tolerance", "notes"]
    else:
        header = columns
    widths = [max([len(h)] + [len(c[i]) for c in cells]) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    for c in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(c, widths)).rstrip())
    if reports and columns != REPORT_COLUMNS:
        for r in reports:
            lines.append(f"# {r.claim_id}: {r.status} ({r.notes})")
    if columns == REPORT_COLUMNS:
        failed = sum(r.status == verify.FAIL for r in reports)
        lines.append(f"# {len(reports)} reports, {failed} failed")
    return "\n".join(lines) + "\n"


def emit(text: str, destination: str) -> None:
    if destination in (None, "-"):
        sys.stdout.write(text)
        return
    with open(destination, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        meta, columns, rows, reports, code = COMMANDS[args.command](args)
        emit(render(meta, columns, rows, reports, args.format), args.output)
        return code
    except UsageError as exc:
        print(f"ptdirac: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"ptdirac: no convergence: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (DomainError, CapacityError) as exc:
        print(f"ptdirac: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"ptdirac: I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PtDiracError as exc:
        print(f"ptdirac: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
