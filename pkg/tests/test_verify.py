import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptdirac import verify
from ptdirac.discretize import assemble_dirac, assemble_schrodinger, grid_for, make_grid
from ptdirac.eigen import Spectrum, eigenvector
from ptdirac.errors import DomainError, ZeroModeError
from ptdirac.models import (
    OscillatorParams,
    PeriodicPseudo,
    ScarfII,
    ScarfParams,
    ShiftedOscillator,
    constant_mass,
    pseudo_generator,
    pseudo_generator_derivative,
)

SCARF = ScarfII(ScarfParams(2.5, 1.5))
SCARF_GRID = make_grid(-15, 15, 3000)


def test_match_spectra_constructed_example():
    numeric = Spectrum(np.array([0.001, 0.999, 4.002], dtype=complex))
    result = verify.match_spectra(numeric, [0.0, 1.0, 4.0], 5e-3, cutoff=10)
    assert len(result.pairs) == 3 and result.complete and not result.unmatched_numeric
    assert result.max_deviation == pytest.approx(0.002)


def test_match_spectra_orphans_and_cutoff():
    result = verify.match_spectra([0.0, 1.5, 9.0, 20.0], [0.0, 1.0, 9.0, 20.0], 1e-3, cutoff=10)
    assert result.unmatched_analytic == [1.0]
    assert [complex(v) for v in result.unmatched_numeric] == [1.5]
    with pytest.raises(DomainError):
        verify.match_spectra([], [1.0], 1e-3, 10)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_match_spectra_ignores_input_order(seed):
    rng = np.random.default_rng(seed)
    analytic = np.arange(8.0)
    numeric = analytic + rng.uniform(-4e-3, 4e-3, 8) + 1j * rng.uniform(-1e-4, 1e-4, 8)
    numeric = np.concatenate([numeric, rng.uniform(0, 8, 3)])
    a = verify.match_spectra(numeric, analytic, 5e-3, 7.5)
    b = verify.match_spectra(rng.permutation(numeric), analytic, 5e-3, 7.5)
    assert a == b


def test_match_is_injective():
    result = verify.match_spectra([1.0, 1.0005], [1.0], 1e-2, 5)
    assert len(result.pairs) == 1 and len(result.unmatched_numeric) == 1


def test_scarf_susy_zero_mode_sits_on_plus_branch():
    # V_omega = M^2 - omega M' carries the normalizable zero mode on omega = +1
    plus = verify.schrodinger_spectrum(SCARF, 1, SCARF_GRID).eigenvalues
    minus = verify.schrodinger_spectrum(SCARF, -1, SCARF_GRID).eigenvalues
    assert np.allclose(plus[:4].real, [0, 7, 12, 15], atol=5e-3)
    assert np.allclose(minus[:3].real, [7, 12, 15], atol=5e-3)
    report = verify.susy_report(SCARF, SCARF_GRID, 5e-3)
    assert "residue(+1)=['-8.5" in report.notes and "residue(-1)=[]" in report.notes


def test_oscillator_susy_report_passes():
    spec = ShiftedOscillator(OscillatorParams(2.0, 0.25, 1.0))
    report = verify.susy_report(spec, grid_for(spec, 3000), 5e-3)
    assert report.passed
    assert len(report.measured) == 1 and report.measured[0] <= 5e-3


def test_constant_mass_susy_residue_is_empty():
    report = verify.susy_report(constant_mass(1.0), make_grid(-5, 5, 300), 5e-3, cutoff=30)
    assert report.passed and report.measured == []


def test_pt_residual_examples():
    grid = make_grid(-15, 15, 2001)
    for w in (1, -1):
        assert verify.pt_residual(SCARF, w, grid) <= 1e-12
        assert verify.pt_residual(PeriodicPseudo(), w, make_grid(-math.pi, math.pi, 2001)) <= 1e-12
    g = make_grid(-1, 1, 2001)
    value = verify.pt_residual(lambda x: x + 1j, 1, g)
    assert value == pytest.approx(2 * math.sqrt(1 + g.points.max() ** 2), rel=1e-12)
    with pytest.raises(DomainError):
        verify.pt_residual(SCARF, 1, make_grid(-1, 2, 100))


def test_intertwining_constant_generator_is_exact():
    grid = make_grid(-math.pi, math.pi, 400)
    result = verify.intertwining_residual(lambda x: np.full_like(x, 0.8), lambda x: np.zeros_like(x), 1, grid)
    assert result.raw <= 1e-9 and result.hermitian_defect <= 1e-9


@pytest.mark.parametrize("omega", [1, -1])
def test_intertwining_second_order_and_negative_control(omega):
    coarse = verify.intertwining_residual(
        pseudo_generator, pseudo_generator_derivative, omega, make_grid(-math.pi, math.pi, 500)
    )
    fine = verify.intertwining_residual(
        pseudo_generator, pseudo_generator_derivative, omega, make_grid(-math.pi, math.pi, 1000)
    )
    assert 3 <= coarse.raw / fine.raw <= 5
    assert math.log(coarse.raw / fine.raw) / math.log(coarse.spacing / fine.spacing) >= 1.5
    flipped = verify.intertwining_residual(
        pseudo_generator, pseudo_generator_derivative, omega, make_grid(-math.pi, math.pi, 500), flip_imaginary=True
    )
    assert flipped.raw > 1.0 and flipped.raw / coarse.raw >= 1e3


def test_spinor_reconstruction_both_signs():
    dirac = assemble_dirac(SCARF, SCARF_GRID, pinned=1)
    vec, lam, _ = eigenvector(dirac.pinned_square(), 7.0)
    energy = math.sqrt(lam.real)
    for sign in (1, -1):
        result = verify.spinor_reconstruct(vec, SCARF, sign * energy, 1, SCARF_GRID)
        assert result.residual <= 1e-4
        assert result.plus.shape[0] == 3000 and result.minus.shape[0] == 3001


def test_spinor_from_three_point_eigenvector_is_second_order():
    residuals = []
    for n in (750, 1500):
        grid = make_grid(-15, 15, n)
        vec, lam, _ = eigenvector(assemble_schrodinger(SCARF, 1, grid), 7.0)
        residuals.append(verify.spinor_reconstruct(vec, SCARF, math.sqrt(lam.real), 1, grid).residual)
    assert 3 <= residuals[0] / residuals[1] <= 5


def test_spinor_minus_branch_and_zero_mode():
    dirac = assemble_dirac(SCARF, SCARF_GRID, pinned=-1)
    vec, lam, _ = eigenvector(dirac.pinned_square(), 7.0)
    assert verify.spinor_reconstruct(vec, SCARF, -math.sqrt(lam.real), -1, SCARF_GRID).residual <= 1e-4
    with pytest.raises(ZeroModeError):
        verify.spinor_reconstruct(vec, SCARF, 0.0, -1, SCARF_GRID)


def test_periodic_eigenfunction_examples():
    assert abs(verify.periodic_eigenfunction(3, 1, math.pi)) <= 1e-12
    assert verify.periodic_eigenfunction(3, 1, 0.0) == pytest.approx(-7.0)
    assert abs(verify.periodic_eigenfunction(4, -1, -math.pi)) <= 1e-12


def test_wavefunction_residuals():
    fine = make_grid(-math.pi, math.pi, 2000)
    coarse = make_grid(-math.pi, math.pi, 1000)
    assert verify.wavefunction_residual(4, 1, fine) <= 1e-4
    ratio = verify.wavefunction_residual(5, 1, coarse) / verify.wavefunction_residual(5, 1, fine)
    assert 3 <= ratio <= 5
    for branch in (1, -1):
        assert verify.wavefunction_residual(3, branch, fine) <= 3e-4
    assert math.isnan(verify.wavefunction_residual(2, 1, fine))
    assert verify.wavefunction_residual(1, 1, fine) <= 1e-3


def test_dirac_pairing_free_and_periodic():
    free = verify.dirac_pairing_report(constant_mass(0.0), make_grid(-4, 4, 300), 1e-3, cutoff=20)
    assert free.passed
    periodic = verify.dirac_pairing_report(PeriodicPseudo(), make_grid(-math.pi, math.pi, 2000), 1e-3)
    assert periodic.passed
    assert any(abs(m) <= 1e-3 for m in periodic.measured)


def test_report_serialization_round_trip():
    report = verify.VerificationReport("x.y", verify.PASS, [1.0, 2.0], [1.0, 2.0], 1e-3, "note")
    text = json.dumps(report.as_dict(), sort_keys=True)
    assert verify.VerificationReport.from_dict(json.loads(text)) == report
    assert report.passed


def test_spectrum_report_for_periodic_model():
    report, match = verify.spectrum_report(PeriodicPseudo(), 1, make_grid(-math.pi, math.pi, 2000))
    assert report.passed and match.complete
    assert -1.3125 in [round(v.real, 4) for v in match.unmatched_numeric]
