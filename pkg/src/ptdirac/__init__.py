"""Dirac particles with position-dependent mass in complexified scalar potentials.

Model catalog, closed-form spectra, finite-difference operators, a
self-contained complex eigensolver, and numerical verification of the
analytic claims (spectra, SUSY pairing, crossings, PT symmetry,
pseudo-Hermitian intertwining).
"""

__version__ = "0.1.0"

from .errors import CapacityError, ConvergenceError, DomainError, PtDiracError, ZeroModeError
from .models import (
    Branch,
    CustomModel,
    OscillatorParams,
    PeriodicPseudo,
    QuasiParity,
    ScarfII,
    ScarfParams,
    ShiftedOscillator,
    compose_mass,
    constant_mass,
    generator_to_model,
    partner_potential,
    pseudo_generator,
    superpotential,
)
from .discretize import Grid, assemble_dirac, assemble_intertwiner, assemble_schrodinger, make_grid
from .eigen import Spectrum, eigenvalues, eigenvector, hermitian_check
from .verify import VerificationReport, match_spectra

__all__ = [
    "__version__",
    "Branch",
    "CapacityError",
    "ConvergenceError",
    "CustomModel",
    "DomainError",
    "Grid",
    "OscillatorParams",
    "PeriodicPseudo",
    "PtDiracError",
    "QuasiParity",
    "ScarfII",
    "ScarfParams",
    "ShiftedOscillator",
    "Spectrum",
    "VerificationReport",
    "ZeroModeError",
    "assemble_dirac",
    "assemble_intertwiner",
    "assemble_schrodinger",
    "compose_mass",
    "constant_mass",
    "eigenvalues",
    "eigenvector",
    "generator_to_model",
    "hermitian_check",
    "make_grid",
    "match_spectra",
    "partner_potential",
    "pseudo_generator",
    "superpotential",
]
