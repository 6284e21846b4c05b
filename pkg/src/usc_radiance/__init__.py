"""Collective radiance of driven qubits ultrastrongly coupled to a resonator.

The pipeline: diagonalize the coupled qubit-resonator Hamiltonian, build
dressed-basis jump operators, assemble the vectorized master equation,
solve for the periodic steady state under a classical drive (harmonic
balance, cross-checked by brute-force time integration), and compare one-
against two-qubit emission through the radiance witness
R = (n_2 - 2 n_1) / (2 n_1).
"""

from ._version import VERSION as __version__
from .dressed import (
    DressedBasis,
    bright_doublet_overlaps,
    diagonalize,
    transition_table,
)
from .floquet import FloquetSolver, FloquetSteadyState, floquet_steady_state
from .liouville import LiouvillianSet, build_liouvillian
from .model import (
    SystemParams,
    build_drive_operator,
    build_h0,
    parity_defect,
    parity_operator,
)
from .observables import (
    RadiancePoint,
    classify,
    find_extrema,
    photon_flux,
    photon_number,
    radiance_witness,
)
from .scenarios import (
    Axis,
    SweepSpec,
    SweepResult,
    radiance_curve,
    run_scenario,
)
from .timedomain import TimeDomainResult, evolve_to_steady

__all__ = [
    "__version__",
    "SystemParams",
    "build_h0",
    "build_drive_operator",
    "parity_operator",
    "parity_defect",
    "DressedBasis",
    "diagonalize",
    "bright_doublet_overlaps",
    "transition_table",
    "LiouvillianSet",
    "build_liouvillian",
    "FloquetSolver",
    "FloquetSteadyState",
    "floquet_steady_state",
    "TimeDomainResult",
    "evolve_to_steady",
    "RadiancePoint",
    "photon_number",
    "photon_flux",
    "radiance_witness",
    "classify",
    "find_extrema",
    "Axis",
    "SweepSpec",
    "SweepResult",
    "radiance_curve",
    "run_scenario",
]
