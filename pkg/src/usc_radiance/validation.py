"""Fast invariant suite over the whole pipeline.

Used by the ``validate`` CLI subcommand and by the acceptance tests.  Each
check is independent and reports a measured defect against its bound, so a
failure message states what was violated and by how much.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dressed import diagonalize
from .floquet import FloquetSolver
from .liouville import build_liouvillian, trace_functional
from .model import SystemParams, parity_defect
from .observables import emission_number_operator, photon_number
from .scenarios import radiance_curve

__all__ = ["CheckResult", "run_property_suite"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _reference_params() -> SystemParams:
    return SystemParams(lam=0.1, theta=math.pi / 2, Omega=0.001, omega_d=0.853)


def run_property_suite() -> list[CheckResult]:
    """Run every invariant check; returns one result per check."""
    checks: list[CheckResult] = []
    params = _reference_params()
    basis = diagonalize(params.with_(n_qubits=2))
    liou = build_liouvillian(basis)

    # the trace functional must annihilate both generator parts
    tr = trace_functional(liou.n_levels)
    defect = max(float(np.abs(tr @ liou.l0).max()), float(np.abs(tr @ liou.lv).max()))
    checks.append(
        CheckResult(
            "trace_annihilation",
            defect <= 1e-10,
            f"max |tr . L| = {defect:.3e} (bound 1e-10)",
        )
    )

    # jump operators only lower: the ground state is annihilated
    ground_amp = float(np.abs(basis.x_plus[:, 0]).max())
    for d in basis.d_plus:
        ground_amp = max(ground_amp, float(np.abs(d[:, 0]).max()))
    checks.append(
        CheckResult(
            "jump_annihilates_ground",
            ground_amp == 0.0,
            f"max |O+ applied to ground| = {ground_amp:.3e} (must be exactly 0)",
        )
    )

    # driven steady state satisfies the density-matrix invariants
    solver = FloquetSolver(liou)
    state = solver.solve(omega_d=params.omega_d, Omega=params.Omega)
    report = state.validate()
    herm = report["hermiticity_defect"]
    trace_dev = report["trace_defect"]
    min_eig = report["min_eigenvalue"]
    checks.append(
        CheckResult(
            "steady_state_hermitian",
            herm <= 1e-10,
            f"hermiticity defect {herm:.3e} (bound 1e-10)",
        )
    )
    checks.append(
        CheckResult(
            "steady_state_trace",
            trace_dev <= 1e-8,
            f"trace defect {trace_dev:.3e} (bound 1e-8)",
        )
    )
    checks.append(
        CheckResult(
            "steady_state_positive",
            min_eig >= -1e-6,
            f"lowest eigenvalue {min_eig:.3e} (floor -1e-6)",
        )
    )

    # without drive the unique fixed point is the dressed ground state
    undriven = solver.solve(Omega=0.0)
    expected = np.zeros_like(undriven.rho0)
    expected[0, 0] = 1.0
    ground_dev = float(np.abs(undriven.rho0 - expected).max())
    checks.append(
        CheckResult(
            "undriven_fixed_point",
            ground_dev <= 1e-8,
            f"max |rho - ground projector| = {ground_dev:.3e} (bound 1e-8)",
        )
    )

    # parity is conserved for transverse coupling and broken away from it
    defect_transverse = parity_defect(params.with_(n_qubits=2))
    defect_tilted = parity_defect(params.with_(n_qubits=2, theta=math.pi / 6))
    checks.append(
        CheckResult(
            "parity_defect_transverse",
            defect_transverse <= 1e-12 and defect_tilted > 1e-3,
            f"defect {defect_transverse:.3e} at theta=pi/2 (bound 1e-12), "
            f"{defect_tilted:.3e} at theta=pi/6 (must exceed 1e-3)",
        )
    )

    # weak drive: emission scales as Omega^2 (amplitudes small enough that
    # the Omega^4 correction sits well below the bound)
    number_op = emission_number_operator(basis.x_plus)
    low = solver.solve(omega_d=0.88, Omega=0.0002).expectation(number_op)
    high = solver.solve(omega_d=0.88, Omega=0.0004).expectation(number_op)
    ratio_dev = abs(high / (4.0 * low) - 1.0)
    checks.append(
        CheckResult(
            "linear_response_scaling",
            ratio_dev <= 0.01,
            f"|n(2 Omega) / 4 n(Omega) - 1| = {ratio_dev:.3e} (bound 0.01)",
        )
    )

    # photon-space truncation: witness stable under n_max -> n_max + 4
    probe = np.array([0.853, 0.9, 1.137])
    ref = radiance_curve(params, probe, escalate_k=False)
    bumped = radiance_curve(params.with_(n_max=params.n_max + 4), probe, escalate_k=False)
    shift = max(
        abs(a.witness - b.witness) if np.isfinite(a.witness) and np.isfinite(b.witness)
        else math.inf
        for a, b in zip(ref, bumped)
    )
    checks.append(
        CheckResult(
            "truncation_stability",
            shift <= 1e-4,
            f"max witness shift {shift:.3e} under n_max + 4 (bound 1e-4)",
        )
    )

    # sanity: emission number is nonnegative for an arbitrary valid state
    rng = np.random.default_rng(7)
    m = liou.n_levels
    raw = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
    rho = raw @ raw.conj().T
    rho /= np.trace(rho)
    value = photon_number(rho, basis.x_plus)
    checks.append(
        CheckResult(
            "emission_number_nonnegative",
            value >= 0.0,
            f"<X- X+> = {value:.3e} on a random density matrix (must be >= 0)",
        )
    )
    return checks
