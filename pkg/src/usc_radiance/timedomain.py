"""Brute-force time integration of the driven master equation.

This is the independent cross-check for the harmonic-balance solver: the
vectorized master equation is integrated with fixed-step RK4 from a chosen
initial state until the drive-period average of a monitored observable
stops changing.  Nothing here shares code with the Floquet path beyond the
Liouvillian itself.

The step size resolves both the drive period and the fastest coherent
oscillation in the spectrum; steadiness is declared when consecutive
period averages agree to a relative tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .liouville import LiouvillianSet, expectation_functional, trace_functional, unvec, vec

__all__ = ["TimeDomainError", "TimeDomainResult", "evolve_to_steady"]

STEPS_PER_CYCLE = 40
PERIOD_TOL = 1e-8
TRACE_TOL = 1e-8
NEGATIVITY_TOL = 1e-6


class TimeDomainError(RuntimeError):
    pass


@dataclass(frozen=True)
class TimeDomainResult:
    """Period-averaged steady state found by direct integration."""

    rho_avg: np.ndarray
    observable_avg: float
    periods: int
    converged: bool
    last_rel_change: float
    period_history: np.ndarray
    dt: float
    steps_per_period: int
    trace_defect: float

    def validate(self, negativity_tol: float = NEGATIVITY_TOL) -> dict[str, float]:
        rho = self.rho_avg
        herm = float(np.abs(rho - rho.conj().T).max())
        min_eig = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min())
        report = {
            "hermiticity_defect": herm,
            "min_eigenvalue": min_eig,
            "trace_defect": self.trace_defect,
        }
        if self.trace_defect > TRACE_TOL:
            raise TimeDomainError(f"trace drifted: {report}")
        if herm > 1e-8 or min_eig < -negativity_tol:
            raise TimeDomainError(f"density-matrix invariants violated: {report}")
        return report


def _max_frequency(liouvillian: LiouvillianSet) -> float:
    # the diagonal of L0 carries -i (E_i - E_j); its largest imaginary part
    # is the full spectral spread, the fastest coherent oscillation present
    spread = float(np.abs(np.imag(np.diag(liouvillian.l0))).max())
    return max(spread, 1e-12)


def default_time_step(liouvillian: LiouvillianSet, omega_d: float) -> float:
    """Step small enough for the drive and the fastest system oscillation."""
    fastest = max(omega_d, _max_frequency(liouvillian))
    return 2.0 * math.pi / fastest / STEPS_PER_CYCLE


def evolve_to_steady(
    liouvillian: LiouvillianSet,
    t_end: float,
    dt: float | None = None,
    observable: np.ndarray | None = None,
    rho_init: np.ndarray | None = None,
    period_tol: float = PERIOD_TOL,
    min_periods: int = 3,
) -> TimeDomainResult:
    """Integrate until the period-averaged observable settles.

    ``observable`` is the matrix whose period-averaged expectation value is
    monitored (required; radiance work monitors the emission number
    operator).  ``rho_init`` defaults to the projector on the lowest
    retained level.  Raises :class:`TimeDomainError` if the average still
    moves by more than ``period_tol`` (relative) at ``t_end``.
    """
    if observable is None:
        raise ValueError("an observable matrix to monitor is required")
    n = liouvillian.n_levels
    omega_d = liouvillian.omega_d
    Omega = liouvillian.Omega
    if Omega > 0 and omega_d <= 0:
        raise ValueError("omega_d must be positive when the drive is on")
    period = 2.0 * math.pi / omega_d if omega_d > 0 else 2.0 * math.pi
    if dt is None:
        dt = default_time_step(liouvillian, omega_d)
    elif dt <= 0:
        raise ValueError("dt must be positive")
    steps = max(1, math.ceil(period / dt))
    dt = period / steps

    if rho_init is None:
        rho_init = np.zeros((n, n), dtype=complex)
        rho_init[0, 0] = 1.0
    y = vec(rho_init).astype(complex)
    trace_probe_idx = np.arange(n) * (n + 1)
    if abs(y[trace_probe_idx].sum() - 1.0) > 1e-12:
        raise ValueError("initial state must have unit trace")

    l0 = np.asfortranarray(liouvillian.l0)
    lv = np.asfortranarray(liouvillian.lv)
    w_obs = np.ascontiguousarray(expectation_functional(observable))
    rho_acc = np.zeros(n * n, dtype=complex)

    max_periods = max(min_periods, int(math.floor(t_end / period)))
    history = []
    previous = None
    rel_change = math.inf
    converged = False
    periods_run = 0
    obs_scale = 0.0
    for p in range(max_periods):
        obs_avg = kernels.propagate_period(
            l0, lv, y, p * period, dt, steps, omega_d, Omega, w_obs, rho_acc
        )
        history.append(obs_avg)
        periods_run = p + 1
        # Normalise by the largest average seen so far: a plain two-point
        # relative change never settles when the limit is zero (pure decay
        # shrinks by a fixed factor per period).
        obs_scale = max(obs_scale, abs(obs_avg))
        if previous is not None:
            rel_change = abs(obs_avg - previous) / max(obs_scale, 1e-300)
            if rel_change < period_tol and periods_run >= min_periods:
                converged = True
                break
        previous = obs_avg
        trace_defect = abs(y[trace_probe_idx].sum() - 1.0)
        if trace_defect > TRACE_TOL:
            raise TimeDomainError(
                f"trace drifted to defect {trace_defect:.3e} after {periods_run} periods"
            )

    if not converged:
        raise TimeDomainError(
            f"period average still moving (rel change {rel_change:.3e} > "
            f"{period_tol:.1e}) after {periods_run} periods (t_end={t_end:g})"
        )

    rho_avg = unvec(rho_acc, n)
    result = TimeDomainResult(
        rho_avg=rho_avg,
        observable_avg=float(history[-1]),
        periods=periods_run,
        converged=converged,
        last_rel_change=float(rel_change),
        period_history=np.array(history),
        dt=dt,
        steps_per_period=steps,
        trace_defect=float(abs(np.trace(rho_avg) - 1.0)),
    )
    result.validate()
    return result
