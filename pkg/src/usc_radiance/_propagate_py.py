"""NumPy reference implementation of the RK4 period propagator.

Semantics are identical to the compiled kernel in ``_propagate.pyx``; this
module is selected when the extension is unavailable or explicitly disabled.
"""

from __future__ import annotations

import math

import numpy as np


def propagate_period(
    l0: np.ndarray,
    lv: np.ndarray,
    y: np.ndarray,
    t0: float,
    dt: float,
    nsteps: int,
    omega_d: float,
    Omega: float,
    w_obs: np.ndarray,
    rho_acc: np.ndarray,
) -> float:
    """Advance ``y`` through one drive period with fixed-step RK4.

    Integrates ``y' = (l0 + Omega cos(omega_d t) lv) y`` over ``nsteps``
    steps of size ``dt`` starting at ``t0``.  ``y`` is updated in place;
    ``rho_acc`` receives the trapezoid average of ``y`` over the period.
    Returns the trapezoid average of ``Re(w_obs . y)``.
    """

    def rhs(t: float, state: np.ndarray) -> np.ndarray:
        out = l0 @ state
        coeff = Omega * math.cos(omega_d * t)
        if coeff != 0.0:
            out += coeff * (lv @ state)
        return out

    obs_acc = 0.5 * float(np.real(w_obs @ y))
    rho_acc[:] = 0.5 * y
    for i in range(nsteps):
        t = t0 + i * dt
        k1 = rhs(t, y)
        k2 = rhs(t + 0.5 * dt, y + (0.5 * dt) * k1)
        k3 = rhs(t + 0.5 * dt, y + (0.5 * dt) * k2)
        k4 = rhs(t + dt, y + dt * k3)
        y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        weight = 0.5 if i == nsteps - 1 else 1.0
        obs_acc += weight * float(np.real(w_obs @ y))
        rho_acc += weight * y
    rho_acc /= nsteps
    return obs_acc / nsteps
