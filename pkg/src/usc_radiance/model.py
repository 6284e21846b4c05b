"""System parameters and the lab-frame Hamiltonian.

The model is one or two identical qubits coupled to a single resonator mode

    H0 = omega_c a^dag a + omega_sigma sum_j sigma+_j sigma-_j
         + lam (a + a^dag) sum_j (cos(theta) sigma_z^j - sin(theta) sigma_x^j)

with an optional classical drive  Omega cos(omega_d t) sum_j sigma_x^j.
The qubit splitting omega_sigma = 1 defines the unit of energy; all other
frequencies and rates are quoted in these units.

At theta = pi/2 the coupling is purely transverse and H0 conserves the
excitation-number parity  Pi = exp[i pi (a^dag a + sum_j sigma+_j sigma-_j)];
any theta < pi/2 mixes the parity sectors through the sigma_z channel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .operators import annihilation, embed, sigma_x, sigma_z

__all__ = [
    "ParameterError",
    "SystemParams",
    "build_h0",
    "build_drive_operator",
    "parity_operator",
    "parity_defect",
]

# Levels kept by the "auto" cut: the full dressed ladder when it is small,
# otherwise the lowest 24 (enough for weak-drive dynamics near the first
# doublets, and it keeps the master-equation size fixed while n_max grows).
LEVEL_CUT_AUTO = 24
LEVEL_CUT_MIN = 12


class ParameterError(ValueError):
    """A physically or numerically invalid parameter combination."""


@dataclass(frozen=True)
class SystemParams:
    """Parameters of the driven, damped qubit-resonator system.

    Frequencies and rates are in units of the qubit splitting. ``level_cut``
    selects how many dressed levels the master equation retains: a positive
    integer, ``"all"``, or ``"auto"`` (all levels up to :data:`LEVEL_CUT_AUTO`,
    then capped there).
    """

    lam: float
    theta: float = math.pi / 2
    n_qubits: int = 2
    omega_c: float = 1.0
    omega_sigma: float = 1.0
    Omega: float = 0.0
    omega_d: float = 1.0
    kappa: float = 0.01
    gamma_sigma: float = 0.01
    n_max: int = 10
    level_cut: int | str = "auto"
    drop_sigma_z_coupling: bool = False

    def __post_init__(self) -> None:
        if self.omega_sigma != 1.0:
            raise ParameterError(
                "omega_sigma defines the unit of energy and must be 1.0"
            )
        if self.n_qubits not in (1, 2):
            raise ParameterError(f"n_qubits must be 1 or 2, got {self.n_qubits}")
        if self.lam < 0:
            raise ParameterError(f"lam must be >= 0, got {self.lam}")
        if not 0 < self.theta <= math.pi / 2 + 1e-12:
            raise ParameterError(f"theta must lie in (0, pi/2], got {self.theta}")
        if self.omega_c <= 0:
            raise ParameterError(f"omega_c must be positive, got {self.omega_c}")
        if self.Omega < 0:
            raise ParameterError(f"Omega must be >= 0, got {self.Omega}")
        if self.Omega > 0 and self.omega_d <= 0:
            raise ParameterError("omega_d must be positive when the drive is on")
        if self.kappa < 0 or self.gamma_sigma < 0:
            raise ParameterError("decay rates must be >= 0")
        if self.n_max < 4:
            raise ParameterError(f"n_max must be >= 4, got {self.n_max}")
        cut = self.level_cut
        if isinstance(cut, str):
            if cut not in ("all", "auto"):
                raise ParameterError(f"level_cut must be int, 'all' or 'auto', got {cut!r}")
        else:
            if cut > self.total_levels:
                raise ParameterError(
                    f"level_cut {cut} exceeds the {self.total_levels} available levels"
                )
            if cut < min(LEVEL_CUT_MIN, self.total_levels):
                raise ParameterError(
                    f"level_cut {cut} is below the minimum of {LEVEL_CUT_MIN}"
                )

    @property
    def dims(self) -> tuple[int, ...]:
        return (self.n_max + 1,) + (2,) * self.n_qubits

    @property
    def total_levels(self) -> int:
        return (self.n_max + 1) * 2**self.n_qubits

    def resolved_level_cut(self) -> int:
        if self.level_cut == "all":
            return self.total_levels
        if self.level_cut == "auto":
            return min(self.total_levels, LEVEL_CUT_AUTO)
        return int(self.level_cut)

    def with_(self, **changes) -> "SystemParams":
        """Return a copy with the given fields replaced."""
        return replace(self, **changes)


def build_h0(params: SystemParams) -> np.ndarray:
    """Undriven Hamiltonian in the bare product basis (photon slot first).

    With ``drop_sigma_z_coupling`` the longitudinal ``cos(theta) sigma_z``
    channel is removed while ``sin(theta)`` keeps its value, which isolates
    the effect of the parity-breaking term.
    """
    dims = params.dims
    a = embed(annihilation(params.n_max), 0, dims)
    x_res = a + a.conj().T
    h = params.omega_c * (a.conj().T @ a)
    cos_part = 0.0 if params.drop_sigma_z_coupling else math.cos(params.theta)
    if abs(cos_part) < 1e-15:
        # theta = pi/2 is only representable to rounding; the longitudinal
        # channel is exactly absent there by construction
        cos_part = 0.0
    for j in range(params.n_qubits):
        sxj = embed(sigma_x(), 1 + j, dims)
        szj = embed(sigma_z(), 1 + j, dims)
        # sigma+ sigma- = (1 + sigma_z) / 2
        h += params.omega_sigma * 0.5 * (np.eye(len(h)) + szj)
        h += params.lam * x_res @ (cos_part * szj - math.sin(params.theta) * sxj)
    return h


def build_drive_operator(params: SystemParams) -> np.ndarray:
    """Operator the classical drive couples to: ``sum_j sigma_x^j``."""
    dims = params.dims
    out = np.zeros((params.total_levels, params.total_levels), dtype=complex)
    for j in range(params.n_qubits):
        out += embed(sigma_x(), 1 + j, dims)
    return out


def parity_operator(params: SystemParams) -> np.ndarray:
    """Excitation-number parity ``exp[i pi (a^dag a + sum_j sigma+_j sigma-_j)]``.

    Diagonal with entries +-1 in the bare basis.
    """
    dims = params.dims
    n_exc = np.zeros(params.total_levels)
    n_exc += np.diag(embed(np.diag(np.arange(params.n_max + 1.0)).astype(complex), 0, dims)).real
    for j in range(params.n_qubits):
        n_exc += np.diag(embed(np.diag([0.0, 1.0]).astype(complex), 1 + j, dims)).real
    return np.diag(np.where(np.round(n_exc).astype(int) % 2 == 0, 1.0, -1.0)).astype(complex)


def parity_defect(params: SystemParams) -> float:
    """Normalized parity violation ``max|[H0, Pi]| / max|H0|``.

    Zero (to rounding) exactly when ``theta = pi/2`` or the longitudinal
    channel is dropped; grows with ``lam cos(theta)`` otherwise.
    """
    h = build_h0(params)
    pi_op = parity_operator(params)
    comm = h @ pi_op - pi_op @ h
    return float(np.abs(comm).max() / np.abs(h).max())
