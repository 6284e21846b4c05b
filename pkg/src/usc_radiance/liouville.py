"""Vectorized master equation in the dressed basis.

The density matrix is column-stacked, ``vec(rho) = rho.reshape(-1, order='F')``,
so that ``vec(A rho B) = (B^T kron A) vec(rho)``.  The master equation

    d rho / dt = i [rho, H] + kappa D[X+] rho + gamma_sigma sum_j D[D+_j] rho
    D[O] rho = (2 O rho O^dag - rho O^dag O - O^dag O rho) / 2

then becomes ``d vec(rho) / dt = (L0 + Omega cos(omega_d t) LV) vec(rho)``
with a time-independent part L0 (Hamiltonian plus dissipators) and the
drive part LV from the dressed drive operator.  H is diagonal (the dressed
energies), and the flat rates kappa, gamma_sigma multiply each dissipator
as printed above, with no per-transition frequency weighting.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dressed import DressedBasis
from .model import SystemParams, build_drive_operator

__all__ = [
    "vec",
    "unvec",
    "trace_functional",
    "expectation_functional",
    "dissipator_matrix",
    "commutator_matrix",
    "assemble_liouvillian",
    "LiouvillianSet",
    "build_liouvillian",
]


def vec(rho: np.ndarray) -> np.ndarray:
    """Column-stack a matrix."""
    return np.asarray(rho, dtype=complex).reshape(-1, order="F")


def unvec(v: np.ndarray, n: int | None = None) -> np.ndarray:
    """Inverse of :func:`vec`."""
    v = np.asarray(v)
    if n is None:
        n = int(round(np.sqrt(v.size)))
    if n * n != v.size:
        raise ValueError(f"vector of length {v.size} is not a stacked {n} x {n} matrix")
    return v.reshape(n, n, order="F")


def trace_functional(n: int) -> np.ndarray:
    """Row vector t with ``t @ vec(rho) = tr(rho)``."""
    t = np.zeros(n * n, dtype=complex)
    t[np.arange(n) * (n + 1)] = 1.0
    return t


def expectation_functional(op: np.ndarray) -> np.ndarray:
    """Row vector w with ``w @ vec(rho) = tr(op rho)``."""
    return np.asarray(op, dtype=complex).T.reshape(-1, order="F")


def dissipator_matrix(op: np.ndarray) -> np.ndarray:
    """Matrix of ``rho -> (2 O rho O^dag - rho O^dag O - O^dag O rho) / 2``."""
    op = np.asarray(op, dtype=complex)
    n = op.shape[0]
    eye = np.eye(n, dtype=complex)
    odo = op.conj().T @ op
    return np.kron(op.conj(), op) - 0.5 * np.kron(eye, odo) - 0.5 * np.kron(odo.T, eye)


def commutator_matrix(h: np.ndarray) -> np.ndarray:
    """Matrix of ``rho -> i [rho, H] = -i (H rho - rho H)``."""
    h = np.asarray(h, dtype=complex)
    eye = np.eye(h.shape[0], dtype=complex)
    return -1j * (np.kron(eye, h) - np.kron(h.T, eye))


def assemble_liouvillian(
    h: np.ndarray, jumps: list[tuple[float, np.ndarray]]
) -> np.ndarray:
    """General Lindblad generator from a Hamiltonian and (rate, operator) pairs."""
    l0 = commutator_matrix(h)
    for rate, op in jumps:
        l0 = l0 + rate * dissipator_matrix(op)
    return l0


@dataclass(frozen=True)
class LiouvillianSet:
    """Static and drive parts of the vectorized master equation.

    ``d vec(rho) / dt = (l0 + Omega cos(omega_d t) lv) vec(rho)`` on the
    ``n_levels`` retained dressed levels.
    """

    l0: np.ndarray
    lv: np.ndarray
    omega_d: float
    Omega: float
    n_levels: int

    @property
    def dim(self) -> int:
        return self.n_levels * self.n_levels


def build_liouvillian(basis: DressedBasis, params: SystemParams | None = None) -> LiouvillianSet:
    """Assemble L0 and LV for a dressed system.

    ``params`` defaults to the ones the basis was built from; passing a
    different set is an error (drive amplitude and frequency may differ,
    the Hamiltonian parameters may not).
    """
    if params is None:
        params = basis.params
    else:
        static_a = basis.params.with_(Omega=params.Omega, omega_d=params.omega_d)
        if static_a != params:
            raise ValueError("params disagree with the basis on static fields")
    cut = basis.level_cut
    h = np.diag(basis.energies[:cut]).astype(complex)
    jumps = [(params.kappa, basis.x_plus)]
    jumps += [(params.gamma_sigma, d) for d in basis.d_plus]
    l0 = assemble_liouvillian(h, jumps)
    # drive enters through the same dressed projection as the jump operators
    v = basis.project(build_drive_operator(params))
    lv = commutator_matrix(v)
    return LiouvillianSet(
        l0=l0, lv=lv, omega_d=params.omega_d, Omega=params.Omega, n_levels=cut
    )
