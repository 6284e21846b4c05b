"""Dressed eigenbasis of the qubit-resonator system and its jump operators.

Emission in the ultrastrong-coupling regime must be described in the dressed
basis: the jump operators are the positive-frequency parts of the coupling
operators, built from matrix elements between exact eigenstates,

    X+ = sum_{E_m > E_n} <phi_n| (a + a^dag) |phi_m>  |phi_n><phi_m|

and likewise D+_j from sigma_x^j for each qubit.  "Positive frequency" is
decided with a degeneracy tolerance: pairs with |E_m - E_n| <= deg_tol do
not contribute.  In the ascending energy order these operators are strictly
upper triangular, so they only ever move population downward.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .model import SystemParams, build_h0
from .operators import annihilation, bare_ket, eig_hermitian, embed, sigma_x

__all__ = [
    "DEG_TOL",
    "DressedBasis",
    "diagonalize",
    "DoubletReport",
    "bright_doublet_overlaps",
    "TransitionTable",
    "transition_table",
]

DEG_TOL = 1e-9


@dataclass(frozen=True)
class DressedBasis:
    """Eigen-decomposition of H0 plus dressed-basis jump operators.

    ``energies`` and ``states`` cover the full truncated Hilbert space;
    ``x_plus`` and ``d_plus`` are restricted to the ``level_cut`` lowest
    levels actually retained by the master equation.
    """

    params: SystemParams
    energies: np.ndarray
    states: np.ndarray
    level_cut: int
    x_plus: np.ndarray
    d_plus: list[np.ndarray] = field(default_factory=list)
    deg_tol: float = DEG_TOL

    @property
    def gaps(self) -> np.ndarray:
        """Transition energies E_n - E_0 for the retained levels."""
        return self.energies[: self.level_cut] - self.energies[0]

    def project(self, op: np.ndarray) -> np.ndarray:
        """Matrix of a bare-basis operator in the retained dressed levels."""
        s = self.states[:, : self.level_cut]
        return s.conj().T @ op @ s


def _positive_frequency_part(
    op_bare: np.ndarray, states: np.ndarray, energies: np.ndarray, cut: int, deg_tol: float
) -> np.ndarray:
    full = states.conj().T @ op_bare @ states
    keep = (energies[None, :] - energies[:, None]) > deg_tol
    return np.where(keep, full, 0.0)[:cut, :cut]


def diagonalize(params: SystemParams, deg_tol: float = DEG_TOL) -> DressedBasis:
    """Diagonalize H0 and assemble the dressed jump operators.

    The eigenvector phase convention (largest component real positive) makes
    the matrix elements reproducible; observables do not depend on it.
    """
    dec = eig_hermitian(build_h0(params))
    cut = params.resolved_level_cut()
    dims = params.dims
    a = embed(annihilation(params.n_max), 0, dims)
    x_plus = _positive_frequency_part(
        a + a.conj().T, dec.vectors, dec.values, cut, deg_tol
    )
    d_plus = [
        _positive_frequency_part(
            embed(sigma_x(), 1 + j, dims), dec.vectors, dec.values, cut, deg_tol
        )
        for j in range(params.n_qubits)
    ]
    return DressedBasis(
        params=params,
        energies=dec.values,
        states=dec.vectors,
        level_cut=cut,
        x_plus=x_plus,
        d_plus=d_plus,
        deg_tol=deg_tol,
    )


@dataclass(frozen=True)
class DoubletReport:
    """Overlap of the first excited doublet with its weak-coupling form."""

    degenerate: bool
    overlap_lower: float | None = None
    overlap_upper: float | None = None
    gap_lower: float | None = None
    gap_upper: float | None = None


def bright_doublet_overlaps(basis: DressedBasis) -> DoubletReport:
    """Compare levels 1 and 3 against the symmetric one-excitation polaritons.

    For two resonant qubits at theta = pi/2 and weak coupling, the bright
    one-excitation eigenstates approach

        (|e,g,0> + |g,e,0>) / 2  +-  |g,g,1> / sqrt(2)

    (labels: qubit 1, qubit 2, photon number).  Returns the squared overlaps
    of the computed levels 1 and 3 with these kets, or flags the degenerate
    lam = 0 case where the level ordering inside the triplet is arbitrary.
    """
    p = basis.params
    if p.n_qubits != 2:
        raise ValueError("the doublet comparison is defined for two qubits")
    if abs(p.omega_c - p.omega_sigma) > 1e-12:
        raise ValueError("the doublet comparison assumes omega_c = omega_sigma")
    if p.lam == 0.0:
        return DoubletReport(degenerate=True)
    dims = p.dims
    sym = (bare_ket(dims, 0, "eg") + bare_ket(dims, 0, "ge")) / 2.0
    phot = bare_ket(dims, 1, "gg") / np.sqrt(2.0)
    lower = sym + phot
    upper = sym - phot
    e = basis.energies
    return DoubletReport(
        degenerate=False,
        overlap_lower=float(np.abs(lower.conj() @ basis.states[:, 1]) ** 2),
        overlap_upper=float(np.abs(upper.conj() @ basis.states[:, 3]) ** 2),
        gap_lower=float(e[1] - e[0]),
        gap_upper=float(e[3] - e[0]),
    )


@dataclass(frozen=True)
class TransitionTable:
    """Transition energies and emission matrix elements between retained levels.

    Columns: lower level n, upper level m, E_m - E_n, |X_nm|, |D1_nm|,
    |D2_nm| (zero column for a single qubit).  Degenerate pairs are omitted.
    """

    n: np.ndarray
    m: np.ndarray
    freq: np.ndarray
    abs_x: np.ndarray
    abs_d1: np.ndarray
    abs_d2: np.ndarray

    def __len__(self) -> int:
        return len(self.freq)

    def rows(self):
        for i in range(len(self)):
            yield (
                int(self.n[i]),
                int(self.m[i]),
                float(self.freq[i]),
                float(self.abs_x[i]),
                float(self.abs_d1[i]),
                float(self.abs_d2[i]),
            )


def transition_table(basis: DressedBasis) -> TransitionTable:
    cut = basis.level_cut
    e = basis.energies[:cut]
    d1 = basis.d_plus[0]
    d2 = basis.d_plus[1] if len(basis.d_plus) > 1 else np.zeros_like(d1)
    ns, ms, freqs, xs, d1s, d2s = [], [], [], [], [], []
    for n in range(cut):
        for m in range(n + 1, cut):
            gap = e[m] - e[n]
            if gap <= basis.deg_tol:
                continue
            ns.append(n)
            ms.append(m)
            freqs.append(gap)
            xs.append(abs(basis.x_plus[n, m]))
            d1s.append(abs(d1[n, m]))
            d2s.append(abs(d2[n, m]))
    return TransitionTable(
        n=np.array(ns, dtype=int),
        m=np.array(ms, dtype=int),
        freq=np.array(freqs),
        abs_x=np.array(xs),
        abs_d1=np.array(d1s),
        abs_d2=np.array(d2s),
    )
