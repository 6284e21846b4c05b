"""Elementary operators and dense linear-algebra helpers.

Conventions used throughout the package:

* Composite Hilbert spaces are ordered photon first, then qubits:
  ``dims = (n_max + 1, 2, ..., 2)`` and the full matrix is the Kronecker
  product in that order (row-major / C ordering of the product basis).
* The qubit basis is ``(|g>, |e>)``, so ``sigma_minus = [[0, 1], [0, 0]]``
  and ``sigma_z = diag(-1, +1)``.
* All matrices are dense ``complex128`` NumPy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

__all__ = [
    "NonHermitianError",
    "SingularSystemError",
    "EigenDecomposition",
    "annihilation",
    "qubit_lowering",
    "qubit_raising",
    "sigma_x",
    "sigma_z",
    "embed",
    "bare_index",
    "bare_ket",
    "eig_hermitian",
    "solve_linear",
]

HERMITICITY_TOL = 1e-12


class NonHermitianError(ValueError):
    """An operator that must be Hermitian is not, beyond tolerance."""


class SingularSystemError(np.linalg.LinAlgError):
    """A linear system is singular or numerically rank deficient."""


def annihilation(n_max: int) -> np.ndarray:
    """Bosonic annihilation operator on a Fock space truncated at ``n_max``.

    Returns the ``(n_max + 1) x (n_max + 1)`` matrix with
    ``a[n-1, n] = sqrt(n)``.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    return np.diag(np.sqrt(np.arange(1.0, n_max + 1)), k=1).astype(complex)


def qubit_lowering() -> np.ndarray:
    """Qubit lowering operator ``|g><e|`` in the ``(|g>, |e>)`` basis."""
    return np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)


def qubit_raising() -> np.ndarray:
    return qubit_lowering().conj().T


def sigma_x() -> np.ndarray:
    return qubit_lowering() + qubit_raising()


def sigma_z() -> np.ndarray:
    # sigma_plus sigma_minus - sigma_minus sigma_plus = diag(-1, +1)
    return np.array([[-1.0, 0.0], [0.0, 1.0]], dtype=complex)


def embed(op: np.ndarray, slot: int, dims: tuple[int, ...]) -> np.ndarray:
    """Embed a single-subsystem operator into the composite space.

    ``slot`` indexes into ``dims`` (0 is the photon mode). Identity acts on
    every other factor.
    """
    if not 0 <= slot < len(dims):
        raise ValueError(f"slot {slot} out of range for dims {dims}")
    op = np.asarray(op, dtype=complex)
    if op.shape != (dims[slot], dims[slot]):
        raise ValueError(
            f"operator shape {op.shape} does not match dims[{slot}] = {dims[slot]}"
        )
    out = np.eye(1, dtype=complex)
    for i, d in enumerate(dims):
        out = np.kron(out, op if i == slot else np.eye(d, dtype=complex))
    return out


def bare_index(dims: tuple[int, ...], photon: int, qubits: str = "") -> int:
    """Index of the bare product state ``|photon> |q1> |q2> ...``.

    ``qubits`` is a string of ``'g'``/``'e'`` labels, one per qubit slot.
    """
    if len(qubits) != len(dims) - 1:
        raise ValueError(f"expected {len(dims) - 1} qubit labels, got {qubits!r}")
    if not 0 <= photon < dims[0]:
        raise ValueError(f"photon number {photon} out of range for dims {dims}")
    idx = photon
    for label in qubits:
        if label not in "ge":
            raise ValueError(f"qubit labels must be 'g' or 'e', got {qubits!r}")
        idx = 2 * idx + (0 if label == "g" else 1)
    return idx


def bare_ket(dims: tuple[int, ...], photon: int, qubits: str = "") -> np.ndarray:
    """Unit vector for the bare product state ``|photon, q1, q2, ...>``."""
    ket = np.zeros(int(np.prod(dims)), dtype=complex)
    ket[bare_index(dims, photon, qubits)] = 1.0
    return ket


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues (ascending) and eigenvectors (columns) of a Hermitian matrix."""

    values: np.ndarray
    vectors: np.ndarray


def eig_hermitian(h: np.ndarray, tol: float = HERMITICITY_TOL) -> EigenDecomposition:
    """Diagonalize a Hermitian matrix with a deterministic phase convention.

    Eigenvalues come out ascending.  Each eigenvector is rescaled by a global
    phase so that its largest-magnitude component is real and positive; ties
    on the magnitude are broken by the lowest component index.  This makes
    the decomposition reproducible across runs for non-degenerate spectra.

    Raises :class:`NonHermitianError` if ``max|H - H^dag|`` exceeds ``tol``
    relative to ``max(1, max|H|)``.
    """
    h = np.asarray(h, dtype=complex)
    scale = max(1.0, np.abs(h).max()) if h.size else 1.0
    defect = np.abs(h - h.conj().T).max() if h.size else 0.0
    if defect > tol * scale:
        raise NonHermitianError(
            f"hermiticity defect {defect:.3e} exceeds {tol:.1e} * {scale:.3e}"
        )
    values, vectors = np.linalg.eigh(h)
    vectors = vectors.copy()
    for col in range(vectors.shape[1]):
        v = vectors[:, col]
        lead = int(np.argmax(np.abs(v)))
        phase = v[lead] / abs(v[lead])
        vectors[:, col] = v * phase.conj()
    return EigenDecomposition(values=values, vectors=vectors)


def solve_linear(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve ``A x = b`` for dense square ``A`` with a residual check.

    Raises :class:`SingularSystemError`, reporting a condition-number
    estimate, when the factorization fails outright or the residual shows
    the system is numerically rank deficient
    (``|A x - b| > 1e-10 (|A| |x| + |b|)`` in 2-norms, Frobenius for ``A``).
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    try:
        x = scipy.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(
            f"linear solve failed ({exc}); cond estimate {np.linalg.cond(a):.3e}"
        ) from exc
    residual = np.linalg.norm(a @ x - b)
    bound = 1e-10 * (np.linalg.norm(a) * np.linalg.norm(x) + np.linalg.norm(b))
    if not np.isfinite(residual) or residual > bound:
        raise SingularSystemError(
            f"solution residual {residual:.3e} exceeds {bound:.3e}; "
            f"cond estimate {np.linalg.cond(a):.3e}"
        )
    return x
