"""Elementary operator builders and linear-algebra helpers."""

import numpy as np
import pytest

from usc_radiance.operators import (
    NonHermitianError,
    SingularSystemError,
    annihilation,
    bare_index,
    bare_ket,
    eig_hermitian,
    embed,
    qubit_lowering,
    qubit_raising,
    sigma_x,
    sigma_z,
    solve_linear,
)


def test_annihilation_matrix_elements():
    a = annihilation(5)
    for n in range(1, 6):
        assert a[n - 1, n] == pytest.approx(np.sqrt(n))
    assert np.count_nonzero(a) == 5


def test_annihilation_commutator_below_truncation():
    a = annihilation(6)
    comm = a @ a.conj().T - a.conj().T @ a
    # canonical except in the last retained Fock state
    assert np.allclose(np.diag(comm)[:-1], 1.0, atol=1e-14)


def test_annihilation_rejects_tiny_space():
    with pytest.raises(ValueError):
        annihilation(0)


def test_qubit_operator_conventions():
    sm = qubit_lowering()
    assert sm[0, 1] == 1.0 and np.count_nonzero(sm) == 1
    assert np.array_equal(qubit_raising(), sm.conj().T)
    assert np.array_equal(sigma_x(), sm + sm.conj().T)
    # (|g>, |e>) ordering puts -1 first on the diagonal
    assert np.array_equal(np.diag(sigma_z()), [-1.0, 1.0])
    anti = sigma_x() @ sigma_z() + sigma_z() @ sigma_x()
    assert np.abs(anti).max() == 0.0


def test_embed_slot_ordering():
    dims = (3, 2, 2)
    full = embed(sigma_z(), 1, dims)
    # photon-first ordering: the first-qubit label toggles every 2 entries
    expected = np.kron(np.eye(3), np.kron(sigma_z(), np.eye(2)))
    assert np.array_equal(full, expected)


def test_embed_validates_inputs():
    with pytest.raises(ValueError):
        embed(sigma_z(), 3, (3, 2, 2))
    with pytest.raises(ValueError):
        embed(sigma_z(), 0, (3, 2))


def test_bare_index_roundtrip():
    dims = (4, 2, 2)
    assert bare_index(dims, 0, "gg") == 0
    assert bare_index(dims, 0, "ge") == 1
    assert bare_index(dims, 0, "eg") == 2
    assert bare_index(dims, 1, "gg") == 4
    ket = bare_ket(dims, 2, "eg")
    assert ket[bare_index(dims, 2, "eg")] == 1.0
    assert np.count_nonzero(ket) == 1


def test_bare_index_rejects_bad_labels():
    with pytest.raises(ValueError):
        bare_index((4, 2), 0, "x")
    with pytest.raises(ValueError):
        bare_index((4, 2), 5, "g")
    with pytest.raises(ValueError):
        bare_index((4, 2), 0, "gg")


def test_eig_hermitian_ascending_and_orthonormal():
    rng = np.random.default_rng(3)
    raw = rng.normal(size=(12, 12)) + 1j * rng.normal(size=(12, 12))
    h = raw + raw.conj().T
    dec = eig_hermitian(h)
    assert np.all(np.diff(dec.values) >= 0)
    assert np.allclose(dec.vectors.conj().T @ dec.vectors, np.eye(12), atol=1e-12)
    recon = dec.vectors @ np.diag(dec.values) @ dec.vectors.conj().T
    assert np.allclose(recon, h, atol=1e-10)


def test_eig_hermitian_phase_convention():
    rng = np.random.default_rng(11)
    raw = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
    h = raw + raw.conj().T
    dec = eig_hermitian(h)
    for col in dec.vectors.T:
        lead = col[np.argmax(np.abs(col))]
        assert lead.imag == pytest.approx(0.0, abs=1e-14)
        assert lead.real > 0


def test_eig_hermitian_rejects_nonhermitian():
    with pytest.raises(NonHermitianError):
        eig_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex))


def test_solve_linear_recovers_solution():
    rng = np.random.default_rng(5)
    a = rng.normal(size=(20, 20)) + 1j * rng.normal(size=(20, 20))
    x = rng.normal(size=20) + 1j * rng.normal(size=20)
    assert np.allclose(solve_linear(a, a @ x), x, atol=1e-10)


@pytest.mark.filterwarnings("ignore")  # scipy grumbles about the singular input
def test_solve_linear_flags_singular():
    a = np.zeros((3, 3), dtype=complex)
    a[0, 0] = 1.0
    with pytest.raises(SingularSystemError):
        solve_linear(a, np.ones(3, dtype=complex))
