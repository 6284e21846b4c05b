"""Hamiltonian construction against analytic weak-coupling oracles."""

import math

import numpy as np
import pytest

from usc_radiance.model import (
    ParameterError,
    SystemParams,
    build_drive_operator,
    build_h0,
    parity_defect,
    parity_operator,
)
from usc_radiance.operators import eig_hermitian


def test_params_validation():
    with pytest.raises(ParameterError):
        SystemParams(lam=-0.1)
    with pytest.raises(ParameterError):
        SystemParams(lam=0.1, n_qubits=3)
    with pytest.raises(ParameterError):
        SystemParams(lam=0.1, theta=0.0)
    with pytest.raises(ParameterError):
        SystemParams(lam=0.1, omega_sigma=2.0)
    with pytest.raises(ParameterError):
        SystemParams(lam=0.1, n_max=2)
    with pytest.raises(ParameterError):
        SystemParams(lam=0.1, Omega=0.001, omega_d=0.0)
    with pytest.raises(ParameterError):
        SystemParams(lam=0.1, level_cut=500)
    with pytest.raises(ParameterError):
        SystemParams(lam=0.1, level_cut=4)


def test_level_cut_resolution():
    # small spaces keep everything, large ones cap at the auto cut
    assert SystemParams(lam=0.1, n_qubits=1).resolved_level_cut() == 22
    assert SystemParams(lam=0.1, n_qubits=2).resolved_level_cut() == 24
    assert SystemParams(lam=0.1, n_qubits=2, level_cut="all").resolved_level_cut() == 44
    assert SystemParams(lam=0.1, n_qubits=2, level_cut=16).resolved_level_cut() == 16


def test_h0_is_hermitian_and_real():
    for theta in (math.pi / 2, math.pi / 6):
        for nq in (1, 2):
            h = build_h0(SystemParams(lam=0.15, theta=theta, n_qubits=nq))
            assert np.abs(h - h.conj().T).max() < 1e-14
            assert np.abs(h.imag).max() == 0.0


def test_zero_coupling_energies_are_bare_sums():
    p = SystemParams(lam=0.0, n_qubits=2, n_max=4)
    values = eig_hermitian(build_h0(p)).values
    bare = sorted(
        n + q1 + q2 for n in range(5) for q1 in (0, 1) for q2 in (0, 1)
    )
    assert np.allclose(values, bare, atol=1e-12)


def test_one_qubit_second_order_perturbation_theory():
    # transverse coupling: E0 = -lam^2/2, E+- = 1 -+ lam - lam^2/2 + O(lam^3)
    lam = 0.02
    p = SystemParams(lam=lam, n_qubits=1, level_cut="all")
    values = eig_hermitian(build_h0(p)).values
    expected = [-(lam**2) / 2, 1 - lam - lam**2 / 2, 1 + lam - lam**2 / 2]
    assert np.abs(values[:3] - np.array(expected)).max() < 1e-4


def test_two_qubit_tavis_cummings_structure():
    # resonant pair: bright states split by sqrt(2) lam, dark state pinned
    lam = 0.02
    p = SystemParams(lam=lam, n_qubits=2, level_cut="all")
    values = eig_hermitian(build_h0(p)).values
    gaps = values[1:4] - values[0]
    expected = [1 - math.sqrt(2) * lam, 1.0, 1 + math.sqrt(2) * lam]
    assert np.abs(gaps - np.array(expected)).max() < 1e-3


def test_dark_state_flat_at_small_coupling():
    gaps = {}
    for lam in (0.01, 0.05):
        p = SystemParams(lam=lam, n_qubits=2, level_cut="all")
        values = eig_hermitian(build_h0(p)).values
        gaps[lam] = values[2] - values[0]
    # middle single-excitation level moves only at second order
    assert abs(gaps[0.01] - 1.0) < 2e-4
    assert abs(gaps[0.05] - 1.0) < 5e-3


def test_drive_operator_is_total_sigma_x():
    p = SystemParams(lam=0.1, n_qubits=2, n_max=4)
    v = build_drive_operator(p)
    assert np.abs(v - v.conj().T).max() == 0.0
    # acting on |0, g, g> populates exactly the two single-flip states
    col = v[:, 0]
    assert np.count_nonzero(col) == 2
    assert col[1] == 1.0 and col[2] == 1.0


def test_parity_operator_diagonal_signs():
    p = SystemParams(lam=0.1, n_qubits=2, n_max=4)
    pi_op = parity_operator(p)
    assert np.abs(pi_op - np.diag(np.diag(pi_op))).max() == 0.0
    diag = np.diag(pi_op).real
    assert set(np.unique(diag)) == {-1.0, 1.0}
    assert diag[0] == 1.0  # |0, g, g> is even
    assert diag[1] == -1.0  # one excitation is odd


def test_parity_conservation_only_transverse():
    conserved = parity_defect(SystemParams(lam=0.2, theta=math.pi / 2))
    broken = parity_defect(SystemParams(lam=0.2, theta=math.pi / 6))
    assert conserved < 1e-15
    assert broken > 1e-2


def test_drop_sigma_z_matches_transverse_model_exactly():
    p = SystemParams(lam=0.2, theta=math.pi / 2)
    h_full = build_h0(p)
    h_drop = build_h0(p.with_(drop_sigma_z_coupling=True))
    assert np.array_equal(h_full, h_drop)


def test_drop_sigma_z_restores_parity():
    p = SystemParams(lam=0.2, theta=math.pi / 6, drop_sigma_z_coupling=True)
    assert parity_defect(p) < 1e-15
