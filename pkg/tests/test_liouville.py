"""Vectorization conventions and master-equation assembly."""

import math

import numpy as np
import scipy.linalg

from usc_radiance.dressed import diagonalize
from usc_radiance.liouville import (
    assemble_liouvillian,
    build_liouvillian,
    commutator_matrix,
    dissipator_matrix,
    expectation_functional,
    trace_functional,
    unvec,
    vec,
)
from usc_radiance.model import SystemParams

RNG = np.random.default_rng(17)


def _random_matrix(n):
    return RNG.normal(size=(n, n)) + 1j * RNG.normal(size=(n, n))


def _random_density(n):
    raw = _random_matrix(n)
    rho = raw @ raw.conj().T
    return rho / np.trace(rho)


def test_vec_roundtrip_and_kron_identity():
    n = 6
    a, b, rho = _random_matrix(n), _random_matrix(n), _random_matrix(n)
    assert np.array_equal(unvec(vec(rho), n), rho)
    # column stacking: vec(A rho B) = (B^T kron A) vec(rho)
    lhs = vec(a @ rho @ b)
    rhs = np.kron(b.T, a) @ vec(rho)
    assert np.allclose(lhs, rhs, atol=1e-12)


def test_trace_and_expectation_functionals():
    import pytest

    n = 5
    rho = _random_density(n)
    op = _random_matrix(n)
    assert trace_functional(n) @ vec(rho) == pytest.approx(np.trace(rho), abs=1e-12)
    assert expectation_functional(op) @ vec(rho) == pytest.approx(
        np.trace(op @ rho), abs=1e-12
    )


def test_dissipator_matrix_matches_direct_action():
    n = 5
    op = _random_matrix(n)
    rho = _random_matrix(n)
    direct = (
        2 * op @ rho @ op.conj().T
        - rho @ op.conj().T @ op
        - op.conj().T @ op @ rho
    ) / 2
    assert np.allclose(unvec(dissipator_matrix(op) @ vec(rho), n), direct, atol=1e-12)


def test_commutator_matrix_matches_direct_action():
    n = 5
    h = _random_matrix(n)
    h = h + h.conj().T
    rho = _random_matrix(n)
    direct = 1j * (rho @ h - h @ rho)
    assert np.allclose(unvec(commutator_matrix(h) @ vec(rho), n), direct, atol=1e-12)


def test_exponential_decay_oracle():
    # two-level toy: excited population decays as exp(-kappa t), the
    # coherence as exp((i omega - kappa/2) t); fixes every sign convention
    kappa, omega, t = 0.3, 0.7, 2.5
    lowering = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    l0 = assemble_liouvillian(np.diag([0.0, omega]).astype(complex), [(kappa, lowering)])
    rho0 = np.array([[0.3, 0.2 - 0.1j], [0.2 + 0.1j, 0.7]], dtype=complex)
    rho_t = unvec(scipy.linalg.expm(l0 * t) @ vec(rho0), 2)
    assert abs(rho_t[1, 1] - 0.7 * math.exp(-kappa * t)) < 1e-12
    expected_coh = (0.2 - 0.1j) * np.exp((1j * omega - kappa / 2) * t)
    assert abs(rho_t[0, 1] - expected_coh) < 1e-12
    assert abs(np.trace(rho_t) - 1.0) < 1e-12


def test_build_liouvillian_trace_annihilation():
    basis = diagonalize(SystemParams(lam=0.1, theta=math.pi / 6, n_qubits=2, Omega=0.001))
    liou = build_liouvillian(basis)
    tr = trace_functional(liou.n_levels)
    assert np.abs(tr @ liou.l0).max() < 1e-10
    assert np.abs(tr @ liou.lv).max() < 1e-10


def test_build_liouvillian_dimensions_follow_cut():
    basis = diagonalize(SystemParams(lam=0.1, n_qubits=2, level_cut=16))
    liou = build_liouvillian(basis)
    assert liou.n_levels == 16
    assert liou.l0.shape == (256, 256)


def test_undriven_ground_state_is_stationary():
    basis = diagonalize(SystemParams(lam=0.1, n_qubits=2))
    liou = build_liouvillian(basis)
    ground = np.zeros((liou.n_levels, liou.n_levels), dtype=complex)
    ground[0, 0] = 1.0
    assert np.abs(liou.l0 @ vec(ground)).max() < 1e-12
