"""Dressed basis and jump-operator structure."""

import math

import numpy as np
import pytest

from usc_radiance.dressed import (
    bright_doublet_overlaps,
    diagonalize,
    transition_table,
)
from usc_radiance.model import SystemParams


def test_jump_operators_strictly_upper_triangular():
    basis = diagonalize(SystemParams(lam=0.15, theta=math.pi / 6, n_qubits=2))
    for op in [basis.x_plus, *basis.d_plus]:
        assert np.abs(np.tril(op)).max() == 0.0


def test_jump_operators_annihilate_ground():
    basis = diagonalize(SystemParams(lam=0.1, n_qubits=2))
    assert np.abs(basis.x_plus[:, 0]).max() == 0.0
    for d in basis.d_plus:
        assert np.abs(d[:, 0]).max() == 0.0


def test_degenerate_pairs_carry_no_matrix_element():
    # at lam = 0 the single-excitation triple is exactly degenerate
    basis = diagonalize(SystemParams(lam=0.0, n_qubits=2))
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            assert basis.x_plus[i, j] == 0.0


def test_level_cut_restricts_jump_operators():
    basis = diagonalize(SystemParams(lam=0.1, n_qubits=2, level_cut=16))
    assert basis.x_plus.shape == (16, 16)
    assert basis.states.shape == (44, 44)
    assert len(basis.energies) == 44


def test_project_matches_direct_sandwich():
    p = SystemParams(lam=0.1, n_qubits=1)
    basis = diagonalize(p)
    rng = np.random.default_rng(2)
    op = rng.normal(size=(p.total_levels, p.total_levels))
    cut = basis.level_cut
    s = basis.states[:, :cut]
    assert np.allclose(basis.project(op), s.conj().T @ op @ s, atol=1e-13)


def test_bright_doublet_overlaps_large_at_moderate_coupling():
    basis = diagonalize(SystemParams(lam=0.1, n_qubits=2))
    report = bright_doublet_overlaps(basis)
    assert not report.degenerate
    assert report.overlap_lower > 0.98
    assert report.overlap_upper > 0.98
    assert report.gap_lower < 1.0 < report.gap_upper


def test_bright_doublet_flags_degenerate_point():
    basis = diagonalize(SystemParams(lam=0.0, n_qubits=2))
    assert bright_doublet_overlaps(basis).degenerate


def test_bright_doublet_requires_two_resonant_qubits():
    with pytest.raises(ValueError):
        bright_doublet_overlaps(diagonalize(SystemParams(lam=0.1, n_qubits=1)))
    with pytest.raises(ValueError):
        bright_doublet_overlaps(
            diagonalize(SystemParams(lam=0.1, n_qubits=2, omega_c=1.1))
        )


def test_cascade_element_controlled_by_geometry():
    # the 1 <-> 3 resonator matrix element opens only away from theta = pi/2
    closed = diagonalize(SystemParams(lam=0.2, theta=math.pi / 2, n_qubits=2))
    idx = np.abs(closed.x_plus[1, 3])
    open_ = diagonalize(SystemParams(lam=0.2, theta=math.pi / 6, n_qubits=2))
    assert idx < 1e-12
    assert np.abs(open_.x_plus[1, 3]) > 1e-3


def test_transition_table_counts_and_positivity():
    basis = diagonalize(SystemParams(lam=0.1, n_qubits=2, level_cut=12))
    table = transition_table(basis)
    assert len(table) <= 12 * 11 // 2
    assert np.all(table.freq > basis.deg_tol)
    assert np.all(table.m > table.n)
    # every strictly upper pair above the degeneracy tolerance is present
    e = basis.energies[:12]
    expected = sum(
        1 for n in range(12) for m in range(n + 1, 12) if e[m] - e[n] > basis.deg_tol
    )
    assert len(table) == expected


def test_transition_table_single_qubit_pads_second_column():
    basis = diagonalize(SystemParams(lam=0.1, n_qubits=1))
    table = transition_table(basis)
    assert np.abs(table.abs_d2).max() == 0.0
    assert np.abs(table.abs_d1).max() > 0.0
