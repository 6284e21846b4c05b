"""Sweep engine: grids, caching, thread determinism, CSV output."""

import math

import numpy as np
import pytest

from usc_radiance import (
    Axis,
    SweepSpec,
    SystemParams,
    diagonalize,
    radiance_curve,
    run_scenario,
)
from usc_radiance import scenarios
from usc_radiance.cache import SteadyStateCache
from usc_radiance.scenarios import (
    TAU_WINDOWS,
    ScenarioError,
    run_detuning_sweep,
    run_energy_spectrum,
    run_excitation_spectrum,
    run_parity_compare,
    run_peak_map,
    run_radiance_vs_drive,
)

# small photon cut keeps these plumbing tests fast; physics accuracy at this
# truncation is covered by the escalation guards the runners carry anyway
BASE = SystemParams(lam=0.1, Omega=0.001, omega_d=1.0, n_max=6)

CLASS_NAMES = {"subradiance", "uncorrelated", "superradiance", "hyperradiance"}


def _read_csv(path):
    provenance, header, rows = {}, None, []
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            provenance[key.strip()] = value.strip()
            assert header is None, "comment lines must precede the header"
        elif header is None:
            header = line.split(",")
        else:
            rows.append(line.split(","))
    return provenance, header, rows


def _strip_timestamp(text: str) -> str:
    return "\n".join(
        line for line in text.splitlines() if not line.startswith("# timestamp:")
    )


# -- axis / spec validation --------------------------------------------------


def test_axis_maps_lambda_alias_and_builds_grid():
    axis = Axis("lambda", 0.0, 0.2, 5)
    assert axis.field_name == "lam"
    values = axis.values()
    assert values[0] == 0.0 and values[-1] == 0.2 and len(values) == 5


def test_axis_rejects_bad_input():
    with pytest.raises(ValueError):
        Axis("not_a_parameter", 0.0, 1.0, 3)
    with pytest.raises(ValueError):
        Axis("lambda", 0.0, 1.0, 1)
    with pytest.raises(ValueError):
        Axis("lambda", 1.0, 0.0, 3)


def test_sweep_spec_rejects_unknown_scenario():
    with pytest.raises(ValueError):
        SweepSpec(scenario="mystery", base=BASE)


# -- radiance curves -----------------------------------------------------------


def test_radiance_curve_classifies_known_resonances():
    gap_two = float(diagonalize(BASE.with_(n_qubits=2)).gaps[1])
    gap_one = float(diagonalize(BASE.with_(n_qubits=1)).gaps[1])
    points = radiance_curve(BASE, np.array([gap_two, gap_one]), escalate_k=False)
    assert len(points) == 2
    assert not points[0].flagged and not points[1].flagged
    assert points[0].residual_one <= 1e-8 and points[0].residual_two <= 1e-8
    assert points[0].n_one > 0 and points[0].n_two > 0
    # driving the two-qubit transition boosts emission; driving the
    # one-qubit transition suppresses the pair relative to 2x the single
    assert points[0].witness > 1.0
    assert points[0].classification == "hyperradiance"
    assert points[1].witness < 0.0
    assert points[1].classification == "subradiance"


def test_radiance_curve_cache_is_transparent(tmp_path):
    grid = np.linspace(0.86, 0.90, 4)
    cache = SteadyStateCache(tmp_path / "cache")
    cold = radiance_curve(BASE, grid, cache=cache, escalate_k=False)
    warm = radiance_curve(BASE, grid, cache=cache, escalate_k=False)
    plain = radiance_curve(BASE, grid, escalate_k=False)
    assert len(list((tmp_path / "cache").iterdir())) == 8  # 4 points x 2 systems
    for a, b, c in zip(cold, warm, plain):
        assert a.witness == b.witness == c.witness
        assert a.n_one == b.n_one == c.n_one
        assert a.n_two == b.n_two == c.n_two
        assert a.classification == b.classification == c.classification


# -- scenario: radiance_vs_drive ----------------------------------------------


def test_radiance_scenario_csv_schema_determinism_and_threads(tmp_path, monkeypatch):
    # small chunks force several units of work so the thread pool actually
    # splits the grid rather than degenerating to one chunk
    monkeypatch.setattr(scenarios, "CHUNK", 4)
    spec = SweepSpec(
        scenario="radiance_vs_drive",
        base=BASE,
        extras={"omega_d_grid": (0.84, 0.92, 10)},
    )

    paths = {}
    for name, threads in (("a", 1), ("b", 1), ("c", 2)):
        result = run_scenario(spec, threads=threads)
        (path,) = result.write_outputs(tmp_path / name)
        paths[name] = path
        assert result.flagged == 0
        assert result.escalation_passed

    text_a = paths["a"].read_text(encoding="utf-8")
    assert _strip_timestamp(text_a) == _strip_timestamp(
        paths["b"].read_text(encoding="utf-8")
    )
    assert _strip_timestamp(text_a) == _strip_timestamp(
        paths["c"].read_text(encoding="utf-8")
    )

    provenance, header, rows = _read_csv(paths["a"])
    assert paths["a"].name == "radiance.csv"
    assert header == ["theta", "lambda", "omega_d", "n1", "n2", "R", "class"]
    assert len(rows) == 10
    for key in (
        "generator",
        "timestamp",
        "scenario",
        "base_params",
        "k_max",
        "residual_tol",
        "deg_tol",
        "propagator_backend",
        "flagged_points",
        "escalation",
    ):
        assert key in provenance
    assert provenance["scenario"] == "radiance_vs_drive"

    # numeric cells round-trip exactly against the in-memory rows
    result = run_scenario(spec)
    for file_row, mem_row in zip(rows, result.rows):
        for cell, value in zip(file_row[:-1], mem_row[:-1]):
            assert float(cell) == value
        assert file_row[-1] == mem_row[-1]
        assert file_row[-1] in CLASS_NAMES


# -- scenario: detuning_sweep ---------------------------------------------------


def test_detuning_windows_table(tmp_path):
    spec = SweepSpec(
        scenario="detuning_sweep",
        base=BASE,
        extras={"detunings": [0.0], "omega_d_grid": (0.85, 1.18, 12)},
    )
    result = run_detuning_sweep(spec)
    assert result.columns == ("delta", "omega_d", "n1", "n2", "R", "class")
    assert len(result.rows) == 12
    cols, window_rows = result.tables["windows"]
    assert cols == ("delta", "window", "omega_lo", "omega_hi", "classes")
    assert len(window_rows) == len(TAU_WINDOWS)
    for row, (name, lo, hi) in zip(window_rows, TAU_WINDOWS):
        assert row[0] == 0.0
        assert row[1] == name
        assert (row[2], row[3]) == (lo, hi)
        for label in filter(None, row[4].split(";")):
            assert label in CLASS_NAMES

    written = result.write_outputs(tmp_path)
    names = sorted(p.name for p in written)
    assert names == ["detuning.csv", "detuning_windows.csv"]


def test_detuning_axis_over_resonator_frequency():
    spec = SweepSpec(
        scenario="detuning_sweep",
        base=BASE,
        axis1=Axis("omega_c", 0.99, 1.01, 2),
        extras={"omega_d_grid": (0.85, 0.87, 3)},
    )
    result = run_detuning_sweep(spec)
    deltas = sorted({row[0] for row in result.rows})
    assert deltas == pytest.approx([-0.01, 0.01])
    assert len(result.rows) == 6


# -- scenario: energy_spectrum ----------------------------------------------------


def test_energy_spectrum_rows_and_bare_limit():
    # diagonalization is cheap, so this one keeps the full default photon
    # cut; eight levels are not converged to 1e-6 at n_max = 6
    spec = SweepSpec(
        scenario="energy_spectrum",
        base=BASE.with_(n_max=10),
        axis1=Axis("lambda", 0.0, 0.1, 3),
        extras={"thetas": [math.pi / 2]},
    )
    result = run_energy_spectrum(spec)
    assert result.columns == ("theta", "n_qubits", "lambda", "level", "energy")
    assert len(result.rows) == 2 * 3 * 8
    assert result.escalation_passed
    # at lambda = 0 the spectrum is the bare ladder: E0 = 0 and the first
    # excited manifold sits exactly at the (equal) qubit/photon quantum
    for nq in (1, 2):
        bare = [r for r in result.rows if r[1] == nq and r[2] == 0.0]
        assert bare[0][4] == pytest.approx(0.0, abs=1e-12)
        assert bare[1][4] == pytest.approx(1.0, abs=1e-12)
        assert bare[2][4] == pytest.approx(1.0, abs=1e-12)
        energies = [r[4] for r in bare]
        assert energies == sorted(energies)


def test_energy_spectrum_requires_lambda_axis():
    spec = SweepSpec(scenario="energy_spectrum", base=BASE)
    with pytest.raises(ScenarioError):
        run_energy_spectrum(spec)


# -- scenario: peak_map ------------------------------------------------------------


def test_peak_map_axis_validation():
    with pytest.raises(ScenarioError):
        run_peak_map(SweepSpec(scenario="peak_map", base=BASE))
    with pytest.raises(ScenarioError):
        run_peak_map(
            SweepSpec(
                scenario="peak_map",
                base=BASE,
                axis1=Axis("lambda", 0.05, 0.1, 2),
                axis2=Axis("kappa", 0.01, 0.02, 2),
            )
        )


def test_peak_map_single_geometry(tmp_path):
    spec = SweepSpec(
        scenario="peak_map",
        base=BASE,
        axis1=Axis("lambda", 0.08, 0.1, 2),
        extras={"thetas": [math.pi / 2]},
    )
    result = run_peak_map(spec)
    assert result.columns == ("theta", "lambda", "Omega", "lp", "rp", "r_max", "omega_at_max")
    assert len(result.rows) == 2
    assert result.escalation_passed
    for row in result.rows:
        theta, lam, drive, lp, rp, r_max, omega_at_max = row
        assert r_max >= max(lp, rp) - 1e-12
        gaps = diagonalize(BASE.with_(n_qubits=2, lam=lam)).gaps
        assert min(abs(omega_at_max - gaps[1]), abs(omega_at_max - gaps[3])) < 0.02


# -- scenario: excitation_spectrum ---------------------------------------------------


def test_excitation_peak_sits_on_dressed_resonance():
    gap = float(diagonalize(BASE.with_(n_qubits=1)).gaps[1])
    spec = SweepSpec(
        scenario="excitation_spectrum",
        base=BASE,
        extras={
            "qubit_counts": [1],
            "omega_d_grid": (gap - 0.03, gap + 0.03, 13),
        },
    )
    result = run_excitation_spectrum(spec)
    assert result.columns == ("theta", "n_qubits", "lambda", "omega_d", "flux")
    assert len(result.rows) == 13
    assert all(row[4] > 0 for row in result.rows)
    cols, peak_rows = result.tables["peaks"]
    assert cols == ("theta", "n_qubits", "lambda", "peak_omega", "peak_value")
    assert peak_rows, "expected at least one emission maximum in the window"
    assert min(abs(row[3] - gap) for row in peak_rows) < 5e-3


# -- scenario: parity_compare ------------------------------------------------------


def test_parity_compare_rejects_transverse_geometry():
    spec = SweepSpec(
        scenario="parity_compare", base=BASE, extras={"theta": math.pi / 2}
    )
    with pytest.raises(ScenarioError):
        run_parity_compare(spec)


def test_parity_compare_variants_differ_at_strong_coupling():
    gap = float(
        diagonalize(BASE.with_(n_qubits=2, lam=0.2, theta=math.pi / 6)).gaps[1]
    )
    spec = SweepSpec(
        scenario="parity_compare",
        base=BASE,
        extras={
            "theta": math.pi / 6,
            "lambdas": [0.2],
            "omega_d_grid": (gap - 0.01, gap + 0.01, 5),
        },
    )
    result = run_parity_compare(spec)
    assert result.columns == (
        "theta",
        "lambda",
        "drop_sigma_z",
        "omega_d",
        "n1",
        "n2",
        "R",
        "class",
    )
    assert len(result.rows) == 10
    kept = [r[6] for r in result.rows if r[2] is False]
    dropped = [r[6] for r in result.rows if r[2] is True]
    assert len(kept) == len(dropped) == 5
    # discarding the longitudinal coupling visibly moves the witness here
    assert max(abs(a - b) for a, b in zip(kept, dropped)) > 1e-3
