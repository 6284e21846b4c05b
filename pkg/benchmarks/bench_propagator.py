"""Benchmark the RK4 period propagator: compiled kernel versus NumPy.

Runs the same time-domain integration workload through both backends on a
representative dissipative system and reports periods per second.  The
compiled kernel is what makes full time-domain cross-validation practical;
this script quantifies the gap on the current machine.

Usage::

    python3 benchmarks/bench_propagator.py [--levels 16] [--periods 40]
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from usc_radiance import SystemParams, build_liouvillian, diagonalize
from usc_radiance import _propagate_py
from usc_radiance.liouville import vec
from usc_radiance.observables import emission_number_operator
from usc_radiance.timedomain import default_time_step

try:
    from usc_radiance import _propagate

    BACKENDS = [("cython", _propagate), ("python", _propagate_py)]
except ImportError:
    print("compiled extension not available; benchmarking the fallback only")
    BACKENDS = [("python", _propagate_py)]


def workload(levels: int):
    params = SystemParams(
        lam=0.1, theta=math.pi / 2, n_qubits=2, Omega=0.001, omega_d=0.8532,
        level_cut=levels,
    )
    basis = diagonalize(params)
    liou = build_liouvillian(basis)
    n = liou.n_levels
    l0 = np.asfortranarray(liou.l0)
    lv = np.asfortranarray(liou.lv)
    w_obs = np.ascontiguousarray(
        emission_number_operator(basis.x_plus).T.reshape(-1, order="F")
    )
    rho0 = np.zeros((n, n), dtype=complex)
    rho0[0, 0] = 1.0
    period = 2.0 * math.pi / params.omega_d
    dt = default_time_step(liou, params.omega_d)
    steps = max(1, math.ceil(period / dt))
    return l0, lv, vec(rho0), w_obs, period, period / steps, steps, params


def run(impl, periods: int, levels: int) -> tuple[float, float]:
    l0, lv, y, w_obs, period, dt, steps, params = workload(levels)
    rho_acc = np.zeros_like(y)
    obs = 0.0
    start = time.perf_counter()
    for p in range(periods):
        obs = impl.propagate_period(
            l0, lv, y, p * period, dt, steps, params.omega_d, params.Omega, w_obs, rho_acc
        )
    elapsed = time.perf_counter() - start
    return elapsed, obs


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--levels", type=int, default=16, help="retained dressed levels")
    parser.add_argument("--periods", type=int, default=40, help="drive periods to integrate")
    args = parser.parse_args()

    print(f"system: two qubits, level_cut={args.levels}, {args.periods} drive periods")
    results = {}
    for name, impl in BACKENDS:
        elapsed, obs = run(impl, args.periods, args.levels)
        rate = args.periods / elapsed
        results[name] = (elapsed, rate, obs)
        print(f"  {name:>7}: {elapsed:8.3f} s  ({rate:7.2f} periods/s)  obs={obs:.12e}")

    if len(results) == 2:
        el_c, _, obs_c = results["cython"]
        el_p, _, obs_p = results["python"]
        print(f"  speedup: {el_p / el_c:.2f}x")
        agreement = abs(obs_c - obs_p) / max(abs(obs_p), 1e-300)
        print(f"  backend agreement on the averaged observable: {agreement:.2e}")


if __name__ == "__main__":
    main()
