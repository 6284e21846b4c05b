"""SVG figures for sweep results.

The CSV files are the contract; these plots are a quick visual check.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

__all__ = ["plot_result"]


def _group_curves(rows, key_idx, x_idx, y_idx):
    groups: dict[tuple, list] = {}
    for row in rows:
        groups.setdefault(tuple(row[i] for i in key_idx), []).append(
            (row[x_idx], row[y_idx])
        )
    return groups


def _symlog_if_wide(ax, values) -> None:
    finite = np.asarray([v for v in values if np.isfinite(v)])
    if finite.size and finite.max() - finite.min() > 50:
        ax.set_yscale("symlog", linthresh=1.0)


def plot_result(result, path: str | Path) -> Path:
    """Render a scenario result to SVG; one figure per scenario type."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    scenario = result.scenario
    rows = result.rows
    if scenario == "energy_spectrum":
        for (theta, nq, level), pts in _group_curves(rows, (0, 1, 3), 2, 4).items():
            pts.sort()
            xs, ys = zip(*pts)
            ax.plot(xs, ys, lw=0.8, label=f"n={level} q={nq} th={theta:.3f}")
        ax.set_xlabel("coupling strength")
        ax.set_ylabel("energy")
        ax.legend(fontsize=5, ncol=4)
    elif scenario in ("radiance_vs_drive", "parity_compare"):
        x_idx = 2 if scenario == "radiance_vs_drive" else 3
        key_idx = (0, 1) if scenario == "radiance_vs_drive" else (0, 1, 2)
        y_idx = x_idx + 3
        all_r = []
        for key, pts in _group_curves(rows, key_idx, x_idx, y_idx).items():
            pts.sort()
            xs, ys = zip(*pts)
            ax.plot(xs, ys, lw=0.9, label=", ".join(f"{k:.4g}" for k in key))
            all_r.extend(ys)
        _symlog_if_wide(ax, all_r)
        ax.axhline(0.0, color="k", lw=0.5)
        ax.axhline(1.0, color="k", lw=0.5, ls=":")
        ax.set_xlabel("drive frequency")
        ax.set_ylabel("radiance witness R")
        ax.legend(fontsize=6)
    elif scenario == "detuning_sweep":
        all_r = []
        for (delta,), pts in _group_curves(rows, (0,), 1, 4).items():
            pts.sort()
            xs, ys = zip(*pts)
            ax.plot(xs, ys, lw=0.9, label=f"delta={delta:.4g}")
            all_r.extend(ys)
        _symlog_if_wide(ax, all_r)
        ax.set_xlabel("drive frequency")
        ax.set_ylabel("radiance witness R")
        ax.legend(fontsize=6)
    elif scenario == "peak_map":
        for (theta,), pts in _group_curves(rows, (0,), 1, 5).items():
            pts.sort()
            xs, ys = zip(*pts)
            ax.plot(xs, ys, "o-", ms=3, label=f"max R, th={theta:.3f}")
        ax.set_xlabel("coupling strength")
        ax.set_ylabel("peak witness")
        ax.set_yscale("log")
        ax.legend(fontsize=6)
    elif scenario == "excitation_spectrum":
        for key, pts in _group_curves(rows, (0, 1, 2), 3, 4).items():
            pts.sort()
            xs, ys = zip(*pts)
            ax.semilogy(xs, ys, lw=0.8, label=", ".join(f"{k:.4g}" for k in key))
        ax.set_xlabel("drive frequency")
        ax.set_ylabel("output flux")
        ax.legend(fontsize=5)
    else:
        raise ValueError(f"no plot defined for scenario {scenario!r}")
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
    return path
