"""Emission observables, the radiance witness, and curve feature extraction.

The emitted photon number of a dressed system is ``<X- X+>`` evaluated in
the (period-averaged) steady state; the output flux is ``kappa`` times
that.  The collective character of the two-qubit emission is quantified by
the witness

    R = (n_2 - 2 n_1) / (2 n_1)

comparing the two-qubit emission n_2 against twice the single-qubit
emission n_1 at otherwise identical parameters.  R < 0 marks subradiance,
R = 0 uncorrelated emission, 0 < R <= 1 superradiance and R > 1
hyperradiance (emission beyond two ideally synchronized qubits).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.signal import find_peaks, peak_prominences

__all__ = [
    "UndefinedWitnessError",
    "emission_number_operator",
    "photon_number",
    "photon_flux",
    "radiance_witness",
    "classify",
    "CLASS_EPSILON",
    "FLUX_FLOOR",
    "RadiancePoint",
    "Extremum",
    "ExtremaSet",
    "find_extrema",
]

CLASS_EPSILON = 1e-6
FLUX_FLOOR = 1e-14
NEGATIVE_FLUX_TOL = 1e-10


class UndefinedWitnessError(ValueError):
    """The reference emission is too small for the witness to be defined."""


def emission_number_operator(x_plus: np.ndarray) -> np.ndarray:
    """Positive-semidefinite operator X- X+ whose mean is the emission number."""
    return x_plus.conj().T @ x_plus


def photon_number(rho: np.ndarray, x_plus: np.ndarray) -> float:
    """Emission photon number ``<X- X+>`` in the state ``rho``.

    Small negative values inside the numerical tolerance are clamped to
    zero with a warning; anything lower is an error.
    """
    value = float(np.trace(emission_number_operator(x_plus) @ rho).real)
    if value < -NEGATIVE_FLUX_TOL:
        raise ValueError(f"emission number {value:.3e} is negative beyond tolerance")
    if value < 0.0:
        warnings.warn(
            f"clamping slightly negative emission number {value:.3e} to zero",
            RuntimeWarning,
            stacklevel=2,
        )
        value = 0.0
    return value


def photon_flux(rho: np.ndarray, x_plus: np.ndarray, kappa: float) -> float:
    """Output photon flux ``kappa <X- X+>``."""
    if kappa < 0:
        raise ValueError("kappa must be >= 0")
    return kappa * photon_number(rho, x_plus)


def radiance_witness(n_two: float, n_one: float, floor: float = FLUX_FLOOR) -> float:
    """Witness R = (n_2 - 2 n_1) / (2 n_1).

    Raises :class:`UndefinedWitnessError` when the single-qubit emission is
    at or below ``floor``; sweep outputs record such points as NaN.
    """
    if not np.isfinite(n_one) or not np.isfinite(n_two):
        raise UndefinedWitnessError("emission numbers must be finite")
    if n_one <= floor:
        raise UndefinedWitnessError(
            f"single-qubit emission {n_one:.3e} at or below floor {floor:.1e}"
        )
    return (n_two - 2.0 * n_one) / (2.0 * n_one)


def classify(r: float, epsilon: float = CLASS_EPSILON) -> str:
    """Label a witness value; the band ``|R| <= epsilon`` counts as uncorrelated."""
    if not np.isfinite(r):
        raise ValueError("witness must be finite; undefined points are not classified")
    if r < -epsilon:
        return "subradiance"
    if r <= epsilon:
        return "uncorrelated"
    if r <= 1.0:
        return "superradiance"
    return "hyperradiance"


@dataclass(frozen=True)
class RadiancePoint:
    """One drive frequency of a paired one-/two-qubit steady-state solve."""

    omega_d: float
    n_one: float
    n_two: float
    witness: float
    classification: str
    residual_one: float = 0.0
    residual_two: float = 0.0
    flagged: bool = False


@dataclass(frozen=True)
class Extremum:
    """A refined local extremum of a sampled curve."""

    x: float
    value: float
    kind: str  # "max" or "min"
    prominence: float
    index: int


@dataclass(frozen=True)
class ExtremaSet:
    """Alternating maxima and minima of a curve, most prominent features only."""

    extrema: tuple[Extremum, ...]

    @property
    def maxima(self) -> tuple[Extremum, ...]:
        return tuple(e for e in self.extrema if e.kind == "max")

    @property
    def minima(self) -> tuple[Extremum, ...]:
        return tuple(e for e in self.extrema if e.kind == "min")

    def __len__(self) -> int:
        return len(self.extrema)


def _refine_quadratic(x: np.ndarray, y: np.ndarray, i: int) -> tuple[float, float]:
    # parabola through the extremal triple; falls back to the grid point
    # when the curvature is too small to trust
    xs, ys = x[i - 1 : i + 2], y[i - 1 : i + 2]
    a, b, c = np.polyfit(xs - xs[1], ys, 2)
    if abs(a) < 1e-300:
        return float(x[i]), float(y[i])
    dx = -b / (2.0 * a)
    half_step = 0.5 * max(xs[2] - xs[1], xs[1] - xs[0])
    if abs(dx) > half_step:  # vertex escaped the triple; keep the sample
        return float(x[i]), float(y[i])
    return float(xs[1] + dx), float(a * dx * dx + b * dx + c)


def find_extrema(
    x: np.ndarray,
    y: np.ndarray,
    prominence_floor: float | None = None,
) -> ExtremaSet:
    """Locate prominent local maxima and minima of a sampled curve.

    Candidates come from three-point comparison; each is refined by a
    quadratic fit through its extremal triple.  ``prominence_floor``
    defaults to ``1e-3`` of the full value range, which suppresses grid
    noise while keeping physical features.  Adjacent same-kind extrema
    (possible after filtering) are reduced to the more prominent one so
    the result alternates.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be 1-D arrays of equal length")
    if len(x) < 3:
        return ExtremaSet(extrema=())
    if np.any(np.diff(x) <= 0):
        raise ValueError("x must be strictly increasing")
    finite = np.isfinite(y)
    if not finite.all():
        raise ValueError("curve contains non-finite values; mask them first")
    y_range = float(y.max() - y.min())
    if y_range == 0.0:
        return ExtremaSet(extrema=())
    if prominence_floor is None:
        prominence_floor = 1e-3 * y_range

    found: list[Extremum] = []
    for kind, signed in (("max", y), ("min", -y)):
        idx, _ = find_peaks(signed)
        if len(idx) == 0:
            continue
        prom = peak_prominences(signed, idx)[0]
        for i, p in zip(idx, prom):
            if p < prominence_floor:
                continue
            xr, yr = _refine_quadratic(x, y, int(i))
            found.append(
                Extremum(x=xr, value=yr, kind=kind, prominence=float(p), index=int(i))
            )
    found.sort(key=lambda e: e.x)
    # enforce alternation: of adjacent same-kind extrema keep the prominent one
    cleaned: list[Extremum] = []
    for e in found:
        if cleaned and cleaned[-1].kind == e.kind:
            if e.prominence > cleaned[-1].prominence:
                cleaned[-1] = e
            continue
        cleaned.append(e)
    return ExtremaSet(extrema=tuple(cleaned))
