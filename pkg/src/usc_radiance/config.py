"""Run configuration: flat key = value files with one section per scenario.

A config file has an optional ``[common]`` section holding system
parameters (keys mirror the ``SystemParams`` field names; ``lambda`` is
accepted as an alias for ``lam``) and one section per scenario with grids
and scenario options.  Angles may be written as plain floats or as ``pi``
fractions (``pi/2``, ``2*pi/3``).  Example::

    [common]
    lambda = 0.1
    theta = pi/2
    Omega = 0.001

    [radiance_vs_drive]
    axis1 = omega_d, 0.7, 1.4, 701
    lambdas = 0.05, 0.1, 0.2

Unknown keys are rejected so typos cannot silently fall back to defaults.
"""

from __future__ import annotations

import configparser
import dataclasses
import math
import re
from pathlib import Path

from .model import SystemParams
from .scenarios import SCENARIOS, Axis, SweepSpec

__all__ = ["ConfigError", "parse_angle", "load_config", "build_spec"]

_PARAM_FIELDS = {f.name for f in dataclasses.fields(SystemParams)}
_ALIASES = {"lambda": "lam"}
_SCENARIO_KEYS = {
    "axis1",
    "axis2",
    "omega_d_grid",
    "lambdas",
    "thetas",
    "detunings",
    "qubit_counts",
    "levels",
    "theta",
    "output_dir",
    "cache",
}
_SHORT_TO_SCENARIO = {
    "spectrum": "energy_spectrum",
    "radiance": "radiance_vs_drive",
    "detuning": "detuning_sweep",
    "map": "peak_map",
    "excitation": "excitation_spectrum",
    "parity": "parity_compare",
}


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending key."""


_PI_PATTERN = re.compile(r"^\s*(?:(\d+(?:\.\d+)?)\s*\*\s*)?pi\s*(?:/\s*(\d+(?:\.\d+)?))?\s*$")


def parse_angle(text: str) -> float:
    """Parse ``0.5236``, ``pi``, ``pi/6`` or ``2*pi/3``."""
    match = _PI_PATTERN.match(text)
    if match:
        num = float(match.group(1)) if match.group(1) else 1.0
        den = float(match.group(2)) if match.group(2) else 1.0
        return num * math.pi / den
    return float(text)


def _float(key: str, text: str) -> float:
    try:
        return parse_angle(text) if key.startswith("theta") else float(text)
    except ValueError as exc:
        raise ConfigError(f"key {key!r}: cannot parse {text!r} as a number") from exc


def _float_list(key: str, text: str) -> list[float]:
    items = [t for t in (s.strip() for s in text.split(",")) if t]
    if not items:
        raise ConfigError(f"key {key!r}: empty list")
    return [_float(key, t) for t in items]


def _axis(key: str, text: str) -> Axis:
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 4:
        raise ConfigError(f"key {key!r}: expected 'name, min, max, points', got {text!r}")
    name, lo, hi, points = parts
    try:
        return Axis(name=name, lo=_float(name, lo), hi=_float(name, hi), points=int(points))
    except ValueError as exc:
        raise ConfigError(f"key {key!r}: {exc}") from exc


def load_config(path: str | Path) -> configparser.ConfigParser:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    parser.optionxform = str  # keys are case sensitive (Omega vs omega_c)
    read = parser.read(path)
    if not read:
        raise ConfigError(f"config file {path} not found or unreadable")
    return parser


def _build_params(parser: configparser.ConfigParser, nmax_override: int | None) -> SystemParams:
    values: dict = {}
    if parser.has_section("common"):
        for key, raw in parser.items("common"):
            name = _ALIASES.get(key, key)
            if name not in _PARAM_FIELDS:
                raise ConfigError(f"key {key!r} in [common] is not a system parameter")
            if name == "theta":
                values[name] = parse_angle(raw)
            elif name in ("n_qubits", "n_max"):
                values[name] = int(raw)
            elif name == "level_cut":
                values[name] = raw.strip() if raw.strip() in ("all", "auto") else int(raw)
            elif name == "drop_sigma_z_coupling":
                values[name] = parser.getboolean("common", key)
            else:
                values[name] = _float(name, raw)
    values.setdefault("lam", 0.1)
    if nmax_override is not None:
        values["n_max"] = int(nmax_override)
    try:
        return SystemParams(**values)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid [common] parameters: {exc}") from exc


def build_spec(
    parser: configparser.ConfigParser,
    scenario: str,
    output_dir: str | Path | None = None,
    nmax_override: int | None = None,
) -> SweepSpec:
    """Assemble a sweep spec from a parsed config for one scenario."""
    scenario = _SHORT_TO_SCENARIO.get(scenario, scenario)
    if scenario not in SCENARIOS:
        raise ConfigError(f"unknown scenario {scenario!r}")
    base = _build_params(parser, nmax_override)
    section = None
    for candidate in (scenario, *[s for s, full in _SHORT_TO_SCENARIO.items() if full == scenario]):
        if parser.has_section(candidate):
            section = candidate
            break
    axis1 = axis2 = None
    extras: dict = {}
    out = Path(output_dir) if output_dir is not None else Path("out")
    if section is not None:
        for key, raw in parser.items(section):
            if key not in _SCENARIO_KEYS:
                raise ConfigError(f"key {key!r} in [{section}] is not recognized")
            if key == "axis1":
                axis1 = _axis(key, raw)
            elif key == "axis2":
                axis2 = _axis(key, raw)
            elif key == "omega_d_grid":
                lo, hi, points = [s.strip() for s in raw.split(",")]
                extras["omega_d_grid"] = (float(lo), float(hi), int(points))
            elif key in ("lambdas", "thetas", "detunings"):
                extras[key] = _float_list(key, raw)
            elif key == "qubit_counts":
                extras[key] = [int(s) for s in raw.split(",")]
            elif key == "levels":
                extras[key] = int(raw)
            elif key == "theta":
                extras[key] = parse_angle(raw)
            elif key == "cache":
                extras[key] = raw.strip().lower() not in ("off", "false", "0", "no")
            elif key == "output_dir" and output_dir is None:
                out = Path(raw.strip())
    try:
        return SweepSpec(
            scenario=scenario, base=base, axis1=axis1, axis2=axis2,
            output_dir=out, extras=extras,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
