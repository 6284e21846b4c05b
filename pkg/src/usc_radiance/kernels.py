"""Propagator kernel selection: compiled extension with NumPy fallback.

The compiled RK4 kernel is used when the extension built; otherwise the
NumPy implementation takes over with identical semantics.  Setting the
environment variable ``USC_RADIANCE_PURE_PYTHON=1`` forces the fallback,
which is how the two backends are compared in tests and benchmarks.
"""

from __future__ import annotations

import os

from . import _propagate_py

__all__ = ["backend_name", "propagate_period"]

_forced_python = os.environ.get("USC_RADIANCE_PURE_PYTHON", "") not in ("", "0")

if _forced_python:
    _impl = _propagate_py
    _backend = "python (forced)"
else:
    try:
        from . import _propagate as _impl  # type: ignore[no-redef]

        _backend = "cython"
    except ImportError:
        _impl = _propagate_py
        _backend = "python"

propagate_period = _impl.propagate_period


def backend_name() -> str:
    """Which propagator implementation is active: ``cython`` or ``python``."""
    return _backend
