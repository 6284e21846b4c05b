"""Disk cache for steady-state sweep points.

Entries are tiny JSON records keyed by a SHA-256 hash of the full parameter
set, solver tolerances and package version, so stale results can never be
confused with current ones.  The default location is ``~/.cache/usc-radiance``;
the ``USC_RADIANCE_CACHE_DIR`` environment variable overrides it.  Writes
are atomic (write-then-rename) and guarded by a lock, so a cache may be
shared by sweep workers.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import threading
from pathlib import Path

__all__ = ["SteadyStateCache", "default_cache_dir"]

ENV_VAR = "USC_RADIANCE_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR, "").strip()
    if env:
        return Path(env)
    return Path.home() / ".cache" / "usc-radiance"


class SteadyStateCache:
    """Keyed store of scalar sweep-point results.

    ``enabled=False`` turns every operation into a no-op, which keeps the
    calling code free of conditionals.
    """

    def __init__(self, directory: str | os.PathLike | None = None, enabled: bool = True):
        self.enabled = enabled
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        self._memory: dict[str, dict] = {}
        self._lock = threading.Lock()
        if self.enabled:
            self.directory.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def key(payload: dict) -> str:
        """Canonical content hash of a JSON-serializable payload."""
        text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode("utf-8")).hexdigest()

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def get(self, key: str) -> dict | None:
        if not self.enabled:
            return None
        with self._lock:
            hit = self._memory.get(key)
            if hit is not None:
                return dict(hit)
            path = self._path(key)
            if not path.is_file():
                return None
            try:
                value = json.loads(path.read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError):
                return None
            self._memory[key] = value
            return dict(value)

    def put(self, key: str, value: dict) -> None:
        if not self.enabled:
            return
        with self._lock:
            self._memory[key] = dict(value)
            fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as fh:
                    json.dump(value, fh, sort_keys=True)
                os.replace(tmp, self._path(key))
            except OSError:
                try:
                    os.unlink(tmp)
                except OSError:
                    pass
                raise

    def clear(self) -> None:
        with self._lock:
            self._memory.clear()
            if self.enabled and self.directory.is_dir():
                for path in self.directory.glob("*.json"):
                    try:
                        path.unlink()
                    except OSError:
                        pass
