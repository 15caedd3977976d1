"""On-disk cache of Bessel zeros: one ``m,k`` CSV per (boundary condition, n).

Readers never lock (files are replaced atomically). Writers take a
per-file lock, re-read the file and merge by ``m``; an entry already on
disk is never overwritten, so every consumer sees one value per zero.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

from filelock import FileLock

CACHE_ENV = "DISKGROWTH_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "diskgrowth"


def _tol_tag(tol: float) -> str:
    return "tol-" + format(tol, ".3g")


def format_float(value: float) -> str:
    """17 significant digits: round-trips every double exactly."""
    return format(value, ".17g")


class ZeroCache:
    def __init__(self, root, tol: float = 1e-12):
        self.root = Path(root) / _tol_tag(tol)
        self.tol = tol
        self._memory: dict[tuple[str, int], dict[int, float]] = {}

    def path(self, bc, n: int) -> Path:
        return self.root / str(getattr(bc, "value", bc)) / f"n{n:05d}.csv"

    @staticmethod
    def _read(path: Path) -> dict[int, float]:
        if not path.exists():
            return {}
        rows = {}
        with open(path, encoding="ascii") as fh:
            header = fh.readline().strip()
            if header != "m,k":
                raise ValueError(f"unexpected cache header in {path}: {header!r}")
            for line in fh:
                line = line.strip()
                if line:
                    m, k = line.split(",")
                    rows[int(m)] = float(k)
        return rows

    def _entries(self, bc, n, refresh=False):
        key = (str(getattr(bc, "value", bc)), n)
        if refresh or key not in self._memory:
            self._memory[key] = self._read(self.path(bc, n))
        return self._memory[key]

    def get(self, bc, n: int, m: int) -> float | None:
        rows = self._entries(bc, n)
        if m not in rows:
            rows = self._entries(bc, n, refresh=True)
        return rows.get(m)

    def get_many(self, bc, n: int, ms) -> dict[int, float]:
        rows = self._entries(bc, n)
        if any(m not in rows for m in ms):
            rows = self._entries(bc, n, refresh=True)
        return {m: rows[m] for m in ms if m in rows}

    def put_many(self, bc, n: int, values: dict[int, float]) -> dict[int, float]:
        """Merge ``values`` into the file; returns the stored value per m."""
        path = self.path(bc, n)
        path.parent.mkdir(parents=True, exist_ok=True)
        with FileLock(str(path) + ".lock"):
            rows = self._read(path)
            added = False
            for m, k in values.items():
                if m not in rows:
                    rows[m] = float(k)
                    added = True
            if added:
                fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
                with os.fdopen(fd, "w", encoding="ascii", newline="") as fh:
                    fh.write("m,k\n")
                    for m in sorted(rows):
                        fh.write(f"{m},{format_float(rows[m])}\n")
                os.replace(tmp, path)
        self._memory[(str(getattr(bc, "value", bc)), n)] = rows
        return {m: rows[m] for m in values}

    def put(self, bc, n: int, m: int, k: float) -> float:
        return self.put_many(bc, n, {m: k})[m]
