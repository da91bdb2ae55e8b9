"""Binary caches for divisor tables and critical-line grids, with a hash manifest.

Layouts (all little-endian):

    divisor table  b"DIVTBL01" | u32 version | u64 N  | N x u32 d(1..N)
    zeta grid      b"ZETGRD01" | u32 version | f64 t0 | f64 t1 | f64 h | u64 count | count x f64

``manifest.json`` in the cache directory maps each file name to its sha256,
the parameters that produced it and the tool version.  A file whose magic,
version, size or hash does not check out raises :class:`CacheError`; it is
never rebuilt behind the caller's back.
"""
from __future__ import annotations

import hashlib
import json
import os
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .divisor import DivisorTable, table_from_counts
from .errors import CacheError
from .zeta.grid import SampleGrid

DIVISOR_MAGIC = b"DIVTBL01"
GRID_MAGIC = b"ZETGRD01"
FORMAT_VERSION = 1
MANIFEST = "manifest.json"

_DIV_HEADER = struct.Struct("<8sIQ")
_GRID_HEADER = struct.Struct("<8sIdddQ")


def sha256_file(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 22), b""):
            h.update(chunk)
    return h.hexdigest()


def _atomic_write(path: Path, header: bytes, payload: np.ndarray) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "wb") as fh:
        fh.write(header)
        payload.tofile(fh)
    os.replace(tmp, path)


def write_divisor_table(path, table: DivisorTable) -> None:
    path = Path(path)
    counts = np.ascontiguousarray(table.counts[1:], dtype="<u4")
    _atomic_write(path, _DIV_HEADER.pack(DIVISOR_MAGIC, FORMAT_VERSION, table.limit), counts)


def read_divisor_table(path) -> DivisorTable:
    path = Path(path)
    with open(path, "rb") as fh:
        head = fh.read(_DIV_HEADER.size)
        if len(head) < _DIV_HEADER.size:
            raise CacheError(f"{path}: truncated header")
        magic, version, n = _DIV_HEADER.unpack(head)
        if magic != DIVISOR_MAGIC:
            raise CacheError(f"{path}: bad magic {magic!r}, expected {DIVISOR_MAGIC!r}")
        if version != FORMAT_VERSION:
            raise CacheError(f"{path}: unsupported version {version}")
        body = np.fromfile(fh, dtype="<u4")
    if body.size != n:
        raise CacheError(f"{path}: expected {n} counts, found {body.size}")
    counts = np.empty(n + 1, dtype=np.uint32)
    counts[0] = 0
    counts[1:] = body
    return table_from_counts(counts)


def write_grid(path, grid: SampleGrid) -> None:
    path = Path(path)
    values = np.ascontiguousarray(grid.values, dtype="<f8")
    header = _GRID_HEADER.pack(GRID_MAGIC, FORMAT_VERSION, grid.t0, grid.t1, grid.h, values.size)
    _atomic_write(path, header, values)


def read_grid(path) -> SampleGrid:
    path = Path(path)
    with open(path, "rb") as fh:
        head = fh.read(_GRID_HEADER.size)
        if len(head) < _GRID_HEADER.size:
            raise CacheError(f"{path}: truncated header")
        magic, version, t0, t1, h, count = _GRID_HEADER.unpack(head)
        if magic != GRID_MAGIC:
            raise CacheError(f"{path}: bad magic {magic!r}, expected {GRID_MAGIC!r}")
        if version != FORMAT_VERSION:
            raise CacheError(f"{path}: unsupported version {version}")
        values = np.fromfile(fh, dtype="<f8")
    if values.size != count:
        raise CacheError(f"{path}: expected {count} values, found {values.size}")
    return SampleGrid(t0=t0, t1=t1, h=h, values=values.astype(np.float64))


@dataclass
class CacheStore:
    """A directory of cache files indexed by ``manifest.json``."""

    root: Path

    def __post_init__(self):
        self.root = Path(self.root)

    @property
    def manifest_path(self) -> Path:
        return self.root / MANIFEST

    def manifest(self) -> dict:
        if not self.manifest_path.exists():
            return {}
        try:
            return json.loads(self.manifest_path.read_text())
        except json.JSONDecodeError as exc:
            raise CacheError(f"{self.manifest_path}: unreadable manifest") from exc

    def _record(self, name: str, kind: str, params: dict, config: dict | None) -> str:
        digest = sha256_file(self.root / name)
        data = self.manifest()
        data[name] = {
            "kind": kind,
            "sha256": digest,
            "params": params,
            "config": config or {},
            "tool_version": __version__,
        }
        tmp = self.manifest_path.with_suffix(".tmp")
        tmp.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
        os.replace(tmp, self.manifest_path)
        return digest

    def verify(self, name: str) -> str:
        """Check ``name`` against its manifest hash; returns the hash."""
        entry = self.manifest().get(name)
        path = self.root / name
        if entry is None:
            raise CacheError(f"{path}: not recorded in {MANIFEST}")
        digest = sha256_file(path)
        if digest != entry["sha256"]:
            raise CacheError(f"{path}: sha256 {digest[:12]}... does not match manifest {entry['sha256'][:12]}...")
        return digest

    @staticmethod
    def divisor_name(N: int) -> str:
        return f"divisor_N{N}.bin"

    @staticmethod
    def grid_name(t0: float, t1: float, h: float) -> str:
        return f"grid_t{t0:g}_{t1:g}_h{h:g}.bin"

    def has(self, name: str) -> bool:
        return (self.root / name).exists()

    def store_divisor(self, table: DivisorTable, config: dict | None = None) -> str:
        self.root.mkdir(parents=True, exist_ok=True)
        name = self.divisor_name(table.limit)
        write_divisor_table(self.root / name, table)
        return self._record(name, "divisor", {"N": table.limit}, config)

    def load_divisor(self, N: int) -> DivisorTable:
        name = self.divisor_name(N)
        self.verify(name)
        return read_divisor_table(self.root / name)

    def store_grid(self, grid: SampleGrid, config: dict | None = None) -> str:
        self.root.mkdir(parents=True, exist_ok=True)
        name = self.grid_name(grid.t0, grid.t1, grid.h)
        write_grid(self.root / name, grid)
        return self._record(name, "grid", {"t0": grid.t0, "t1": grid.t1, "h": grid.h}, config)

    def load_grid(self, t0: float, t1: float, h: float) -> SampleGrid:
        name = self.grid_name(t0, t1, h)
        self.verify(name)
        return read_grid(self.root / name)

    def find_divisor(self, min_limit: int) -> str | None:
        """Smallest recorded divisor table with limit >= ``min_limit``."""
        best = None
        for name, entry in self.manifest().items():
            if entry["kind"] == "divisor" and entry["params"]["N"] >= min_limit:
                if best is None or entry["params"]["N"] < best[0]:
                    best = (entry["params"]["N"], name)
        return best and best[1]

    def find_grid(self, t_max: float, h: float | None = None, t0: float = 2.0) -> str | None:
        """A recorded grid starting at ``t0`` reaching ``t_max`` (step ``h`` if given)."""
        best = None
        for name, entry in self.manifest().items():
            p = entry["params"]
            if entry["kind"] != "grid" or p["t0"] != t0 or p["t1"] < t_max:
                continue
            if h is not None and p["h"] != h:
                continue
            key = (p["h"] if h is None else 0, p["t1"])
            if best is None or key < best[0]:
                best = (key, name)
        return best and best[1]

    def open_divisor(self, name: str) -> DivisorTable:
        self.verify(name)
        return read_divisor_table(self.root / name)

    def open_grid(self, name: str) -> SampleGrid:
        self.verify(name)
        return read_grid(self.root / name)
