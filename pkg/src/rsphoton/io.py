"""Field snapshots on disk, CSV exports and deterministic JSON reports.

Binary snapshot layout (little-endian)::

    offset  size  field
    0       4     magic b"RSPH"
    4       4     u32 format version (1)
    8       4     u32 grid points per axis n
    12      4     u32 field kind (see KINDS)
    16      4     u32 component count
    20      8     f64 box length L
    28      8     f64 time t
    36      8     f64 speed of light c used for B
    44      ...   complex128 payload, shape (ncomp, n, n, n), row-major

Kinds ``rs`` store ``(c Lambda, E, B)`` and ``rs-dt`` append their time
derivatives.  ``potential`` stores ``(phi/c, A)`` and ``current`` stores
``(j0, j)``.
"""

from __future__ import annotations

import csv
import json
import struct
from pathlib import Path

import numpy as np

from .em.grid import Grid
from .em.potentials import RSField

MAGIC = b"RSPH"
VERSION = 1
HEADER = struct.Struct("<4sIIIIddd")
KINDS = {"raw": 0, "rs": 1, "rs-dt": 2, "potential": 3, "current": 4}
_KIND_NAMES = {v: k for k, v in KINDS.items()}
_NCOMP = {"rs": 7, "rs-dt": 14, "potential": 4, "current": 4}


class SnapshotFormatError(ValueError):
    """Malformed or unsupported snapshot file."""


def rs_components(F: RSField) -> tuple[str, np.ndarray]:
    parts = [np.asarray(F.scalar)[None], F.E, F.B]
    if F.has_time_backing:
        dts = F.dt_scalar if F.dt_scalar is not None else np.zeros(F.grid.shape)
        parts += [np.asarray(dts)[None], F.dt_E, F.dt_B]
        return "rs-dt", np.concatenate(parts).astype(complex)
    return "rs", np.concatenate(parts).astype(complex)


def write_snapshot(path, data, grid: Grid | None = None, t: float = 0.0, kind: str = "raw",
                   c: float = 1.0) -> Path:
    """Write an :class:`RSField` or a raw (ncomp, n, n, n) array."""
    if isinstance(data, RSField):
        grid, t, c = data.grid, data.t, data.c
        kind, arr = rs_components(data)
    else:
        if grid is None:
            raise ValueError("raw arrays need their grid")
        arr = np.asarray(data, dtype=complex)
        if arr.ndim == 3:
            arr = arr[None]
        if kind not in KINDS:
            raise ValueError(f"unknown snapshot kind {kind!r}")
    if arr.shape[1:] != grid.shape:
        raise ValueError(f"payload shape {arr.shape} does not match grid {grid.shape}")
    if kind in _NCOMP and arr.shape[0] != _NCOMP[kind]:
        raise ValueError(f"kind {kind!r} needs {_NCOMP[kind]} components")
    path = Path(path)
    with open(path, "wb") as fh:
        fh.write(HEADER.pack(MAGIC, VERSION, grid.n, KINDS[kind], arr.shape[0], grid.L, t, c))
        fh.write(np.ascontiguousarray(arr, dtype="<c16").tobytes())
    return path


def read_snapshot(path) -> dict:
    """Return ``{grid, t, c, kind, data}`` from a snapshot file."""
    raw = Path(path).read_bytes()
    if len(raw) < HEADER.size:
        raise SnapshotFormatError("file shorter than the snapshot header")
    magic, version, n, kind, ncomp, L, t, c = HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise SnapshotFormatError("bad magic bytes")
    if version != VERSION:
        raise SnapshotFormatError(f"unsupported snapshot version {version}")
    if kind not in _KIND_NAMES:
        raise SnapshotFormatError(f"unknown field kind code {kind}")
    expected = HEADER.size + 16 * ncomp * n**3
    if len(raw) != expected:
        raise SnapshotFormatError(f"payload size {len(raw) - HEADER.size} does not match header")
    data = np.frombuffer(raw, dtype="<c16", offset=HEADER.size).reshape(ncomp, n, n, n).astype(complex)
    return {"grid": Grid(n, L), "t": t, "c": c, "kind": _KIND_NAMES[kind], "data": data}


def snapshot_to_rs(snap: dict) -> RSField:
    """Rebuild an :class:`RSField` from an ``rs`` or ``rs-dt`` snapshot."""
    kind, d = snap["kind"], snap["data"]
    if kind not in ("rs", "rs-dt"):
        raise SnapshotFormatError(f"snapshot kind {kind!r} is not an RS field")
    F = dict(grid=snap["grid"], t=snap["t"], scalar=d[0], E=d[1:4], B=d[4:7], c=snap["c"])
    if kind == "rs-dt":
        F.update(dt_scalar=d[7], dt_E=d[8:11], dt_B=d[11:14])
    return RSField(**F)


def write_field_csv(path, data, grid: Grid, names=None, max_n: int = 16) -> Path:
    """One row per grid point: indices, coordinates, then re/im per component."""
    if grid.n > max_n:
        raise ValueError(f"CSV export is meant for small grids (n <= {max_n})")
    arr = np.asarray(data, dtype=complex)
    if arr.ndim == 3:
        arr = arr[None]
    names = names or [f"c{i}" for i in range(arr.shape[0])]
    if len(names) != arr.shape[0]:
        raise ValueError("one name per component")
    x = grid.coords.reshape(3, -1)
    idx = np.indices(grid.shape).reshape(3, -1)
    flat = arr.reshape(arr.shape[0], -1)
    path = Path(path)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["i", "j", "l", "x", "y", "z"] + [f"{n}_{p}" for n in names for p in ("re", "im")])
        for p in range(flat.shape[1]):
            row = [int(v) for v in idx[:, p]] + [repr(float(v)) for v in x[:, p]]
            for comp in flat[:, p]:
                row += [repr(float(comp.real)), repr(float(comp.imag))]
            w.writerow(row)
    return path


def rs_csv_names() -> list:
    return ["cLambda", "Ex", "Ey", "Ez", "Bx", "By", "Bz"]


def write_profile_csv(path, r, enclosed) -> Path:
    """Radial profile as ``r,enclosed_fraction`` rows."""
    path = Path(path)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["r", "enclosed_fraction"])
        for a, b in zip(r, enclosed):
            w.writerow([repr(float(a)), repr(float(b))])
    return path


def dumps_report(obj) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=True) + "\n"


def write_report(path, obj) -> Path:
    path = Path(path)
    path.write_text(dumps_report(obj))
    return path
