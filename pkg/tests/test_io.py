import csv
import json
import struct

import numpy as np
import pytest

from rsphoton import NATURAL, SI, Grid
from rsphoton.em.potentials import RSField
from rsphoton.io import (KINDS, SnapshotFormatError, dumps_report, read_snapshot, rs_csv_names,
                         snapshot_to_rs, write_field_csv, write_profile_csv, write_report,
                         write_snapshot)
from rsphoton.modes import expand_rs, random_expansion


@pytest.fixture
def field(rng):
    g = Grid(8, 1e-6)
    return expand_rs(random_expansion(g, rng, 5), g, 1.5e-15, SI)


def test_header_layout(tmp_path, field):
    path = write_snapshot(tmp_path / "f.bin", field)
    raw = path.read_bytes()
    magic, version, n, kind, ncomp = struct.unpack_from("<4s4I", raw, 0)
    L, t, c = struct.unpack_from("<3d", raw, 20)
    assert (magic, version, n, kind, ncomp) == (b"RSPH", 1, 8, 2, 14)
    assert (L, t, c) == (1e-6, 1.5e-15, SI.c)
    assert len(raw) == 44 + 16 * 14 * 8**3
    payload = np.frombuffer(raw[44:], dtype="<c16").reshape(14, 8, 8, 8)
    np.testing.assert_array_equal(payload[1:4], field.E)
    np.testing.assert_array_equal(payload[11:14], field.dt_B)


def test_rs_roundtrip(tmp_path, field):
    snap = read_snapshot(write_snapshot(tmp_path / "f.bin", field))
    assert snap["kind"] == "rs-dt" and snap["grid"] == field.grid
    back = snapshot_to_rs(snap)
    for name in ("scalar", "E", "B", "dt_E", "dt_B"):
        np.testing.assert_array_equal(getattr(back, name), getattr(field, name))
    assert back.t == field.t and back.c == field.c
    plain = RSField(field.grid, 0.0, field.scalar, field.E, field.B, field.c)
    snap = read_snapshot(write_snapshot(tmp_path / "p.bin", plain))
    assert snap["kind"] == "rs" and snap["data"].shape[0] == 7
    assert not snapshot_to_rs(snap).has_time_backing


def test_raw_and_typed_arrays(tmp_path, rng):
    g = Grid(4, 1.0)
    arr = rng.standard_normal((4,) + g.shape) + 0j
    snap = read_snapshot(write_snapshot(tmp_path / "a.bin", arr, g, 0.5, "potential"))
    assert snap["kind"] == "potential"
    np.testing.assert_array_equal(snap["data"], arr)
    one = read_snapshot(write_snapshot(tmp_path / "s.bin", arr[0], g))
    assert one["data"].shape == (1,) + g.shape
    with pytest.raises(SnapshotFormatError):
        snapshot_to_rs(snap)
    with pytest.raises(ValueError):
        write_snapshot(tmp_path / "x.bin", arr)
    with pytest.raises(ValueError):
        write_snapshot(tmp_path / "x.bin", arr, g, kind="unknown")
    with pytest.raises(ValueError):
        write_snapshot(tmp_path / "x.bin", arr[:3], g, kind="current")
    with pytest.raises(ValueError):
        write_snapshot(tmp_path / "x.bin", arr, Grid(8, 1.0))
    assert set(KINDS) == {"raw", "rs", "rs-dt", "potential", "current"}


@pytest.mark.parametrize("damage", ["magic", "version", "kind", "truncate", "short"])
def test_corrupt_headers_are_rejected(tmp_path, field, damage):
    path = write_snapshot(tmp_path / "f.bin", field)
    raw = bytearray(path.read_bytes())
    if damage == "magic":
        raw[:4] = b"XXXX"
    elif damage == "version":
        raw[4:8] = struct.pack("<I", 9)
    elif damage == "kind":
        raw[12:16] = struct.pack("<I", 77)
    elif damage == "truncate":
        raw = raw[:-16]
    else:
        raw = raw[:10]
    path.write_bytes(bytes(raw))
    with pytest.raises(SnapshotFormatError):
        read_snapshot(path)


def test_field_csv(tmp_path, rng):
    g = Grid(4, 2.0)
    F = expand_rs(random_expansion(g, rng, 3), g, 0.0, NATURAL)
    data = np.concatenate([F.scalar[None], F.E, F.B])
    path = write_field_csv(tmp_path / "f.csv", data, g, rs_csv_names())
    rows = list(csv.reader(path.open()))
    assert rows[0][:7] == ["i", "j", "l", "x", "y", "z", "cLambda_re"]
    assert len(rows) == 1 + 64 and len(rows[0]) == 6 + 14
    row = rows[1 + 4 * 4 * 1 + 4 * 2 + 3]  # i=1, j=2, l=3
    assert [int(v) for v in row[:3]] == [1, 2, 3]
    assert float(row[4]) == pytest.approx(1.0)
    assert complex(float(row[8]), float(row[9])) == data[1, 1, 2, 3]
    with pytest.raises(ValueError):
        write_field_csv(tmp_path / "g.csv", np.zeros((1, 32, 32, 32)), Grid(32, 1.0))
    with pytest.raises(ValueError):
        write_field_csv(tmp_path / "g.csv", data, g, ["a"])


def test_profile_csv(tmp_path):
    path = write_profile_csv(tmp_path / "p.csv", [0.5, 1.0], [0.25, 0.75])
    assert path.read_text().splitlines() == ["r,enclosed_fraction", "0.5,0.25", "1.0,0.75"]


def test_reports_are_canonical(tmp_path):
    a = {"b": [1, 2], "a": {"z": 1.0, "y": None}}
    b = {"a": {"y": None, "z": 1.0}, "b": [1, 2]}
    assert dumps_report(a) == dumps_report(b)
    assert dumps_report(a).endswith("}\n")
    path = write_report(tmp_path / "r.json", a)
    assert json.loads(path.read_text()) == a
