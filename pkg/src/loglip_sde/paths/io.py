# -*- coding: utf-8 -*-
"""CSV and binary serialisation of drivers and trajectories.

CSV columns are ``t`` followed by one column per component (``w0..`` for drivers,
``x0..`` for trajectories), floats in shortest round-trip form. Comment lines starting
with ``#`` carry metadata such as the manifest digest.

The binary dump is a fixed header followed by the values as little-endian doubles::

    magic    8 bytes  b"LLSDEPTH"
    version  uint16   1
    kind     uint16   0 driver, 1 trajectory
    dim      uint32
    n        uint64   number of grid steps
    rows     uint64   stored rows (n+1 unless a trajectory exploded)
    T        float64
    seed     int64
    trial    int64
    level    int64
"""

import csv
import io
from pathlib import Path

import numpy as np

from loglip_sde.paths.brownian import BrownianDriver
from loglip_sde.paths.grid import TimeGrid
from loglip_sde.paths.trajectory import ExitRecord, Trajectory

MAGIC = b"LLSDEPTH"
VERSION = 1

HEADER_DTYPE = np.dtype(
    [
        ("magic", "S8"),
        ("version", "<u2"),
        ("kind", "<u2"),
        ("dim", "<u4"),
        ("n", "<u8"),
        ("rows", "<u8"),
        ("T", "<f8"),
        ("seed", "<i8"),
        ("trial", "<i8"),
        ("level", "<i8"),
    ]
)

_KIND_DRIVER, _KIND_TRAJECTORY = 0, 1


def format_float(value: float) -> str:
    """Shortest decimal string that reads back to the same double."""
    return repr(float(value))


def _rows(path) -> tuple[str, np.ndarray, np.ndarray]:
    if isinstance(path, BrownianDriver):
        return "w", path.grid.nodes, path.values
    if isinstance(path, Trajectory):
        return "x", path.times, path.states
    raise TypeError(f"cannot serialise {type(path).__name__}")


def write_csv(path, filename, comments: dict | None = None) -> Path:
    """Write a driver or trajectory as CSV, metadata first as ``# key: value`` lines."""
    prefix, times, values = _rows(path)
    filename = Path(filename)
    with filename.open("w", newline="") as handle:
        for key, value in (comments or {}).items():
            handle.write(f"# {key}: {value}\n")
        if isinstance(path, Trajectory) and path.exploded:
            handle.write(f"# exploded_at: {format_float(path.exit.time)}\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["t"] + [f"{prefix}{j}" for j in range(values.shape[1])])
        for t, row in zip(times, values):
            writer.writerow([format_float(t)] + [format_float(v) for v in row])
    return filename


def read_csv(filename) -> tuple[dict, np.ndarray, np.ndarray]:
    """``(comments, times, values)`` of a CSV written by :func:`write_csv`."""
    comments = {}
    with Path(filename).open(newline="") as handle:
        lines = []
        for line in handle:
            if line.startswith("#"):
                key, _, value = line[1:].partition(":")
                comments[key.strip()] = value.strip()
            else:
                lines.append(line)
    reader = csv.reader(lines)
    next(reader)
    rows = np.array([[float(v) for v in row] for row in reader if row])
    return comments, rows[:, 0], rows[:, 1:]


def to_bytes(path) -> bytes:
    """Binary dump of a driver or trajectory, see the module docstring for the header."""
    _, _, values = _rows(path)
    is_driver = isinstance(path, BrownianDriver)
    header = np.array(
        [
            (
                MAGIC,
                VERSION,
                _KIND_DRIVER if is_driver else _KIND_TRAJECTORY,
                values.shape[1],
                path.grid.n,
                values.shape[0],
                path.grid.T,
                path.seed if is_driver else 0,
                path.trial if is_driver else 0,
                path.level if is_driver else 0,
            )
        ],
        dtype=HEADER_DTYPE,
    )
    buffer = io.BytesIO()
    buffer.write(header.tobytes())
    buffer.write(np.ascontiguousarray(values, dtype="<f8").tobytes())
    return buffer.getvalue()


def from_bytes(data: bytes):
    """Inverse of :func:`to_bytes`.

    A truncated trajectory comes back with an exit record at its first missing node and
    guard ``inf`` (the guard value is not stored).
    """
    if len(data) < HEADER_DTYPE.itemsize:
        raise ValueError("data is shorter than the header")
    header = np.frombuffer(data, dtype=HEADER_DTYPE, count=1)[0]
    if header["magic"] != MAGIC:
        raise ValueError(f"bad magic {header['magic']!r}")
    if header["version"] != VERSION:
        raise ValueError(f"unsupported version {header['version']}")

    dim, rows = int(header["dim"]), int(header["rows"])
    values = np.frombuffer(
        data, dtype="<f8", count=rows * dim, offset=HEADER_DTYPE.itemsize
    ).reshape(rows, dim)
    grid = TimeGrid(int(header["n"]), float(header["T"]))

    if header["kind"] == _KIND_DRIVER:
        return BrownianDriver(
            grid=grid,
            values=values,
            seed=int(header["seed"]),
            trial=int(header["trial"]),
            level=int(header["level"]),
        )

    exit = None
    if rows < grid.n + 1:
        exit = ExitRecord(index=rows, time=float(grid.nodes[rows]), guard=float("inf"))
    return Trajectory(grid=grid, states=values.copy(), exit=exit)
