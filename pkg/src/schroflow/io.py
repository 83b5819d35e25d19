"""Trajectory persistence: flat binary snapshots, monitor CSV, JSON sidecar.

Snapshot layout (little-endian throughout):

    magic   4 bytes  b"SFLW"
    version u32      currently 1
    m       u32      domain dimension
    K       u32      ambient dimension
    sizes   m * u32  nodes per axis
    lengths m * f64  period per axis
    payload prod(sizes) * K * f64, node-major (row-major axis order)

CSV columns are t, energy, sup_grad, h0..hk, w0..wk, drift; floats are
written with shortest round-trip repr so identical runs produce identical
bytes.
"""

import json
import struct
from pathlib import Path

import numpy as np

from .grids import DomainGrid

SNAPSHOT_MAGIC = b"SFLW"
SNAPSHOT_VERSION = 1


def write_snapshot(path, grid: DomainGrid, values) -> None:
    values = np.ascontiguousarray(values, dtype="<f8")
    m = grid.dim
    k = values.shape[-1]
    header = SNAPSHOT_MAGIC
    header += struct.pack("<III", SNAPSHOT_VERSION, m, k)
    header += struct.pack(f"<{m}I", *grid.sizes)
    header += struct.pack(f"<{m}d", *grid.lengths)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(values.tobytes(order="C"))


def read_snapshot(path):
    """Returns (grid, values)."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if blob[:4] != SNAPSHOT_MAGIC:
        raise ValueError(f"{path}: not a snapshot file (bad magic)")
    version, m, k = struct.unpack_from("<III", blob, 4)
    if version != SNAPSHOT_VERSION:
        raise ValueError(f"{path}: unsupported snapshot version {version}")
    off = 16
    sizes = struct.unpack_from(f"<{m}I", blob, off)
    off += 4 * m
    lengths = struct.unpack_from(f"<{m}d", blob, off)
    off += 8 * m
    count = int(np.prod(sizes)) * k
    values = np.frombuffer(blob, dtype="<f8", count=count, offset=off)
    grid = DomainGrid(sizes=sizes, lengths=lengths)
    return grid, values.reshape(sizes + (k,)).copy()


def _fmt(x) -> str:
    return repr(float(x))


def report_csv_header(k_max: int) -> str:
    h_cols = ",".join(f"h{l}" for l in range(k_max + 1))
    w_cols = ",".join(f"w{l}" for l in range(k_max + 1))
    return f"t,energy,sup_grad,{h_cols},{w_cols},drift"


def write_reports_csv(path, reports) -> None:
    if not reports:
        raise ValueError("no reports to write")
    k_max = len(reports[0].h_norms) - 1
    lines = [report_csv_header(k_max)]
    for rep in reports:
        cells = [_fmt(rep.time), _fmt(rep.energy), _fmt(rep.sup_grad)]
        cells += [_fmt(v) for v in rep.h_norms]
        cells += [_fmt(v) for v in rep.w_norms]
        cells.append(_fmt(rep.constraint_drift))
        lines.append(",".join(cells))
    Path(path).write_text("\n".join(lines) + "\n")


def write_rows_csv(path, header, rows) -> None:
    """Generic deterministic CSV writer; floats get round-trip repr."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(c) if isinstance(c, float) else str(c) for c in row))
    Path(path).write_text("\n".join(lines) + "\n")


def write_json(path, payload) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def read_json(path):
    return json.loads(Path(path).read_text())
