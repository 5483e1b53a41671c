"""Flat-file exporters: CSV waveforms, text grid files and ASCII graymaps.

All numbers are written with 17 significant digits so that reading a file
back reproduces the doubles exactly.
"""

from __future__ import annotations

import os
from typing import Tuple, Union

import numpy as np

from .errors import EmptyWaveform, ParseError, ZeroField
from .grid import ComplexField2D, Domain, SampledAxis, Waveform1D
from .interference import HomPattern

FMT = "%.17g"


def _fmt(x: float) -> str:
    return FMT % x


def export_csv(data: Union[Waveform1D, HomPattern], path) -> None:
    if isinstance(data, HomPattern):
        x, y, unit = data.delays, data.p_cc, "ps"
    else:
        x, y, unit = data.x, data.values, data.axis.unit
        if np.iscomplexobj(y):
            raise ValueError("CSV export holds real values only")
    if len(x) == 0:
        raise EmptyWaveform("nothing to export")
    lines = [f"# {unit},value"]
    lines += [f"{_fmt(a)},{_fmt(b)}" for a, b in zip(x, y)]
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_csv(path) -> Tuple[str, np.ndarray, np.ndarray]:
    """Returns ``(unit, x, values)``."""
    with open(path) as fh:
        header = fh.readline().rstrip("\n")
        if not header.startswith("# ") or not header.endswith(",value"):
            raise ParseError(f"unexpected CSV header {header!r}")
        unit = header[2:-len(",value")]
        rows = [line.split(",") for line in fh.read().splitlines() if line]
    try:
        arr = np.array([[float(a), float(b)] for a, b in rows])
    except ValueError as exc:
        raise ParseError(f"malformed CSV row in {path}") from exc
    return unit, arr[:, 0], arr[:, 1]


def export_grid(field: ComplexField2D, path) -> None:
    """Header ``# nx ny x_center x_step y_center y_step domain kind`` then ``nx`` rows.

    ``kind`` is ``real`` (one value per sample) or ``complex`` (real and
    imaginary parts interleaved, ``2*ny`` values per row).
    """
    ax, ay = field.axis_x, field.axis_y
    v = field.values
    kind = "complex" if np.iscomplexobj(v) else "real"
    header = (f"# {ax.n} {ay.n} {_fmt(ax.center)} {_fmt(ax.step)} {_fmt(ay.center)} {_fmt(ay.step)} "
              f"{field.domain.value} {kind}")
    lines = [header]
    for row in v:
        if kind == "complex":
            flat = np.empty(2 * row.size)
            flat[0::2], flat[1::2] = row.real, row.imag
        else:
            flat = row
        lines.append(" ".join(_fmt(x) for x in flat))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_grid(path) -> ComplexField2D:
    with open(path) as fh:
        header = fh.readline().split()
        body = fh.read().splitlines()
    if len(header) != 9 or header[0] != "#":
        raise ParseError(f"grid header must have 8 fields after '#', got {header}")
    try:
        nx, ny = int(header[1]), int(header[2])
        xc, xs, yc, ys = map(float, header[3:7])
        domain = Domain(header[7])
    except ValueError as exc:
        raise ParseError(f"bad grid header {header}") from exc
    kind = header[8]
    if kind not in ("real", "complex"):
        raise ParseError(f"unknown grid kind {kind!r}")
    rows = [r for r in body if r.strip()]
    if len(rows) != nx:
        raise ParseError(f"header says {nx} rows, file has {len(rows)}")
    width = 2 * ny if kind == "complex" else ny
    try:
        data = np.array([[float(x) for x in r.split()] for r in rows])
    except ValueError as exc:
        raise ParseError("non-numeric grid value") from exc
    if data.shape != (nx, width):
        raise ParseError(f"expected {width} values per row")
    values = data[:, 0::2] + 1j * data[:, 1::2] if kind == "complex" else data
    return ComplexField2D(SampledAxis(nx, xc, xs, domain), SampledAxis(ny, yc, ys, domain), values)


def heatmap_levels(field: ComplexField2D) -> np.ndarray:
    """Gray levels ``round(255 v / max)``; image rows run from high y to low y."""
    v = np.asarray(field.values)
    if np.iscomplexobj(v):
        raise ValueError("heatmaps are drawn from intensity maps")
    if np.any(v < 0):
        raise ValueError("heatmap values must be nonnegative")
    top = v.max()
    if not top > 0:
        raise ZeroField("cannot scale an all-zero map")
    levels = np.floor(255.0 * v / top + 0.5).astype(int)
    return levels.T[::-1]


def export_heatmap(field: ComplexField2D, path) -> None:
    img = heatmap_levels(field)
    h, w = img.shape
    lines = ["P2", f"{w} {h}", "255"]
    lines += [" ".join(str(x) for x in row) for row in img]
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def ensure_dir(path) -> None:
    os.makedirs(path, exist_ok=True)
