"""Strict readers for the nsac1d file formats.

The snapshot schema is enforced exactly (header `x,rho,u,chi`, four
columns); any drift in the producing side is caught here rather than
silently mis-plotted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class PlotInputError(ValueError):
    """Malformed or inconsistent input file."""


SNAPSHOT_HEADER = "x,rho,u,chi"


def read_snapshot(path):
    """(x, rho, u, chi) from a snapshot CSV with exact schema checking."""
    path = Path(path)
    if not path.exists():
        raise PlotInputError(f"{path}: no such snapshot file")
    with open(path) as fh:
        header = fh.readline().strip()
    if header != SNAPSHOT_HEADER:
        raise PlotInputError(
            f"{path}: malformed header {header!r}, expected {SNAPSHOT_HEADER!r}"
        )
    try:
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    except ValueError as exc:
        raise PlotInputError(f"{path}: unparseable snapshot body: {exc}") from exc
    if data.shape[1] != 4:
        raise PlotInputError(
            f"{path}: expected exactly 4 columns, found {data.shape[1]}"
        )
    return data[:, 0], data[:, 1], data[:, 2], data[:, 3]


def time_from_filename(path) -> float | None:
    """Time encoded in a `<run>_t<time>.csv` snapshot name, if any."""
    m = re.search(r"_t([0-9.eE+-]+)\.csv$", Path(path).name)
    if not m:
        return None
    try:
        return float(m.group(1))
    except ValueError:
        return None


SWEEP_HEADER = "eps,sup_rho,sup_u,sup_chi,cells_used,status"


@dataclass(frozen=True)
class SweepRow:
    eps: float
    sup_rho: float
    sup_u: float
    sup_chi: float
    cells_used: int
    status: str

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def read_sweep_report(path) -> list[SweepRow]:
    path = Path(path)
    if not path.exists():
        raise PlotInputError(f"{path}: no such report file")
    lines = path.read_text().strip().splitlines()
    if not lines or lines[0].strip() != SWEEP_HEADER:
        raise PlotInputError(f"{path}: malformed sweep report header")
    rows = []
    for ln, line in enumerate(lines[1:], start=2):
        parts = line.split(",", 5)
        if len(parts) != 6:
            raise PlotInputError(f"{path}:{ln}: malformed row {line!r}")
        rows.append(SweepRow(
            eps=float(parts[0]), sup_rho=float(parts[1]), sup_u=float(parts[2]),
            sup_chi=float(parts[3]), cells_used=int(parts[4]), status=parts[5]))
    return rows


def read_key_values(path) -> dict:
    """Plain-text `key = value` file (also accepts `key: value`)."""
    out = {}
    for ln, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" in line:
            key, _, value = line.partition("=")
        elif ":" in line:
            key, _, value = line.partition(":")
        else:
            raise PlotInputError(f"{path}:{ln}: expected 'key = value', got {raw!r}")
        out[key.strip()] = value.strip()
    return out
