"""File formats: snapshot CSV, run metadata, wave-pattern serializations,
and sweep reports.

All numeric output uses 17 significant digits so values round-trip
exactly through text.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .errors import ValidationError
from .harness import ErrorReport, SweepResult
from .model import Frame
from .riemann import RiemannSolution, WaveFan
from .solver import FieldSnapshot, RunResult

FMT = "%.17g"
SNAPSHOT_HEADER = "x,rho,u,chi"


def fnum(x: float) -> str:
    return FMT % x


def snapshot_filename(run_name: str, t: float) -> str:
    return f"{run_name}_t{t:g}.csv"


def write_snapshot_csv(path, snapshot: FieldSnapshot) -> None:
    data = np.column_stack([snapshot.x_centers, snapshot.rho, snapshot.u, snapshot.chi])
    np.savetxt(path, data, fmt=FMT, delimiter=",",
               header=SNAPSHOT_HEADER, comments="")


def read_snapshot_csv(path):
    """(x, rho, u, chi) arrays from a snapshot file; strict header check."""
    path = Path(path)
    with open(path) as fh:
        header = fh.readline().strip()
    if header != SNAPSHOT_HEADER:
        raise ValidationError(
            f"{path}: malformed snapshot header {header!r}, expected {SNAPSHOT_HEADER!r}"
        )
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.shape[1] != 4:
        raise ValidationError(f"{path}: expected 4 columns, found {data.shape[1]}")
    return data[:, 0], data[:, 1], data[:, 2], data[:, 3]


def write_run_meta(path, result: RunResult) -> None:
    """Config echo, conservation ledger and wall time as key = value text."""
    cfg = result.config
    lines = [
        f"preset = {cfg.preset}",
        f"gamma = {fnum(cfg.gamma)}",
        f"eps = {fnum(cfg.eps)}",
        f"a = {fnum(cfg.a)}",
        f"domain_lo = {fnum(cfg.domain[0])}",
        f"domain_hi = {fnum(cfg.domain[1])}",
        f"n_cells = {cfg.n_cells}",
        f"dx = {fnum(cfg.dx)}",
        f"cfl = {fnum(cfg.cfl)}",
        f"t_end = {fnum(cfg.t_end)}",
        f"mobility_const = {fnum(cfg.mobility_const)}",
        f"stabilizer = {fnum(cfg.stabilizer)}",
        f"boundary = {cfg.boundary}",
        f"order = {cfg.order}",
        f"limiter = {cfg.limiter}",
        f"wall_time_s = {result.wall_time:.3f}",
    ]
    led = result.ledger
    lines += [f"mass_initial = {fnum(led.mass0)}",
              f"momentum_initial = {fnum(led.momentum0)}"]
    for row in led.rows:
        tag = f"t{row.t:g}"
        lines += [
            f"mass_total[{tag}] = {fnum(row.mass)}",
            f"momentum_total[{tag}] = {fnum(row.momentum)}",
            f"mass_defect_rel[{tag}] = {fnum(row.mass_defect_rel)}",
            f"momentum_defect_rel[{tag}] = {fnum(row.momentum_defect_rel)}",
            f"chi_overshoot[{tag}] = {fnum(row.chi_overshoot)}",
            f"subchar_margin[{tag}] = {fnum(row.subchar_margin)}",
            f"nu_eff_min[{tag}] = {fnum(row.nu_eff_min)}",
            f"nu_eff_max[{tag}] = {fnum(row.nu_eff_max)}",
        ]
    Path(path).write_text("\n".join(lines) + "\n")


def format_wave_fan(fan: WaveFan) -> str:
    """Two-shock fan as structured key = value text."""
    x0, t0 = fan.interaction_point
    d1, d2, d1t, d2t, dmin = fan.strengths()
    lines = [
        "kind = two_shock_fan",
        "frame = lagrangian",
        f"gamma = {fnum(fan.law.gamma)}",
        f"v_minus = {fnum(fan.u_minus.v)}",
        f"u_minus = {fnum(fan.u_minus.u)}",
        f"v_star = {fnum(fan.star.v)}",
        f"u_star = {fnum(fan.star.u)}",
        f"v_plus = {fnum(fan.u_plus.v)}",
        f"u_plus = {fnum(fan.u_plus.u)}",
        f"s1 = {fnum(fan.s1)}",
        f"s2 = {fnum(fan.s2)}",
        f"x2_init = {fnum(fan.x2_init)}",
        f"x1_init = {fnum(fan.x1_init)}",
        f"x0 = {fnum(x0)}",
        f"t0 = {fnum(t0)}",
    ]
    if fan.has_post:
        lines += [
            f"v_star_post = {fnum(fan.star_post.v)}",
            f"u_star_post = {fnum(fan.star_post.u)}",
            f"s1_post = {fnum(fan.s1_post)}",
            f"s2_post = {fnum(fan.s2_post)}",
            f"delta1 = {fnum(d1)}",
            f"delta2 = {fnum(d2)}",
            f"delta1_post = {fnum(d1t)}",
            f"delta2_post = {fnum(d2t)}",
            f"delta = {fnum(dmin)}",
        ]
    return "\n".join(lines) + "\n"


def format_riemann_solution(sol: RiemannSolution) -> str:
    """General Riemann pattern as structured key = value text."""
    frame = "eulerian" if sol.frame is Frame.EULERIAN else "lagrangian"
    def val(state):
        return state.rho if sol.frame is Frame.EULERIAN else state.v
    val_name = "rho" if sol.frame is Frame.EULERIAN else "v"
    lines = [
        "kind = general_riemann",
        f"frame = {frame}",
        f"gamma = {fnum(sol.law.gamma)}",
        f"x_jump = {fnum(sol.x_jump)}",
    ]
    for name, st in (("left", sol.left), ("middle", sol.middle), ("right", sol.right)):
        lines.append(f"{val_name}_{name} = {fnum(val(st))}")
        lines.append(f"u_{name} = {fnum(st.u)}")
    for tag, w in (("wave1", sol.wave1), ("wave2", sol.wave2)):
        lines.append(f"{tag}_kind = {w.kind}")
        if w.kind == "shock":
            lines.append(f"{tag}_speed = {fnum(w.speed)}")
        elif w.kind == "rarefaction":
            lines.append(f"{tag}_head = {fnum(w.head)}")
            lines.append(f"{tag}_tail = {fnum(w.tail)}")
    return "\n".join(lines) + "\n"


SWEEP_HEADER = "eps,sup_rho,sup_u,sup_chi,cells_used,status"


def write_sweep_report(path, result: SweepResult) -> None:
    rows = [SWEEP_HEADER]
    for r in result.reports:
        status = r.status.replace(",", ";").replace("\n", " ")
        rows.append(",".join([
            fnum(r.eps),
            fnum(r.sup_rho) if math.isfinite(r.sup_rho) else "nan",
            fnum(r.sup_u) if math.isfinite(r.sup_u) else "nan",
            fnum(r.sup_chi) if math.isfinite(r.sup_chi) else "nan",
            str(r.cells_used),
            status,
        ]))
    Path(path).write_text("\n".join(rows) + "\n")


def read_sweep_report(path) -> SweepResult:
    path = Path(path)
    lines = path.read_text().strip().splitlines()
    if not lines or lines[0].strip() != SWEEP_HEADER:
        raise ValidationError(f"{path}: malformed sweep report header")
    reports = []
    for line in lines[1:]:
        parts = line.split(",", 5)
        if len(parts) != 6:
            raise ValidationError(f"{path}: malformed sweep report row {line!r}")
        eps, sup_rho, sup_u, sup_chi, cells, status = parts
        reports.append(ErrorReport(
            eps=float(eps), sup_rho=float(sup_rho), sup_u=float(sup_u),
            sup_chi=float(sup_chi), cells_used=int(cells), status=status))
    ok = [r for r in reports if r.status == "ok"]
    monotone = all(
        b.sup_rho <= a.sup_rho * 1.05 and b.sup_u <= a.sup_u * 1.05
        for a, b in zip(ok, ok[1:])
    )
    return SweepResult(reports=tuple(reports),
                       verdict="monotone" if monotone else "non-monotone")


def read_config_file(path) -> dict:
    """Plain-text key-value config: 'key = value' lines, '#' comments."""
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
            raise ValidationError(f"{path}:{ln}: expected 'key = value', got {raw!r}")
        out[key.strip()] = value.strip()
    return out
