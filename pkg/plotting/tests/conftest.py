"""Synthetic inputs matching the documented nsac1d file schemas."""

import numpy as np
import pytest


def write_snapshot(path, n=200, width=0.05, shock_at=0.7, seedless_shift=0.0):
    """Snapshot CSV with a rarefaction-ish ramp, a jump and a tanh phase."""
    x = (np.arange(n) + 0.5) / n
    rho = np.where(x < shock_at, 1.0 - 0.5 * np.clip((x - 0.2) / 0.2, 0, 1), 0.3)
    u = np.where(x < shock_at, 0.8 * np.clip((x - 0.2) / 0.2, 0, 1), 0.1)
    chi = np.tanh((x - 0.5 - seedless_shift) / width)
    data = np.column_stack([x, rho, u, chi])
    np.savetxt(path, data, fmt="%.17g", delimiter=",", header="x,rho,u,chi",
               comments="")
    return path


def write_sweep_report(path, rows):
    lines = ["eps,sup_rho,sup_u,sup_chi,cells_used,status"]
    for eps, sup_rho, sup_u, sup_chi, cells, status in rows:
        lines.append(f"{eps:.17g},{sup_rho},{sup_u},{sup_chi},{cells},{status}")
    path.write_text("\n".join(lines) + "\n")
    return path


def write_exact_general(path, x_jump=0.5):
    """Eulerian rarefaction + shock pattern (values self-consistent enough
    for rendering; exactness is not needed to draw an overlay)."""
    path.write_text("\n".join([
        "kind = general_riemann",
        "frame = eulerian",
        "gamma = 1.3999999999999999",
        f"x_jump = {x_jump}",
        "rho_left = 1",
        "u_left = 0",
        "rho_middle = 0.37917913831375466",
        "u_middle = 1.0430068734039093",
        "rho_right = 0.125",
        "u_right = 0",
        "wave1_kind = rarefaction",
        "wave1_head = -1.1832159566199232",
        "wave1_tail = 0.068392291464767885",
        "wave2_kind = shock",
        "wave2_speed = 1.5559359046391745",
    ]) + "\n")
    return path


def write_exact_fan(path):
    path.write_text("\n".join([
        "kind = two_shock_fan",
        "frame = lagrangian",
        "gamma = 1.3999999999999999",
        "v_minus = 0.8", "u_minus = 0.27",
        "v_star = 1.0", "u_star = 0",
        "v_plus = 0.8", "u_plus = -0.27",
        "s1 = -1.354", "s2 = 1.354",
        "x2_init = 0", "x1_init = 1",
        "x0 = 0.5", "t0 = 0.369",
        "v_star_post = 0.646", "u_star_post = 0",
        "s1_post = -1.76", "s2_post = 1.76",
    ]) + "\n")
    return path


@pytest.fixture
def snapshot_set(tmp_path):
    files = []
    labels = []
    for k, eps in enumerate(("0.003", "0.0015", "0.0008")):
        f = tmp_path / f"fig1_eps{eps}_t0.2.csv"
        write_snapshot(f, width=0.02 + 0.01 * k)
        files.append(f)
        labels.append(eps)
    return files, labels
