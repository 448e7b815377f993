"""Command-line interface.

Subcommands: riemann (exact wave algebra), profile (relaxation shock
profile to delimited text), simulate (finite-volume run to snapshot
CSVs), sweep (epsilon convergence study).  Exit codes: 0 success,
2 validation error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import io as nio
from .config import SolverConfig, preset_config
from .errors import NumericalError, ValidationError
from .harness import RegionSpec, epsilon_sweep, exact_pattern
from .model import Frame, GasLaw, State
from .profiles import compute_profile, lambda_along
from .riemann import build_wave_fan, hugoniot_locus, solve_riemann_general
from .solver import run


def _pair(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'a,b', got {text!r}")
    return float(parts[0]), float(parts[1])


def _floats(text: str):
    return [float(p) for p in text.split(",") if p.strip()]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nsac", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("riemann", help="exact wave algebra for a state pair")
    p.add_argument("--gamma", type=float, default=1.4)
    p.add_argument("--left", type=_pair, required=True, metavar="V,U")
    p.add_argument("--right", type=_pair, required=True, metavar="V,U")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--two-shock", action="store_true", default=None,
                      help="colliding two-shock fan (default)")
    mode.add_argument("--general", action="store_true",
                      help="general pattern with rarefactions")
    p.add_argument("--eulerian", action="store_true",
                   help="states given as rho,u; Eulerian speeds in the output")
    p.add_argument("--x-jump", type=float, default=0.0,
                   help="initial jump position for --general")
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("profile", help="relaxation shock profile as delimited text")
    p.add_argument("--gamma", type=float, default=1.4)
    p.add_argument("--family", type=int, choices=(1, 2), required=True)
    p.add_argument("--left", type=_pair, required=True, metavar="V,U")
    p.add_argument("--vright", type=float, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("simulate", help="finite-volume run to snapshot CSVs")
    p.add_argument("--preset", choices=("fig1", "two_wave"))
    p.add_argument("--config", type=Path, help="key = value file; flags override")
    p.add_argument("--eps", type=float)
    p.add_argument("--dx", type=float)
    p.add_argument("--cfl", type=float)
    p.add_argument("--t-end", type=float)
    p.add_argument("--out-times", type=_floats, metavar="T1,T2,...")
    p.add_argument("--order", type=int, choices=(1, 2))
    p.add_argument("--a", type=float)
    p.add_argument("--outdir", type=Path)

    p = sub.add_parser("sweep", help="epsilon sweep against the exact solution")
    p.add_argument("--preset", choices=("fig1", "two_wave"))
    p.add_argument("--config", type=Path, help="key = value file; flags override")
    p.add_argument("--eps-list", type=_floats, metavar="E1,E2,...")
    p.add_argument("--h", type=float)
    p.add_argument("--t", type=float)
    p.add_argument("--dx", type=float)
    p.add_argument("--cfl", type=float)
    p.add_argument("--order", type=int, choices=(1, 2))
    p.add_argument("--outdir", type=Path)
    return ap


_CONFIG_CASTS = {
    "eps": float, "dx": float, "cfl": float, "t_end": float, "h": float,
    "t": float, "a": float, "order": int, "preset": str, "outdir": Path,
    "out_times": _floats, "eps_list": _floats,
}


def _merge_config_file(args: argparse.Namespace) -> None:
    """Fill unset flags from the key-value config file."""
    if getattr(args, "config", None) is None:
        return
    for key, raw in nio.read_config_file(args.config).items():
        dest = key.replace("-", "_")
        if dest not in _CONFIG_CASTS:
            raise ValidationError(f"unknown config key {key!r}")
        if getattr(args, dest, None) is None:
            setattr(args, dest, _CONFIG_CASTS[dest](raw))


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _cmd_riemann(args) -> int:
    law = GasLaw(args.gamma)
    make = State.eulerian if args.eulerian else State.lagrangian
    left = make(*args.left)
    right = make(*args.right)
    if args.general:
        frame = Frame.EULERIAN if args.eulerian else Frame.LAGRANGIAN
        sol = solve_riemann_general(law, left, right, frame=frame, x_jump=args.x_jump)
        _emit(nio.format_riemann_solution(sol), args.out)
    else:
        fan = build_wave_fan(law, left, right)
        _emit(nio.format_wave_fan(fan), args.out)
    return 0


def _cmd_profile(args) -> int:
    law = GasLaw(args.gamma)
    anchor = State.lagrangian(*args.left)
    wave = hugoniot_locus(law, anchor, args.family, args.vright, anchor_side="left")
    prof = compute_profile(law, wave, args.a)
    lam = lambda_along(law, prof)
    data = np.column_stack([prof.xi, prof.v, prof.u, lam])
    np.savetxt(args.out, data, fmt=nio.FMT, delimiter=",",
               header="xi,v,u,lambda_family", comments="")
    return 0


def _build_sim_config(args) -> SolverConfig:
    if args.preset is None:
        raise ValidationError("a preset is required (flag --preset or config file)")
    overrides = {}
    if args.eps is not None:
        overrides["eps"] = args.eps
    if args.cfl is not None:
        overrides["cfl"] = args.cfl
    if getattr(args, "t_end", None) is not None:
        overrides["t_end"] = args.t_end
    if args.order is not None:
        overrides["order"] = args.order
    if getattr(args, "a", None) is not None:
        overrides["a"] = args.a
    cfg = preset_config(args.preset, **overrides)
    if args.dx is not None:
        span = cfg.domain[1] - cfg.domain[0]
        n = round(span / args.dx)
        if abs(n * args.dx - span) > 1e-9 * span:
            raise ValidationError(f"dx = {args.dx} does not tile the domain {cfg.domain}")
        cfg = preset_config(args.preset, n_cells=int(n),
                            **{k: v for k, v in overrides.items()})
    return cfg


def _cmd_simulate(args) -> int:
    _merge_config_file(args)
    cfg = _build_sim_config(args)
    outdir = args.outdir or Path(".")
    outdir.mkdir(parents=True, exist_ok=True)
    out_times = args.out_times or [cfg.t_end]
    result = run(cfg, out_times=out_times)
    for snap in result.snapshots:
        nio.write_snapshot_csv(outdir / nio.snapshot_filename(cfg.preset, snap.t), snap)
    nio.write_run_meta(outdir / f"{cfg.preset}_meta.txt", result)
    print(f"wrote {len(result.snapshots)} snapshot(s) to {outdir}")
    return 0


def _cmd_sweep(args) -> int:
    _merge_config_file(args)
    if args.eps_list is None:
        raise ValidationError("an eps list is required (flag --eps-list or config file)")
    if args.h is None or args.t is None:
        raise ValidationError("sweep requires --h and --t")
    ns_args = argparse.Namespace(preset=args.preset, eps=None, cfl=args.cfl,
                                 t_end=None, order=args.order, a=None, dx=args.dx)
    cfg = _build_sim_config(ns_args)
    if args.t > cfg.t_end:
        cfg = preset_config(cfg.preset, n_cells=cfg.n_cells, t_end=args.t,
                            **({"cfl": args.cfl} if args.cfl else {}),
                            **({"order": args.order} if args.order else {}))
    pattern = exact_pattern(cfg)
    region = RegionSpec(h=args.h, t=args.t, pattern=pattern)
    sweep = epsilon_sweep(cfg, args.eps_list, region)

    outdir = args.outdir or Path(".")
    outdir.mkdir(parents=True, exist_ok=True)
    for rep, snap in zip(sweep.reports, sweep.snapshots):
        if snap is None:
            continue
        name = f"{cfg.preset}_eps{rep.eps:g}"
        nio.write_snapshot_csv(outdir / nio.snapshot_filename(name, snap.t), snap)
    nio.write_sweep_report(outdir / f"{cfg.preset}_sweep.csv", sweep)
    if hasattr(pattern, "wave_intervals") and not hasattr(pattern, "patterns"):
        (outdir / f"{cfg.preset}_exact.txt").write_text(
            nio.format_riemann_solution(pattern))
    print(f"verdict: {sweep.verdict}")
    for rep in sweep.reports:
        print(f"  eps={rep.eps:g} sup_rho={rep.sup_rho:.6g} "
              f"sup_u={rep.sup_u:.6g} sup_chi={rep.sup_chi:.6g} [{rep.status}]")
    return 0


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    handlers = {
        "riemann": _cmd_riemann,
        "profile": _cmd_profile,
        "simulate": _cmd_simulate,
        "sweep": _cmd_sweep,
    }
    try:
        return handlers[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
