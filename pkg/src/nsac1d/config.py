"""Solver configuration and experiment presets.

The interface thickness eps plays three tied roles: capillary
coefficient eps**2, Allen-Cahn mobility c_L/eps, and relaxation time of
the Jin-Xin source.  A single eps in the config drives all three.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ValidationError, VacuumError
from .model import Frame, GasLaw, State
from .riemann import solve_riemann_general

PRESETS = ("fig1", "two_wave")


@dataclass(frozen=True)
class SolverConfig:
    """Discretization and model parameters of one simulation."""

    eps: float
    domain: tuple[float, float]
    n_cells: int
    t_end: float
    gamma: float = 1.4
    a: float | str = "auto"
    cfl: float = 0.45
    mobility_const: float = 1.0
    stabilizer: float = 2.0
    boundary: str = "outflow"
    order: int = 2
    limiter: str = "minmod"
    preset: str | None = None

    def __post_init__(self):
        if not self.eps > 0.0:
            raise ValidationError(f"eps must be positive, got {self.eps}")
        if self.n_cells < 16:
            raise ValidationError(f"need at least 16 cells, got {self.n_cells}")
        if not (0.0 < self.cfl < 1.0):
            raise ValidationError(f"cfl must lie in (0, 1), got {self.cfl}")
        if not self.domain[1] > self.domain[0]:
            raise ValidationError(f"empty domain {self.domain}")
        if self.t_end < 0.0:
            raise ValidationError(f"t_end must be nonnegative, got {self.t_end}")
        if self.gamma <= 1.0:
            raise ValidationError(f"gamma must exceed 1, got {self.gamma}")
        if self.boundary != "outflow":
            raise ValidationError(f"unsupported boundary rule {self.boundary!r}")
        if self.order not in (1, 2):
            raise ValidationError(f"order must be 1 or 2, got {self.order}")
        if self.limiter != "minmod":
            raise ValidationError(f"unsupported limiter {self.limiter!r}")
        if self.stabilizer < 2.0:
            raise ValidationError(
                f"stabilizer must bound max|3 chi**2 - 1| = 2, got {self.stabilizer}"
            )
        if isinstance(self.a, str):
            if self.a != "auto":
                raise ValidationError(f"a must be a positive number or 'auto', got {self.a!r}")
        elif not self.a > 0.0:
            raise ValidationError(f"a must be positive, got {self.a}")
        if self.mobility_const <= 0.0:
            raise ValidationError(f"mobility_const must be positive, got {self.mobility_const}")

    @property
    def law(self) -> GasLaw:
        return GasLaw(self.gamma)

    @property
    def dx(self) -> float:
        return (self.domain[1] - self.domain[0]) / self.n_cells

    @property
    def x_centers(self) -> np.ndarray:
        lo = self.domain[0]
        return lo + (np.arange(self.n_cells) + 0.5) * self.dx


def preset_config(name: str, **overrides) -> SolverConfig:
    """Canonical configuration of a named experiment."""
    if name == "fig1":
        base = dict(eps=4e-4, domain=(0.0, 1.0), n_cells=1000, t_end=0.2)
    elif name == "two_wave":
        base = dict(eps=5e-4, domain=(0.0, 1.5), n_cells=2000, t_end=0.4)
    else:
        raise ValidationError(f"unknown preset {name!r}; choose from {PRESETS}")
    base.update(overrides)
    return SolverConfig(preset=name, **base)


def initial_conditions(config: SolverConfig):
    """Per-cell (rho, u, chi) of the configured preset."""
    x = config.x_centers
    if config.preset == "fig1":
        rho = np.where(x < 0.5, 1.0, 0.125)
        u = np.zeros_like(x)
        chi = np.tanh((x - 0.5) / (0.1 * math.sqrt(5.0)))
    elif config.preset == "two_wave":
        rho = np.where(x < 0.5, 1.0, np.where(x < 1.0, 0.125, 0.5))
        u = np.zeros_like(x)
        chi = np.tanh((x - 0.75) / (0.1 * math.sqrt(5.0)))
    else:
        raise ValidationError(
            f"no initial data builder for preset {config.preset!r}; "
            "pass explicit initial fields"
        )
    return rho, u, chi


def piecewise_states(law: GasLaw, rho: np.ndarray, u: np.ndarray) -> list[State]:
    """Representative constant states of piecewise-constant initial data."""
    rho = np.asarray(rho, dtype=float)
    u = np.asarray(u, dtype=float)
    jumps = np.nonzero(
        (np.abs(np.diff(rho)) > 1e-12 * max(1.0, float(np.max(rho))))
        | (np.abs(np.diff(u)) > 1e-12 * max(1.0, float(np.max(np.abs(u)))))
    )[0]
    bounds = [0, *list(jumps + 1), rho.size]
    states = []
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        mid = (lo + hi) // 2
        states.append(State.eulerian(float(rho[mid]), float(u[mid])))
    return states


def auto_subchar_speed(law: GasLaw, rho: np.ndarray, u: np.ndarray,
                       margin: float = 1.2) -> float:
    """Relaxation speed dominating the Eulerian signal speeds of the run.

    The frozen speeds +-a must enclose u +- c of every state the solution
    visits.  The initial constant states alone are not enough: the middle
    states created by the breaking initial jumps carry the fastest
    signals, so each adjacent pair (and the outermost pair) is solved
    exactly and the middle states join the candidate set.
    """
    base = piecewise_states(law, rho, u)
    candidates = list(base)
    pairs = list(zip(base[:-1], base[1:]))
    if len(base) > 2:
        pairs.append((base[0], base[-1]))
    for sl, sr in pairs:
        try:
            sol = solve_riemann_general(law, sl, sr, frame=Frame.EULERIAN)
        except VacuumError:
            continue
        candidates.append(sol.middle)
    speed = max(abs(s.u) + float(law.sound_speed_rho(s.rho)) for s in candidates)
    # cover any smooth variation the piecewise detection may have missed
    speed = max(speed, float(np.max(np.abs(u) + law.sound_speed_rho(rho))))
    return margin * speed


def resolve_config(config: SolverConfig, rho: np.ndarray, u: np.ndarray) -> SolverConfig:
    """Replace a == 'auto' with a concrete relaxation speed."""
    if config.a != "auto":
        return config
    a = auto_subchar_speed(config.law, rho, u)
    return replace(config, a=a)
