"""Finite-volume Jin-Xin relaxation solver for the 1D Eulerian system.

One step advances, in order:

  (i)   linear relaxation transport U_t + V_x = 0, V_t + a**2 U_x = 0,
        upwinded exactly in the diagonal variables w+- = V +- a U
        (speeds +-a); order 2 adds minmod-limited reconstruction of w+-
        and a Heun stage,
  (ii)  the stiff source V_t = (F(U) - V)/eps integrated exactly at
        frozen U,
  (iii) the capillary momentum flux (eps**2/2) chi_x**2 as a conservative
        face difference,
  (iv)  phase-field advection (monotone upwind) followed by the
        stabilized semi-implicit Allen-Cahn update with explicit cubic,
        implicit stabilizer and implicit Laplacian (one tridiagonal
        solve).

The time step dt = cfl dx / a is set by the frozen transport speeds, so
stability is independent of eps.  The Allen-Cahn matrix is an M-matrix
with row sums 1 + dt c_L S / eps, which gives |chi| <= 1 exactly up to
linear-solver roundoff; the clamp below only logs that roundoff.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_banded

from .config import SolverConfig, initial_conditions, resolve_config
from .errors import NumericalError, ValidationError

ArrayF = np.ndarray


@dataclass(frozen=True)
class FieldSnapshot:
    """Cell-averaged fields at one instant, plus the relaxation variables."""

    t: float
    x_centers: ArrayF
    rho: ArrayF
    m: ArrayF
    chi: ArrayF
    v_aux: ArrayF   # shape (2, n_cells)

    @property
    def u(self) -> ArrayF:
        return self.m / self.rho

    def validate(self) -> "FieldSnapshot":
        n = self.x_centers.size
        for name in ("rho", "m", "chi"):
            if getattr(self, name).shape != (n,):
                raise ValidationError(f"field {name} has wrong length")
        if self.v_aux.shape != (2, n):
            raise ValidationError("v_aux must have shape (2, n_cells)")
        if np.any(self.rho <= 0.0):
            bad = int(np.argmax(self.rho <= 0.0))
            raise ValidationError(f"non-positive density at cell {bad}")
        if np.any(np.abs(self.chi) > 1.0 + 1e-12):
            bad = int(np.argmax(np.abs(self.chi) > 1.0 + 1e-12))
            raise ValidationError(f"|chi| exceeds 1 at cell {bad}")
        return self


@dataclass
class LedgerRow:
    t: float
    mass: float
    momentum: float
    mass_flux_integral: float
    momentum_flux_integral: float
    mass_defect_rel: float
    momentum_defect_rel: float
    chi_overshoot: float
    subchar_margin: float
    nu_eff_min: float
    nu_eff_max: float


@dataclass
class ConservationLedger:
    """Running totals versus accumulated boundary fluxes."""

    dx: float
    mass0: float
    momentum0: float
    rows: list[LedgerRow] = field(default_factory=list)

    def record(self, t, rho, m, mass_flux_int, mom_flux_int,
               chi_overshoot, subchar_margin, nu_bounds):
        mass = float(np.sum(rho)) * self.dx
        mom = float(np.sum(m)) * self.dx
        mom_scale = max(abs(self.momentum0), abs(mom_flux_int), self.mass0)
        self.rows.append(LedgerRow(
            t=t, mass=mass, momentum=mom,
            mass_flux_integral=mass_flux_int,
            momentum_flux_integral=mom_flux_int,
            mass_defect_rel=abs(mass - self.mass0 - mass_flux_int) / self.mass0,
            momentum_defect_rel=abs(mom - self.momentum0 - mom_flux_int) / mom_scale,
            chi_overshoot=chi_overshoot,
            subchar_margin=subchar_margin,
            nu_eff_min=nu_bounds[0], nu_eff_max=nu_bounds[1],
        ))


@dataclass
class RunResult:
    config: SolverConfig
    snapshots: list[FieldSnapshot]
    ledger: ConservationLedger
    wall_time: float


def equilibrium_v(config: SolverConfig, rho: ArrayF, m: ArrayF) -> ArrayF:
    """Local-equilibrium relaxation variables V = F(U) (bare flux; the
    capillary contribution is applied as its own flux step)."""
    u = m / rho
    return np.stack([m, m * u + rho ** config.gamma])


def initialize(config: SolverConfig, initial=None) -> FieldSnapshot:
    """Snapshot at t = 0 with V at local equilibrium."""
    if initial is None:
        initial = initial_conditions(config)
    rho, u, chi = (np.asarray(f, dtype=float).copy() for f in initial)
    n = config.n_cells
    if rho.shape != (n,) or u.shape != (n,) or chi.shape != (n,):
        raise ValidationError(
            f"initial fields must have length n_cells = {n}, got "
            f"{rho.shape}, {u.shape}, {chi.shape}"
        )
    if np.any(rho <= 0.0):
        bad = int(np.argmax(rho <= 0.0))
        raise ValidationError(f"non-positive initial density at cell {bad}")
    m = rho * u
    snap = FieldSnapshot(t=0.0, x_centers=config.x_centers, rho=rho, m=m,
                         chi=chi, v_aux=equilibrium_v(config, rho, m))
    return snap.validate()


def _minmod(d_left: ArrayF, d_right: ArrayF) -> ArrayF:
    same = (d_left * d_right) > 0.0
    return np.where(same, np.sign(d_left) * np.minimum(np.abs(d_left), np.abs(d_right)), 0.0)


def _transport_rhs(U: ArrayF, V: ArrayF, a: float, dx: float, order: int):
    """Flux divergence of the linear relaxation transport, upwinded in
    the diagonal variables; returns (dU_dt, dV_dt, boundary U-fluxes)."""
    wp = V + a * U
    wm = V - a * U
    wp_p = np.pad(wp, ((0, 0), (2, 2)), mode="edge")
    wm_p = np.pad(wm, ((0, 0), (2, 2)), mode="edge")
    if order == 2:
        sp = _minmod(wp_p[:, 1:-1] - wp_p[:, :-2], wp_p[:, 2:] - wp_p[:, 1:-1])
        sm = _minmod(wm_p[:, 1:-1] - wm_p[:, :-2], wm_p[:, 2:] - wm_p[:, 1:-1])
        wp_face = wp_p[:, 1:-2] + 0.5 * sp[:, :-1]    # from the left cell
        wm_face = wm_p[:, 2:-1] - 0.5 * sm[:, 1:]     # from the right cell
    else:
        wp_face = wp_p[:, 1:-2]
        wm_face = wm_p[:, 2:-1]
    flux_u = 0.5 * (wp_face + wm_face)                # flux of U is V
    flux_v = 0.5 * a * (wp_face - wm_face)            # flux of V is a^2 U
    du = -(flux_u[:, 1:] - flux_u[:, :-1]) / dx
    dv = -(flux_v[:, 1:] - flux_v[:, :-1]) / dx
    return du, dv, flux_u[:, 0].copy(), flux_u[:, -1].copy()


def _capillary_fluxes(chi: ArrayF, eps: float, dx: float) -> ArrayF:
    """(eps**2/2) chi_x**2 on the n+1 faces, zero-gradient ghosts."""
    chi_p = np.pad(chi, 1, mode="edge")
    chi_x = (chi_p[1:] - chi_p[:-1]) / dx
    return 0.5 * eps * eps * chi_x * chi_x


def _upwind_advect(chi: ArrayF, u: ArrayF, dt: float, dx: float) -> ArrayF:
    chi_p = np.pad(chi, 1, mode="edge")
    d_minus = (chi_p[1:-1] - chi_p[:-2]) / dx
    d_plus = (chi_p[2:] - chi_p[1:-1]) / dx
    return chi - dt * np.where(u > 0.0, u * d_minus, u * d_plus)


def _allen_cahn_update(chi_star: ArrayF, rho: ArrayF, config: SolverConfig,
                       dt: float) -> ArrayF:
    """Stabilized semi-implicit step on the advected phase field."""
    n = chi_star.size
    dx2 = config.dx ** 2
    k = dt * config.mobility_const / config.eps
    s_coef = 1.0 + k * config.stabilizer
    d = dt * config.mobility_const * config.eps / rho / dx2
    rhs = s_coef * chi_star - k * (chi_star ** 3 - chi_star)

    ab = np.zeros((3, n))
    ab[0, 1:] = -d[:-1]          # upper diagonal
    ab[2, :-1] = -d[1:]          # lower diagonal
    ab[1, :] = s_coef + 2.0 * d
    ab[1, 0] = s_coef + d[0]     # zero-gradient ends
    ab[1, -1] = s_coef + d[-1]
    return solve_banded((1, 1), ab, rhs)


class _StepWorkspace:
    """Mutable arrays advanced in place by the internal stepper."""

    def __init__(self, snap: FieldSnapshot, config: SolverConfig):
        if isinstance(config.a, str):
            raise ValidationError("step requires a resolved numeric relaxation speed")
        self.config = config
        self.t = snap.t
        self.U = np.stack([snap.rho, snap.m])
        self.V = snap.v_aux.copy()
        self.chi = snap.chi.copy()
        self.mass_flux_int = 0.0
        self.mom_flux_int = 0.0
        self.chi_overshoot = 0.0
        self.subchar_margin = np.inf

    def snapshot(self, x_centers: ArrayF) -> FieldSnapshot:
        return FieldSnapshot(t=self.t, x_centers=x_centers,
                             rho=self.U[0].copy(), m=self.U[1].copy(),
                             chi=self.chi.copy(), v_aux=self.V.copy())

    def advance(self, dt: float):
        cfg = self.config
        a, dx, eps = cfg.a, cfg.dx, cfg.eps

        # (i) relaxation transport
        du1, dv1, bl1, br1 = _transport_rhs(self.U, self.V, a, dx, cfg.order)
        if cfg.order == 2:
            u_mid = self.U + dt * du1
            v_mid = self.V + dt * dv1
            du2, dv2, bl2, br2 = _transport_rhs(u_mid, v_mid, a, dx, cfg.order)
            self.U += 0.5 * dt * (du1 + du2)
            self.V += 0.5 * dt * (dv1 + dv2)
            bl = 0.5 * (bl1 + bl2)
            br = 0.5 * (br1 + br2)
        else:
            self.U += dt * du1
            self.V += dt * dv1
            bl, br = bl1, br1
        self.mass_flux_int += dt * (bl[0] - br[0])
        self.mom_flux_int += dt * (bl[1] - br[1])

        rho, m = self.U[0], self.U[1]
        if np.any(rho <= 0.0):
            bad = int(np.argmax(rho <= 0.0))
            raise NumericalError(
                f"non-positive density at cell {bad} after transport at t = {self.t:.6g}"
            )
        u = m / rho
        signal = float(np.max(np.abs(u) + cfg.law.sound_speed_rho(rho)))
        self.subchar_margin = min(self.subchar_margin, a - signal)
        if signal >= a:
            raise NumericalError(
                f"sub-characteristic condition violated at t = {self.t:.6g}: "
                f"max |u| + c = {signal:.6g} >= a = {a:.6g}; increase a"
            )

        # (ii) stiff source, exact at frozen U
        feq = equilibrium_v(cfg, rho, m)
        self.V = feq + (self.V - feq) * np.exp(-dt / eps)

        # (iii) capillary momentum flux
        phi = _capillary_fluxes(self.chi, eps, dx)
        self.U[1] -= dt / dx * (phi[1:] - phi[:-1])
        self.mom_flux_int += dt * (phi[0] - phi[-1])

        # (iv) phase-field advection + stabilized Allen-Cahn
        chi_star = _upwind_advect(self.chi, self.U[1] / rho, dt, dx)
        chi_new = _allen_cahn_update(chi_star, rho, cfg, dt)
        over = float(np.max(np.abs(chi_new))) - 1.0
        if over > 0.0:
            self.chi_overshoot = max(self.chi_overshoot, over)
            np.clip(chi_new, -1.0, 1.0, out=chi_new)
        self.chi = chi_new

        self.t += dt


def step(state: FieldSnapshot, config: SolverConfig) -> FieldSnapshot:
    """One split step of size cfl dx / a; returns a new snapshot."""
    ws = _StepWorkspace(state, config)
    ws.advance(config.cfl * config.dx / config.a)
    return ws.snapshot(state.x_centers)


def run(config: SolverConfig, initial=None, out_times=None, on_step=None) -> RunResult:
    """March to t_end, landing exactly on each requested output time.

    Parameters
    ----------
    initial : (rho, u, chi) arrays, optional
        Defaults to the preset initial data of the config.
    out_times : sequence of float, optional
        Strictly increasing times in [0, t_end]; default [t_end].
    on_step : callable, optional
        Called as on_step(snapshot_view) after every accepted step with a
        lightweight snapshot sharing the live arrays (read-only use).
    """
    t_start = time.perf_counter()
    if initial is None:
        initial = initial_conditions(config)
    config = resolve_config(config, np.asarray(initial[0], float),
                            np.asarray(initial[1], float))
    snap0 = initialize(config, initial)

    if out_times is None:
        out_times = [config.t_end]
    out_times = [float(t) for t in out_times]
    if any(t2 <= t1 for t1, t2 in zip(out_times, out_times[1:])):
        raise ValidationError("out_times must be strictly increasing")
    if out_times and (out_times[0] < 0.0 or out_times[-1] > config.t_end + 1e-12):
        raise ValidationError("out_times must lie within [0, t_end]")

    ws = _StepWorkspace(snap0, config)
    ledger = ConservationLedger(
        dx=config.dx,
        mass0=float(np.sum(snap0.rho)) * config.dx,
        momentum0=float(np.sum(snap0.m)) * config.dx,
    )

    def nu_bounds():
        u = ws.U[1] / ws.U[0]
        sig = np.abs(u) + config.law.sound_speed_rho(ws.U[0])
        a2 = config.a ** 2
        return (config.eps * float(np.min(a2 - sig ** 2)), config.eps * a2)

    def emit(t):
        s = ws.snapshot(config.x_centers)
        snapshots.append(s)
        ledger.record(t, s.rho, s.m, ws.mass_flux_int, ws.mom_flux_int,
                      ws.chi_overshoot, float(ws.subchar_margin)
                      if np.isfinite(ws.subchar_margin) else config.a,
                      nu_bounds())

    snapshots: list[FieldSnapshot] = []
    dt_cfl = config.cfl * config.dx / config.a
    queue = list(out_times)
    if queue and queue[0] == 0.0:
        emit(0.0)
        queue.pop(0)
    while queue:
        t_target = queue.pop(0)
        while ws.t < t_target - 1e-14:
            dt = min(dt_cfl, t_target - ws.t)
            ws.advance(dt)
            if on_step is not None:
                on_step(FieldSnapshot(t=ws.t, x_centers=config.x_centers,
                                      rho=ws.U[0], m=ws.U[1], chi=ws.chi,
                                      v_aux=ws.V))
        ws.t = t_target
        emit(t_target)
    return RunResult(config=config, snapshots=snapshots, ledger=ledger,
                     wall_time=time.perf_counter() - t_start)


def chemical_potential(state: FieldSnapshot, config: SolverConfig) -> ArrayF:
    """mu = (chi**3 - chi) - (eps**2/rho) chi_xx, central differences."""
    chi_p = np.pad(state.chi, 1, mode="edge")
    chi_xx = (chi_p[2:] - 2.0 * chi_p[1:-1] + chi_p[:-2]) / config.dx ** 2
    return (state.chi ** 3 - state.chi) - config.eps ** 2 / state.rho * chi_xx
