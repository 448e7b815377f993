"""Relaxation shock profiles: traveling waves of the relaxed system.

A family-f Lax shock with speed s and end states U_l, U_r has a smooth
traveling-wave profile U(xi) solving the once-integrated equation

    (a**2 - s**2) U'(xi) = -s (U - U_e) + F(U) - F(U_e),

with U(-inf) = U_l and U(+inf) = U_r (either end works as U_e by the
jump conditions).  The linearization at an end state has eigenvalues
(lam_i(U) - s)/(a**2 - s**2), so the downstream (smaller-v) end is a
saddle and the upstream end a stable/unstable node.  The profile is the
unique orbit leaving the saddle along the family eigenvector; it is
computed here by integrating from a point displaced off the saddle by a
tiny multiple of that eigenvector and is then re-centred so that the
v-component crosses the midpoint of the end-state volumes at xi = 0.
(The full state vector at xi = 0 cannot equal the vector midpoint of the
end states: eliminating u from the once-integrated system shows the
orbit passes the volume midpoint at distance (a**2 - s**2) |v'(0)| from
the chord, so the midpoint normalization is a statement about v alone.)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .errors import (
    NumericalError,
    SingularShiftError,
    TruncationRadiusError,
    ValidationError,
)
from .model import GasLaw, State, eigenvalues

_trapz = getattr(np, "trapezoid", None) or np.trapz


@dataclass(frozen=True)
class ShockProfile:
    """Sampled traveling-wave profile of one relaxation shock.

    Samples live on the uniform grid ``xi``; evaluation applies the
    stored ``shift`` b, i.e. ``eval(xi)`` interpolates the samples at
    xi + b, with constant extrapolation beyond the truncation radius.
    """

    family: int
    speed: float
    left_state: State
    right_state: State
    a: float
    xi: np.ndarray
    v: np.ndarray
    u: np.ndarray
    shift: float = 0.0

    @property
    def strength(self) -> float:
        return math.hypot(self.right_state.v - self.left_state.v,
                          self.right_state.u - self.left_state.u)

    @property
    def step(self) -> float:
        return float(self.xi[1] - self.xi[0]) if self.xi.size > 1 else 0.0

    def eval(self, xi_query):
        """(v, u) at the shifted traveling coordinate, vectorized."""
        q = np.asarray(xi_query, dtype=float) + self.shift
        return np.interp(q, self.xi, self.v), np.interp(q, self.xi, self.u)

    def deviations(self):
        """Euclidean distance of each sample from the nearer end state."""
        dl = np.hypot(self.v - self.left_state.v, self.u - self.left_state.u)
        dr = np.hypot(self.v - self.right_state.v, self.u - self.right_state.u)
        return dl, dr

    def with_shift(self, b: float) -> "ShockProfile":
        return replace(self, shift=self.shift + b)


def _flux(law: GasLaw, v, u):
    return -u, law.pressure_v(v)


def compute_profile(
    law: GasLaw,
    wave,
    a: float,
    truncation_radius: float | None = None,
    step: float | None = None,
) -> ShockProfile:
    """Construct the relaxation shock profile of an admissible wave.

    Parameters
    ----------
    law : GasLaw
    wave : ShockWave
        Admissible Lax shock (or a zero-strength wave, which yields a
        constant profile).
    a : float
        Relaxation speed; must dominate both |wave.speed| and the
        characteristic speed over the profile's volume range.
    truncation_radius : float, optional
        Half-width of the sampled grid.  Defaults to 40 / c_est with
        c_est the slower of the two linearized end decay rates, placing
        the truncated tails (~ exp(-40)) far below the end-state
        tolerance.
    step : float, optional
        Uniform grid spacing, default truncation_radius / 30000 (small
        enough that centred finite differences of the samples meet the
        profile ODE residual tolerance of 1e-6 times the strength).

    Raises
    ------
    ValidationError
        If a does not dominate the wave or characteristic speeds.
    TruncationRadiusError
        If the end-state residual at the truncation radius exceeds
        1e-6 times the wave strength.
    """
    s = wave.speed
    left, right = wave.left.to_lagrangian(), wave.right.to_lagrangian()
    delta = math.hypot(right.v - left.v, right.u - left.u)

    if a * a <= s * s:
        raise ValidationError(
            f"profile ODE degenerate: a**2 - s**2 = {a * a - s * s:.3e} <= 0"
        )
    v_lo = min(left.v, right.v)
    if a <= float(law.char_speed_v(v_lo)):
        raise ValidationError(
            "relaxation speed does not dominate the characteristic speed "
            f"over the profile volume range: a = {a}, "
            f"max sqrt(-p') = {float(law.char_speed_v(v_lo)):.6g}"
        )

    if delta == 0.0:
        r = truncation_radius if truncation_radius is not None else 1.0
        h = step if step is not None else r / 100.0
        m = max(1, int(math.ceil(r / h)))
        xi = np.linspace(-m * h, m * h, 2 * m + 1)
        return ShockProfile(wave.family, s, left, right, a,
                            xi, np.full_like(xi, left.v), np.full_like(xi, left.u))

    fam = wave.family
    denom = a * a - s * s
    # downstream = compressed side = smaller volume; saddle of the ODE
    down, up = (right, left) if right.v < left.v else (left, right)
    lam_down = eigenvalues(law, down)[fam - 1]
    lam_up = eigenvalues(law, up)[fam - 1]
    r_saddle = abs(lam_down - s) / denom
    r_node = abs(s - lam_up) / denom
    c_est = min(r_saddle, r_node)

    radius = truncation_radius if truncation_radius is not None else 40.0 / c_est
    h = step if step is not None else radius / 30000.0
    if not (radius > 0 and 0 < h < radius):
        raise ValidationError(f"bad grid: radius {radius}, step {h}")

    # shoot off the saddle along the family eigenvector, oriented into the
    # profile (v increases away from the downstream end)
    e = np.array([1.0, -lam_down])
    e /= np.linalg.norm(e)
    eta = 1e-8 * delta
    u0 = np.array([down.v, down.u]) + eta * e
    target = np.array([up.v, up.u])
    direction = 1.0 if fam == 2 else -1.0   # sigma advances toward the node

    f_end = np.array(_flux(law, down.v, down.u))

    def rhs(_sigma, y):
        fv, fu = _flux(law, y[0], y[1])
        return direction / denom * np.array([
            -s * (y[0] - down.v) + fv - f_end[0],
            -s * (y[1] - down.u) + fu - f_end[1],
        ])

    # keep the stop threshold above the integrator's accuracy floor while
    # staying far below the 1e-6*delta end-state tolerance
    stop_tol = max(1e-10, 1e-8 * delta)

    def settled(_sigma, y):
        return np.hypot(y[0] - target[0], y[1] - target[1]) - stop_tol

    settled.terminal = True
    settled.direction = -1

    # DOP853: its high-order dense output keeps the interpolation error far
    # below the finite-difference residual tolerance on the sample grid
    sigma_max = 400.0 / c_est
    sol = solve_ivp(rhs, (0.0, sigma_max), u0, method="DOP853",
                    rtol=1e-12, atol=1e-15 * (1.0 + delta),
                    dense_output=True, events=settled)
    if not sol.success:
        raise NumericalError(f"profile integration failed: {sol.message}")
    if sol.status != 1:
        raise NumericalError(
            "profile orbit did not settle at the far state within "
            f"sigma = {sigma_max:.3g}; final deviation "
            f"{settled(0.0, sol.y[:, -1]) + stop_tol:.3e}"
        )
    sigma_end = float(sol.t_events[0][0])

    v_mid = 0.5 * (left.v + right.v)
    sigma_mid = brentq(lambda t: sol.sol(t)[0] - v_mid, 0.0, sigma_end,
                       xtol=1e-14, maxiter=200)

    m = int(math.ceil(radius / h))
    xi = np.linspace(-m * h, m * h, 2 * m + 1)
    sigma = direction * xi + sigma_mid

    v = np.empty_like(xi)
    u = np.empty_like(xi)
    tail = sigma < 0.0
    body = (sigma >= 0.0) & (sigma <= sigma_end)
    far = sigma > sigma_end
    if np.any(tail):
        decay = eta * np.exp(r_saddle * sigma[tail])
        v[tail] = down.v + decay * e[0]
        u[tail] = down.u + decay * e[1]
    if np.any(body):
        y = sol.sol(sigma[body])
        v[body] = y[0]
        u[body] = y[1]
    if np.any(far):
        # smooth linearized continuation of the residual deviation; a hard
        # cut to the end state would leave a stop_tol/step kink in the
        # finite-difference residual
        d_end = sol.sol(sigma_end) - target
        decay = np.exp(-r_node * (sigma[far] - sigma_end))
        v[far] = up.v + d_end[0] * decay
        u[far] = up.u + d_end[1] * decay

    prof = ShockProfile(fam, s, left, right, a, xi, v, u)
    res_l = math.hypot(v[0] - left.v, u[0] - left.u)
    res_r = math.hypot(v[-1] - right.v, u[-1] - right.u)
    if max(res_l, res_r) > 1e-6 * delta:
        raise TruncationRadiusError(
            "truncation radius too small: end-state residuals "
            f"({res_l:.3e}, {res_r:.3e}) exceed {1e-6 * delta:.3e}"
        )
    return prof


# ---------------------------------------------------------------------------
# diagnostics used by the test and acceptance suites
# ---------------------------------------------------------------------------

def profile_ode_residual(law: GasLaw, profile: ShockProfile) -> float:
    """Max-norm residual of the once-integrated profile ODE on the samples.

    Substitutes a centred finite-difference derivative of the stored
    samples into (a**2 - s**2) U' + s (U - U_e) - F(U) + F(U_e).
    """
    s, a = profile.speed, profile.a
    v, u, h = profile.v, profile.u, profile.step
    ref = profile.right_state
    f_ref = np.array(_flux(law, ref.v, ref.u))
    dv = (v[2:] - v[:-2]) / (2.0 * h)
    du = (u[2:] - u[:-2]) / (2.0 * h)
    fv, fu = _flux(law, v[1:-1], u[1:-1])
    res_v = (a * a - s * s) * dv + s * (v[1:-1] - ref.v) - fv + f_ref[0]
    res_u = (a * a - s * s) * du + s * (u[1:-1] - ref.u) - fu + f_ref[1]
    return float(np.max(np.hypot(res_v, res_u)))


def end_state_residuals(profile: ShockProfile) -> tuple[float, float]:
    """Euclidean distance of the first/last sample from the end states."""
    dl, dr = profile.deviations()
    return float(dl[0]), float(dr[-1])


def lambda_along(law: GasLaw, profile: ShockProfile) -> np.ndarray:
    """Family eigenvalue evaluated along the sampled profile."""
    c = law.char_speed_v(profile.v)
    return -c if profile.family == 1 else c


def lambda_monotone(law: GasLaw, profile: ShockProfile,
                    floor_rel: float = 1e-6) -> bool:
    """Check that the family eigenvalue decreases along the profile.

    Strict decrease is required wherever the profile is farther than
    ``floor_rel`` times the strength from both end states (the profile is
    only constructed to 1e-6 of its strength); in the tails, where the
    exponentially small deviations fall below construction and roundoff
    accuracy, ties are tolerated but increases beyond noise level are not.
    """
    lam = lambda_along(law, profile)
    diffs = np.diff(lam)
    dl, dr = profile.deviations()
    floor = floor_rel * max(profile.strength, 1e-300)
    active = (dl[:-1] > floor) & (dr[:-1] > floor) & (dl[1:] > floor) & (dr[1:] > floor)
    if np.any(diffs[active] >= 0.0):
        return False
    tol = 1e-9 * float(np.max(np.abs(lam)))
    return not np.any(diffs > tol)


def measured_decay_rate(profile: ShockProfile, side: str = "both",
                        window=(1e-7, 1e-2)) -> float:
    """Exponential tail decay rate fitted on log deviation vs xi.

    Fits a straight line to log ||U(xi) - U_end|| over the window where
    the deviation is between ``window`` times the strength, separately on
    each requested side, and returns the (mean) slope magnitude.
    """
    dl, dr = profile.deviations()
    delta = profile.strength
    rates = []
    if side in ("left", "both"):
        m = (dl > window[0] * delta) & (dl < window[1] * delta) & (profile.xi < 0)
        if np.count_nonzero(m) < 8:
            raise NumericalError("too few tail samples on the left side")
        slope = np.polyfit(profile.xi[m], np.log(dl[m]), 1)[0]
        rates.append(abs(slope))
    if side in ("right", "both"):
        m = (dr > window[0] * delta) & (dr < window[1] * delta) & (profile.xi > 0)
        if np.count_nonzero(m) < 8:
            raise NumericalError("too few tail samples on the right side")
        slope = np.polyfit(profile.xi[m], np.log(dr[m]), 1)[0]
        rates.append(abs(slope))
    return float(np.mean(rates))


def derivative_comparability(law: GasLaw, profile: ShockProfile,
                             interior_rel: float = 1e-4):
    """Ratio bounds of |d lambda / d xi| to |dU / d xi| over the interior.

    Returns (c_low, c_high) with the property that the ratio stays inside
    [c_low, c_high] wherever the state derivative exceeds ``interior_rel``
    times its maximum.
    """
    h = profile.step
    dv = (profile.v[2:] - profile.v[:-2]) / (2.0 * h)
    du = (profile.u[2:] - profile.u[:-2]) / (2.0 * h)
    lam = lambda_along(law, profile)
    dlam = np.abs((lam[2:] - lam[:-2]) / (2.0 * h))
    dU = np.hypot(dv, du)
    mask = dU > interior_rel * float(np.max(dU))
    ratio = dlam[mask] / dU[mask]
    return float(np.min(ratio)), float(np.max(ratio))


# ---------------------------------------------------------------------------
# superposition and outgoing-profile shifts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SuperposedProfile:
    """Two single-wave profiles glued through a common anchor state.

    value(y, tau) = p1(y - s1 tau) + p2(y - s2 tau) - anchor, each profile
    evaluated with its own stored shift.
    """

    p1: ShockProfile
    p2: ShockProfile
    anchor: State

    def value(self, y, tau: float = 0.0):
        y = np.asarray(y, dtype=float)
        v1, u1 = self.p1.eval(y - self.p1.speed * tau)
        v2, u2 = self.p2.eval(y - self.p2.speed * tau)
        return v1 + v2 - self.anchor.v, u1 + u2 - self.anchor.u


def _touches(profile: ShockProfile, anchor: State, tol: float) -> bool:
    for end in (profile.left_state, profile.right_state):
        if math.hypot(end.v - anchor.v, end.u - anchor.u) <= tol:
            return True
    return False


def superpose(p1: ShockProfile, p2: ShockProfile, anchor: State) -> SuperposedProfile:
    """Glue two profiles through the anchor they share.

    Before the interaction the anchor is the common upstream middle state
    (p1 left end, p2 right end); after it the common downstream middle
    (p1 right end, p2 left end).  A mismatch beyond 1e-8 is rejected.
    """
    anchor = anchor.to_lagrangian()
    tol = 1e-8 * (1.0 + math.hypot(anchor.v, anchor.u))
    for p in (p1, p2):
        if not _touches(p, anchor, tol):
            raise ValidationError(
                "superposition anchor does not match an end state of each profile"
            )
    return SuperposedProfile(p1=p1, p2=p2, anchor=anchor)


def compute_shifts(
    law: GasLaw,
    y: np.ndarray,
    field: np.ndarray,
    outgoing: SuperposedProfile,
    u_minus: State,
    u_plus: State,
    tol: float = 1e-10,
    max_iter: int = 30,
) -> tuple[float, float]:
    """Shifts (b1, b2) that zero the integrated outgoing perturbation.

    The integral I(b1, b2) of field - shifted superposition over y is
    exactly linear in the shifts with slopes -nu1 and -nu2, where
    nu1 = anchor - U_minus and nu2 = U_plus - anchor are the outgoing
    state jumps, so I0 = b1 nu1 + b2 nu2 is solved directly and polished
    with a couple of Newton corrections on the trapezoid functional.

    Parameters
    ----------
    y : ndarray
        Sample coordinates, increasing, covering the decayed tails.
    field : ndarray, shape (len(y), 2)
        Sampled (v, u) of the state whose mass is being matched at tau=0.
    outgoing : SuperposedProfile
        Unshifted (or previously shifted) outgoing superposition.
    u_minus, u_plus : State
        Far-field states of the outgoing configuration.
    """
    y = np.asarray(y, dtype=float)
    field = np.asarray(field, dtype=float)
    if field.shape != (y.size, 2):
        raise ValidationError(f"field must have shape (len(y), 2), got {field.shape}")
    um, up = u_minus.to_lagrangian(), u_plus.to_lagrangian()

    scale = 1.0 + float(np.max(np.abs(field)))
    d_lo = math.hypot(field[0, 0] - um.v, field[0, 1] - um.u)
    d_hi = math.hypot(field[-1, 0] - up.v, field[-1, 1] - up.u)
    if max(d_lo, d_hi) > 1e-6 * scale:
        raise ValidationError(
            "field does not decay to the far states at the domain ends "
            f"(residuals {d_lo:.3e}, {d_hi:.3e})"
        )

    anchor = outgoing.anchor
    nu = np.array([[anchor.v - um.v, up.v - anchor.v],
                   [anchor.u - um.u, up.u - anchor.u]])
    det = abs(np.linalg.det(nu))
    n1 = np.hypot(nu[0, 0], nu[1, 0])
    n2 = np.hypot(nu[0, 1], nu[1, 1])
    if det <= 1e-12 * n1 * n2:
        raise SingularShiftError(
            "outgoing state jumps are numerically parallel; shifts are undetermined"
        )

    p1, p2 = outgoing.p1, outgoing.p2

    def integral(b1: float, b2: float) -> np.ndarray:
        v1, u1 = p1.eval(y + b1)
        v2, u2 = p2.eval(y + b2)
        dv = field[:, 0] - (v1 + v2 - anchor.v)
        du = field[:, 1] - (u1 + u2 - anchor.u)
        return np.array([_trapz(dv, y), _trapz(du, y)])

    i0 = integral(0.0, 0.0)
    b = np.linalg.solve(nu, i0)
    target = tol * (1.0 + float(np.linalg.norm(i0)))
    for _ in range(max_iter):
        res = integral(b[0], b[1])
        if float(np.linalg.norm(res)) <= target:
            break
        b += np.linalg.solve(nu, res)
    else:
        raise NumericalError(
            f"shift refinement stalled with residual {float(np.linalg.norm(res)):.3e}"
        )
    return float(b[0]), float(b[1])


def shift_residual(y, field, outgoing: SuperposedProfile, b1: float, b2: float) -> float:
    """Norm of the integrated difference after applying candidate shifts."""
    y = np.asarray(y, dtype=float)
    field = np.asarray(field, dtype=float)
    v1, u1 = outgoing.p1.eval(y + b1)
    v2, u2 = outgoing.p2.eval(y + b2)
    dv = field[:, 0] - (v1 + v2 - outgoing.anchor.v)
    du = field[:, 1] - (u1 + u2 - outgoing.anchor.u)
    return float(np.hypot(_trapz(dv, y), _trapz(du, y)))
