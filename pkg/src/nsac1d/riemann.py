"""Exact wave algebra for the p-system.

Hugoniot loci, two-shock fans of colliding waves, post-interaction states,
wave strengths, a piecewise-constant entropy-solution evaluator, and a
general Riemann solver (shocks and rarefactions) with self-similar
samplers in both the Lagrangian and Eulerian frames.

Conventions.  A family-1 shock moves left (s < 0) and compresses toward
its right state; a family-2 shock moves right and compresses toward its
left state.  The admissible (Lax) ordering is

    family 1:  lam1(right) < s < lam1(left) < 0
    family 2:  0 < lam2(right) < s < lam2(left)

so the downstream (compressed, smaller-v) side always carries the larger
characteristic speed of its family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import brentq

from .errors import (
    DegenerateWaveError,
    LaxConditionError,
    NumericalError,
    TwoShockConfigurationError,
    VacuumError,
    ValidationError,
)
from .model import Frame, GasLaw, State, eigenvalues, pressure


# ---------------------------------------------------------------------------
# shock curves
# ---------------------------------------------------------------------------

def shock_speed(law: GasLaw, v_a: float, v_b: float, family: int) -> float:
    """Lagrangian shock speed through volumes (v_a, v_b), signed by family.

    s**2 = -(p(v_b) - p(v_a)) / (v_b - v_a), which is positive for any
    v_a != v_b since p is strictly decreasing.
    """
    if family not in (1, 2):
        raise ValidationError(f"family must be 1 or 2, got {family}")
    if v_a == v_b:
        raise DegenerateWaveError("equal volumes give a zero-strength wave")
    s2 = -(law.pressure_v(v_b) - law.pressure_v(v_a)) / (v_b - v_a)
    s = math.sqrt(s2)
    return -s if family == 1 else s


def _u_across(law: GasLaw, v_a: float, u_a: float, v_b: float, family: int) -> float:
    """Velocity at volume v_b on the family Hugoniot through (v_a, u_a).

    Rankine-Hugoniot in the first component: u_b - u_a = -s (v_b - v_a).
    Continuous through the anchor point (zero-strength limit).
    """
    if v_b == v_a:
        return u_a
    s = shock_speed(law, v_a, v_b, family)
    return u_a - s * (v_b - v_a)


def hugoniot_residual(law: GasLaw, wave: "ShockWave") -> float:
    """Scaled Rankine-Hugoniot residual of a shock by direct substitution."""
    ul, ur = wave.left, wave.right
    f_l = np.array([-ul.u, pressure(law, ul)])
    f_r = np.array([-ur.u, pressure(law, ur)])
    du = np.array([ur.v - ul.v, ur.u - ul.u])
    res = np.linalg.norm(-wave.speed * du + f_r - f_l)
    return float(res / (1.0 + np.linalg.norm(f_l)))


def lax_margins(law: GasLaw, wave: "ShockWave") -> tuple[float, float]:
    """Strictness margins of the two Lax inequalities; both must be > 0."""
    lam_l = eigenvalues(law, wave.left)[wave.family - 1]
    lam_r = eigenvalues(law, wave.right)[wave.family - 1]
    return wave.speed - lam_r, lam_l - wave.speed


@dataclass(frozen=True)
class ShockWave:
    """A single Lax shock: family, end states and speed.

    Construct through :func:`hugoniot_locus` to get validation; direct
    construction is allowed for degenerate (zero-strength) waves used as
    fixed points of the profile ODE.
    """

    family: int
    left: State
    right: State
    speed: float

    @property
    def strength(self) -> float:
        return math.hypot(self.right.v - self.left.v, self.right.u - self.left.u)

    def validate(self, law: GasLaw, rh_tol: float = 1e-10, lax_margin: float = 1e-12):
        if hugoniot_residual(law, self) > rh_tol:
            raise NumericalError("Rankine-Hugoniot residual above tolerance")
        m_r, m_l = lax_margins(law, self)
        if not (m_r > lax_margin and m_l > lax_margin):
            raise LaxConditionError(
                f"not an admissible shock for family {self.family}: "
                f"Lax margins ({m_r:.3e}, {m_l:.3e})"
            )
        return self


def hugoniot_locus(
    law: GasLaw,
    anchor: State,
    family: int,
    v_target: float,
    anchor_side: str = "auto",
) -> ShockWave:
    """Unique Lax shock through ``anchor`` with downstream volume ``v_target``.

    The compressed (downstream) side of an admissible shock has the
    smaller specific volume, and it sits on the right for family 1 and on
    the left for family 2.  With ``anchor_side="auto"`` the anchor is
    placed on whichever side makes the wave admissible; pinning
    ``anchor_side`` to ``"left"`` or ``"right"`` instead raises
    :class:`LaxConditionError` when the requested geometry violates the
    Lax ordering.
    """
    if v_target <= 0.0:
        raise ValidationError(f"target volume must be positive, got {v_target}")
    if v_target == anchor.v:
        raise DegenerateWaveError("v_target equals the anchor volume (zero-strength wave)")
    if anchor_side not in ("auto", "left", "right"):
        raise ValidationError(f"anchor_side must be auto|left|right, got {anchor_side}")

    anchor = anchor.to_lagrangian()
    target = State.lagrangian(v_target, _u_across(law, anchor.v, anchor.u, v_target, family))

    if anchor_side == "auto":
        # smaller volume goes downstream: right for family 1, left for family 2
        small_first = v_target < anchor.v
        if family == 1:
            left, right = (anchor, target) if small_first else (target, anchor)
        else:
            left, right = (target, anchor) if small_first else (anchor, target)
    elif anchor_side == "left":
        left, right = anchor, target
    else:
        left, right = target, anchor

    s = shock_speed(law, left.v, right.v, family)
    wave = ShockWave(family=family, left=left, right=right, speed=s)
    return wave.validate(law)


# ---------------------------------------------------------------------------
# two-shock fans
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WaveFan:
    """Piecewise-constant entropy solution of two colliding Lax shocks.

    Before the interaction a 2-shock starting at ``x2_init`` runs right at
    ``s2`` into the middle state while a 1-shock starting at ``x1_init``
    runs left at ``s1``; they meet at Q = (x0, t0).  After the interaction
    the outgoing 1-shock (speed ``s1_post``) and 2-shock (``s2_post``)
    separate the doubly compressed middle state ``star_post``.
    """

    law: GasLaw
    u_minus: State
    star: State
    u_plus: State
    s2: float
    s1: float
    x2_init: float = 0.0
    x1_init: float = 1.0
    star_post: State | None = None
    s1_post: float | None = None
    s2_post: float | None = None

    @property
    def interaction_point(self) -> tuple[float, float]:
        t0 = (self.x1_init - self.x2_init) / (self.s2 - self.s1)
        return self.x2_init + self.s2 * t0, t0

    @property
    def x0(self) -> float:
        return self.interaction_point[0]

    @property
    def t0(self) -> float:
        return self.interaction_point[1]

    @property
    def has_post(self) -> bool:
        return self.star_post is not None

    def incoming_waves(self) -> tuple[ShockWave, ShockWave]:
        """(1-shock, 2-shock) of the pre-interaction configuration."""
        w1 = ShockWave(1, self.star, self.u_plus, self.s1)
        w2 = ShockWave(2, self.u_minus, self.star, self.s2)
        return w1, w2

    def outgoing_waves(self) -> tuple[ShockWave, ShockWave]:
        if not self.has_post:
            raise ValidationError("post-interaction part of the fan is not populated")
        w1 = ShockWave(1, self.u_minus, self.star_post, self.s1_post)
        w2 = ShockWave(2, self.star_post, self.u_plus, self.s2_post)
        return w1, w2

    def strengths(self) -> tuple[float, float, float, float, float]:
        return wave_strengths(self)

    # vectorized evaluation used by the experiment harness
    def sample(self, x, t: float):
        """Vectorized (v, u) of the entropy solution at time t."""
        x = np.asarray(x, dtype=float)
        x0, t0 = self.interaction_point
        if t < 0.0:
            raise ValidationError(f"time must be nonnegative, got {t}")
        v = np.empty_like(x)
        u = np.empty_like(x)
        # on a wave line the left state wins (measure-zero tie-break)
        if t <= t0 or not self.has_post:
            if t > t0:
                raise ValidationError("post-interaction part of the fan is not populated")
            b2 = self.x2_init + self.s2 * t
            b1 = self.x1_init + self.s1 * t
            regions = [(x <= b2, self.u_minus), ((x > b2) & (x <= b1), self.star),
                       (x > b1, self.u_plus)]
        else:
            b1 = x0 + self.s1_post * (t - t0)
            b2 = x0 + self.s2_post * (t - t0)
            regions = [(x <= b1, self.u_minus), ((x > b1) & (x <= b2), self.star_post),
                       (x > b2, self.u_plus)]
        for mask, state in regions:
            v[mask] = state.v
            u[mask] = state.u
        return v, u

    def wave_positions(self, t: float) -> list[float]:
        """Positions of the active wave lines at time t."""
        x0, t0 = self.interaction_point
        if t <= t0:
            return [self.x2_init + self.s2 * t, self.x1_init + self.s1 * t]
        return [x0 + self.s1_post * (t - t0), x0 + self.s2_post * (t - t0)]


def evaluate_entropy_solution(fan: WaveFan, x: float, t: float) -> State:
    """State of the piecewise-constant entropy solution at one point.

    On a wave line the left state is returned (any fixed rule works on
    this measure-zero set; the error norms exclude wave neighbourhoods).
    """
    if t < 0.0:
        raise ValidationError(f"time must be nonnegative, got {t}")
    v, u = fan.sample(np.array([x]), t)
    return State.lagrangian(float(v[0]), float(u[0]))


def _monotone_root(f, lo_hint: float, hi_hint: float, initial: float,
                   increasing: bool, max_iter: int = 100, tol: float = 1e-12):
    """Root of a strictly monotone scalar function on (0, inf).

    Newton iteration with a numerical derivative from ``initial``,
    safeguarded by bisection once a sign-changing bracket is known; the
    bracket is grown geometrically from the hints.
    """
    sgn = 1.0 if increasing else -1.0

    lo, hi = lo_hint, hi_hint
    flo, fhi = sgn * f(lo), sgn * f(hi)
    grow = 0
    while flo > 0.0 and grow < 200:
        lo *= 0.5
        flo = sgn * f(lo)
        grow += 1
    while fhi < 0.0 and grow < 400:
        hi *= 2.0
        fhi = sgn * f(hi)
        grow += 1
    if flo > 0.0 or fhi < 0.0:
        raise TwoShockConfigurationError("wave curves do not intersect at positive volume")

    x = initial if lo < initial < hi else 0.5 * (lo + hi)
    fx = f(x)
    for _ in range(max_iter):
        if abs(fx) <= tol:
            return x, fx
        h = 1e-7 * max(abs(x), 1e-3)
        dfdx = (f(x + h) - f(x - h)) / (2.0 * h)
        step_ok = dfdx != 0.0 and math.isfinite(dfdx)
        x_new = x - fx / dfdx if step_ok else 0.5 * (lo + hi)
        if not (lo < x_new < hi) or not math.isfinite(x_new):
            x_new = 0.5 * (lo + hi)
        fx_new = f(x_new)
        if sgn * fx_new > 0.0:
            hi = x_new
        else:
            lo = x_new
        x, fx = x_new, fx_new
    raise NumericalError(
        f"middle-state iteration did not converge in {max_iter} iterations; "
        f"residual {fx:.3e} at v = {x:.6g}"
    )


def solve_two_shock(
    law: GasLaw,
    u_minus: State,
    u_plus: State,
    x2_init: float = 0.0,
    x1_init: float = 1.0,
) -> WaveFan:
    """Middle state and speeds of two colliding (reverse-ordered) shocks.

    Intersects the forward 2-family Hugoniot through ``u_minus`` with the
    backward 1-family Hugoniot through ``u_plus``.  The middle state is
    the common upstream of both incoming shocks, so its volume exceeds
    both end-state volumes; data without such an intersection raise
    :class:`TwoShockConfigurationError`.
    """
    um, up = u_minus.to_lagrangian(), u_plus.to_lagrangian()

    def residual(v):
        # u along the 2-shock with u_minus downstream-left, minus
        # u along the 1-shock with u_plus downstream-right
        u_from_2 = _u_across(law, um.v, um.u, v, 2)
        u_from_1 = _u_across(law, up.v, up.u, v, 1)
        return u_from_2 - u_from_1

    v_floor = max(um.v, up.v)
    v_star, res = _monotone_root(
        residual,
        lo_hint=0.5 * min(um.v, up.v),
        hi_hint=4.0 * v_floor,
        initial=0.5 * (um.v + up.v),
        increasing=False,
    )
    if v_star <= v_floor * (1.0 + 1e-13):
        raise TwoShockConfigurationError(
            "data not a two-shock configuration: middle volume does not "
            "exceed both end-state volumes"
        )
    u_star = 0.5 * (_u_across(law, um.v, um.u, v_star, 2)
                    + _u_across(law, up.v, up.u, v_star, 1))
    star = State.lagrangian(v_star, u_star)
    s2 = shock_speed(law, um.v, v_star, 2)
    s1 = shock_speed(law, v_star, up.v, 1)
    fan = WaveFan(law=law, u_minus=um, star=star, u_plus=up, s2=s2, s1=s1,
                  x2_init=x2_init, x1_init=x1_init)
    for w in fan.incoming_waves():
        w.validate(law)
    return fan


def solve_post_interaction(law: GasLaw, u_minus: State, u_plus: State):
    """Outgoing two-shock solution: 1-shock left of 2-shock.

    Returns (star_post, s1_post, s2_post).  This is the classical
    two-shock Riemann pattern; the middle state is compressed below both
    end-state volumes.
    """
    um, up = u_minus.to_lagrangian(), u_plus.to_lagrangian()

    def residual(v):
        u_from_1 = _u_across(law, um.v, um.u, v, 1)   # u_minus upstream-left
        u_from_2 = _u_across(law, up.v, up.u, v, 2)   # u_plus upstream-right
        return u_from_1 - u_from_2

    v_ceil = min(um.v, up.v)
    v_star, res = _monotone_root(
        residual,
        lo_hint=0.25 * v_ceil,
        hi_hint=2.0 * max(um.v, up.v),
        initial=0.5 * (um.v + up.v),
        increasing=True,
    )
    if v_star >= v_ceil * (1.0 - 1e-13):
        raise TwoShockConfigurationError(
            "data not an outgoing two-shock configuration: middle volume "
            "does not drop below both end-state volumes"
        )
    u_star = 0.5 * (_u_across(law, um.v, um.u, v_star, 1)
                    + _u_across(law, up.v, up.u, v_star, 2))
    star = State.lagrangian(v_star, u_star)
    s1 = shock_speed(law, um.v, v_star, 1)
    s2 = shock_speed(law, v_star, up.v, 2)
    ShockWave(1, um, star, s1).validate(law)
    ShockWave(2, star, up, s2).validate(law)
    return star, s1, s2


def build_wave_fan(
    law: GasLaw,
    u_minus: State,
    u_plus: State,
    x2_init: float = 0.0,
    x1_init: float = 1.0,
) -> WaveFan:
    """Complete fan: incoming collision plus outgoing post-interaction part."""
    fan = solve_two_shock(law, u_minus, u_plus, x2_init=x2_init, x1_init=x1_init)
    star_post, s1p, s2p = solve_post_interaction(law, fan.u_minus, fan.u_plus)
    return replace(fan, star_post=star_post, s1_post=s1p, s2_post=s2p)


def wave_strengths(fan: WaveFan) -> tuple[float, float, float, float, float]:
    """Euclidean jump sizes (d1, d2, d1_post, d2_post, min(d1, d2))."""
    um, st, up = fan.u_minus, fan.star, fan.u_plus
    d1 = math.hypot(up.v - st.v, up.u - st.u)
    d2 = math.hypot(st.v - um.v, st.u - um.u)
    if fan.has_post:
        sp = fan.star_post
        d1t = math.hypot(sp.v - um.v, sp.u - um.u)
        d2t = math.hypot(up.v - sp.v, up.u - sp.u)
    else:
        d1t = d2t = math.nan
    return d1, d2, d1t, d2t, min(d1, d2)


# ---------------------------------------------------------------------------
# general Riemann solver (shocks and rarefactions)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WaveDescriptor:
    """One wave of a Riemann solution: 'shock', 'rarefaction' or 'none'."""

    kind: str
    speed: float | None = None          # shock
    head: float | None = None           # rarefaction edges, head on the outside
    tail: float | None = None

    def span(self) -> tuple[float, float]:
        if self.kind == "shock":
            return self.speed, self.speed
        if self.kind == "rarefaction":
            return min(self.head, self.tail), max(self.head, self.tail)
        return math.inf, -math.inf


@dataclass(frozen=True)
class RiemannSolution:
    """Self-similar solution of a single Riemann problem.

    ``frame`` fixes the coordinate in which wave speeds and the sampler
    operate; the three states themselves are frame-independent.
    """

    law: GasLaw
    frame: Frame
    left: State
    middle: State
    right: State
    wave1: WaveDescriptor
    wave2: WaveDescriptor
    x_jump: float = 0.0

    def sample(self, x, t: float):
        """Vectorized solution at time t; returns (v, u) in the Lagrangian
        frame and (rho, u) in the Eulerian frame."""
        x = np.asarray(x, dtype=float)
        if t < 0.0:
            raise ValidationError(f"time must be nonnegative, got {t}")
        if t == 0.0:
            val = np.where(x <= self.x_jump, _state_val(self.left, self.frame),
                           _state_val(self.right, self.frame))
            u = np.where(x <= self.x_jump, self.left.u, self.right.u)
            return val, u
        xi = (x - self.x_jump) / t
        return _sample_pattern(self, xi)

    def wave_intervals(self, t: float) -> list[tuple[float, float]]:
        """Spatial extent [lo, hi] of each wave at time t (zero width for shocks)."""
        out = []
        for w in (self.wave1, self.wave2):
            if w.kind == "none":
                continue
            lo, hi = w.span()
            out.append((self.x_jump + lo * t, self.x_jump + hi * t))
        return out


def _state_val(state: State, frame: Frame) -> float:
    return state.v if frame is Frame.LAGRANGIAN else state.rho


def _riemann_curve_u(law: GasLaw, anchor: State, family: int, v: float) -> float:
    """u on the family wave curve (shock or rarefaction branch) through anchor.

    The anchor is the outer state of its wave: left state for family 1,
    right state for family 2.  Compression (v below the anchor volume)
    follows the Hugoniot branch, expansion the integral curve of the
    Riemann invariant u -+ (2 sqrt(gamma)/(gamma-1)) v**((1-gamma)/2).
    """
    g = law.gamma
    sign = -1.0 if family == 1 else 1.0
    if v < anchor.v:
        jump = math.sqrt((law.pressure_v(v) - law.pressure_v(anchor.v)) * (anchor.v - v))
        return anchor.u + sign * jump
    k = 2.0 * math.sqrt(g) / (g - 1.0)
    return anchor.u + sign * k * (v ** ((1.0 - g) / 2.0) - anchor.v ** ((1.0 - g) / 2.0))


def solve_riemann_general(
    law: GasLaw,
    u_left: State,
    u_right: State,
    frame: Frame = Frame.LAGRANGIAN,
    x_jump: float = 0.0,
) -> RiemannSolution:
    """Classical p-system Riemann solution with a self-similar sampler.

    Each family resolves into a Lax shock (Hugoniot branch) or a
    rarefaction (Riemann-invariant curve); the middle state is found by
    intersecting the two curves in the (v, u) plane to an absolute
    u-residual below 1e-12.  Data that expand into vacuum raise
    :class:`VacuumError`.
    """
    ul, ur = u_left.to_lagrangian(), u_right.to_lagrangian()
    g = law.gamma
    k = 2.0 * math.sqrt(g) / (g - 1.0)

    if ul.v == ur.v and ul.u == ur.u:
        middle = ul
        w1 = WaveDescriptor("none")
        w2 = WaveDescriptor("none")
        return RiemannSolution(law, frame, ul, middle, ur, w1, w2, x_jump)

    # vacuum: curves only meet if the expansion limits overlap
    if ur.u - ul.u >= k * (ul.v ** ((1 - g) / 2) + ur.v ** ((1 - g) / 2)):
        raise VacuumError("initial states expand into vacuum; no positive-volume middle state")

    def f(v):
        return _riemann_curve_u(law, ul, 1, v) - _riemann_curve_u(law, ur, 2, v)

    lo = min(ul.v, ur.v)
    while f(lo) >= 0.0:
        lo *= 0.5
        if lo < 1e-300:
            raise VacuumError("no intersection at positive volume")
    hi = max(ul.v, ur.v)
    while f(hi) <= 0.0:
        hi *= 2.0
        if hi > 1e300:
            raise VacuumError("initial states expand into vacuum")
    v_m = brentq(f, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
    if abs(f(v_m)) > 1e-12:
        raise NumericalError(f"middle-state residual {abs(f(v_m)):.3e} above 1e-12")
    u_m = 0.5 * (_riemann_curve_u(law, ul, 1, v_m) + _riemann_curve_u(law, ur, 2, v_m))
    middle = State.lagrangian(v_m, u_m)

    w1 = _describe_wave(law, frame, 1, ul, middle)
    w2 = _describe_wave(law, frame, 2, middle, ur)
    return RiemannSolution(law, frame, ul, middle, ur, w1, w2, x_jump)


def _eulerian_shock_speed(left: State, right: State) -> float:
    """Shock speed from the Eulerian mass jump condition."""
    return (right.rho * right.u - left.rho * left.u) / (right.rho - left.rho)


def _describe_wave(law: GasLaw, frame: Frame, family: int,
                   left: State, right: State) -> WaveDescriptor:
    outer, inner = (left, right) if family == 1 else (right, left)
    if abs(inner.v - outer.v) <= 1e-15 * outer.v:
        return WaveDescriptor("none")
    shock = inner.v < outer.v
    if shock:
        if frame is Frame.LAGRANGIAN:
            s = shock_speed(law, left.v, right.v, family)
        else:
            s = _eulerian_shock_speed(left, right)
        return WaveDescriptor("shock", speed=s)
    if frame is Frame.LAGRANGIAN:
        lam_outer = eigenvalues(law, outer)[family - 1]
        lam_inner = eigenvalues(law, inner)[family - 1]
    else:
        sgn = -1.0 if family == 1 else 1.0
        lam_outer = outer.u + sgn * float(law.sound_speed_rho(outer.rho))
        lam_inner = inner.u + sgn * float(law.sound_speed_rho(inner.rho))
    return WaveDescriptor("rarefaction", head=lam_outer, tail=lam_inner)


def _sample_pattern(sol: RiemannSolution, xi: np.ndarray):
    law, frame = sol.law, sol.frame
    g = law.gamma
    val = np.empty_like(xi)
    u = np.empty_like(xi)

    def fill(mask, state):
        val[mask] = _state_val(state, frame)
        u[mask] = state.u

    w1, w2 = sol.wave1, sol.wave2
    lo1, hi1 = w1.span()
    lo2, hi2 = w2.span()
    if w1.kind == "none":
        lo1 = hi1 = -math.inf
    if w2.kind == "none":
        lo2 = hi2 = math.inf

    # left-inclusive on wave lines, matching the fan evaluator's tie-break
    fill(xi <= lo1, sol.left)
    fill((xi > hi1) & (xi <= lo2), sol.middle)
    fill(xi > hi2, sol.right)

    for fam, w, outer in ((1, w1, sol.left), (2, w2, sol.right)):
        if w.kind != "rarefaction":
            continue
        lo, hi = w.span()
        mask = (xi > lo) & (xi <= hi)
        if not np.any(mask):
            continue
        xs = xi[mask]
        if frame is Frame.LAGRANGIAN:
            v_fan = (g / xs ** 2) ** (1.0 / (g + 1.0))
            k = 2.0 * math.sqrt(g) / (g - 1.0)
            sign = -1.0 if fam == 1 else 1.0
            u_fan = outer.u - sign * k * (v_fan ** ((1 - g) / 2) - outer.v ** ((1 - g) / 2))
            val[mask] = v_fan
            u[mask] = u_fan
        else:
            c_outer = float(law.sound_speed_rho(outer.rho))
            if fam == 1:
                j = outer.u + 2.0 * c_outer / (g - 1.0)
                c_fan = (g - 1.0) / (g + 1.0) * (j - xs)
                u_fan = xs + c_fan
            else:
                j = outer.u - 2.0 * c_outer / (g - 1.0)
                c_fan = (g - 1.0) / (g + 1.0) * (xs - j)
                u_fan = xs - c_fan
            rho_fan = (c_fan ** 2 / g) ** (1.0 / (g - 1.0))
            val[mask] = rho_fan
            u[mask] = u_fan
    return val, u


@dataclass(frozen=True)
class CompositeSolution:
    """Several non-interacting Riemann patterns side by side.

    Valid while every wave of pattern k stays left of every wave of
    pattern k+1, i.e. up to the first collision time.  Between two
    adjacent patterns the shared constant state is used.
    """

    patterns: tuple[RiemannSolution, ...]

    def first_collision_time(self) -> float:
        t_c = math.inf
        for a, b in zip(self.patterns, self.patterns[1:]):
            sa = max(w.span()[1] for w in (a.wave1, a.wave2) if w.kind != "none")
            sb = min(w.span()[0] for w in (b.wave1, b.wave2) if w.kind != "none")
            gap = b.x_jump - a.x_jump
            if sa > sb:
                t_c = min(t_c, gap / (sa - sb))
        return t_c

    def sample(self, x, t: float):
        if t >= self.first_collision_time():
            raise ValidationError(
                "composite pattern queried at or beyond its first collision time"
            )
        x = np.asarray(x, dtype=float)
        val, u = self.patterns[0].sample(x, t)
        for a, b in zip(self.patterns, self.patterns[1:]):
            split = 0.5 * (a.x_jump + b.x_jump)
            vb, ub = b.sample(x, t)
            right = x >= split
            val[right] = vb[right]
            u[right] = ub[right]
        return val, u

    def wave_intervals(self, t: float) -> list[tuple[float, float]]:
        out = []
        for p in self.patterns:
            out.extend(p.wave_intervals(t))
        return out
