"""Sampling of serialized exact wave patterns for figure overlays.

Understands the two `kind` values of the nsac1d wave-pattern text format:
`two_shock_fan` (piecewise-constant collision fan, Lagrangian states) and
`general_riemann` (one Riemann pattern, possibly with rarefactions, in
either frame).  Values returned are always (rho, u) so they overlay the
snapshot panels directly.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .inputs import PlotInputError, read_key_values


class ExactPattern:
    """Parsed wave-pattern file with a (rho, u) sampler."""

    def __init__(self, kv: dict):
        self.kv = kv
        self.kind = kv.get("kind")
        if self.kind not in ("two_shock_fan", "general_riemann"):
            raise PlotInputError(f"unknown exact-pattern kind {self.kind!r}")
        self.gamma = float(kv["gamma"])

    @classmethod
    def load(cls, path) -> "ExactPattern":
        path = Path(path)
        if not path.exists():
            raise PlotInputError(f"{path}: no such exact-pattern file")
        return cls(read_key_values(path))

    def sample(self, x: np.ndarray, t: float):
        if self.kind == "two_shock_fan":
            return self._sample_fan(x, t)
        return self._sample_riemann(x, t)

    # -- two-shock collision fan (Lagrangian v converted to rho) ----------

    def _sample_fan(self, x, t):
        kv = self.kv
        f = lambda k: float(kv[k])
        t0 = f("t0")
        v = np.empty_like(x)
        u = np.empty_like(x)
        if t <= t0 or "v_star_post" not in kv:
            b2 = f("x2_init") + f("s2") * t
            b1 = f("x1_init") + f("s1") * t
            pieces = [(x <= b2, f("v_minus"), f("u_minus")),
                      ((x > b2) & (x <= b1), f("v_star"), f("u_star")),
                      (x > b1, f("v_plus"), f("u_plus"))]
        else:
            b1 = f("x0") + f("s1_post") * (t - t0)
            b2 = f("x0") + f("s2_post") * (t - t0)
            pieces = [(x <= b1, f("v_minus"), f("u_minus")),
                      ((x > b1) & (x <= b2), f("v_star_post"), f("u_star_post")),
                      (x > b2, f("v_plus"), f("u_plus"))]
        for mask, vv, uu in pieces:
            v[mask] = vv
            u[mask] = uu
        return 1.0 / v, u

    # -- general Riemann pattern ------------------------------------------

    def _state(self, name):
        kv = self.kv
        if f"rho_{name}" in kv:
            return float(kv[f"rho_{name}"]), float(kv[f"u_{name}"])
        return 1.0 / float(kv[f"v_{name}"]), float(kv[f"u_{name}"])

    def _wave_span(self, tag):
        kv = self.kv
        kind = kv[f"{tag}_kind"]
        if kind == "shock":
            s = float(kv[f"{tag}_speed"])
            return kind, s, s
        if kind == "rarefaction":
            head, tail = float(kv[f"{tag}_head"]), float(kv[f"{tag}_tail"])
            return kind, min(head, tail), max(head, tail)
        return kind, math.inf, -math.inf

    def _sample_riemann(self, x, t):
        kv = self.kv
        g = self.gamma
        lagrangian = kv.get("frame") == "lagrangian"
        x_jump = float(kv["x_jump"])
        rho_l, u_l = self._state("left")
        rho_m, u_m = self._state("middle")
        rho_r, u_r = self._state("right")
        if t <= 0.0:
            rho = np.where(x <= x_jump, rho_l, rho_r)
            u = np.where(x <= x_jump, u_l, u_r)
            return rho, u
        xi = (x - x_jump) / t
        k1, lo1, hi1 = self._wave_span("wave1")
        k2, lo2, hi2 = self._wave_span("wave2")
        if k1 == "none":
            lo1 = hi1 = -math.inf
        if k2 == "none":
            lo2 = hi2 = math.inf

        rho = np.empty_like(x)
        u = np.empty_like(x)
        for mask, rr, uu in [(xi <= lo1, rho_l, u_l),
                             ((xi > hi1) & (xi <= lo2), rho_m, u_m),
                             (xi > hi2, rho_r, u_r)]:
            rho[mask] = rr
            u[mask] = uu

        for fam, kind, lo, hi, rho_o, u_o in ((1, k1, lo1, hi1, rho_l, u_l),
                                              (2, k2, lo2, hi2, rho_r, u_r)):
            if kind != "rarefaction":
                continue
            mask = (xi > lo) & (xi <= hi)
            if not np.any(mask):
                continue
            xs = xi[mask]
            if lagrangian:
                v_fan = (g / xs ** 2) ** (1.0 / (g + 1.0))
                kk = 2.0 * math.sqrt(g) / (g - 1.0)
                sign = -1.0 if fam == 1 else 1.0
                v_o = 1.0 / rho_o
                u_fan = u_o + sign * kk * (v_fan ** ((1 - g) / 2)
                                           - v_o ** ((1 - g) / 2))
                rho[mask] = 1.0 / v_fan
            else:
                c_o = math.sqrt(g) * rho_o ** ((g - 1.0) / 2.0)
                if fam == 1:
                    j = u_o + 2.0 * c_o / (g - 1.0)
                    c_fan = (g - 1.0) / (g + 1.0) * (j - xs)
                    u_fan = xs + c_fan
                else:
                    j = u_o - 2.0 * c_o / (g - 1.0)
                    c_fan = (g - 1.0) / (g + 1.0) * (xs - j)
                    u_fan = xs - c_fan
                rho[mask] = (c_fan ** 2 / g) ** (1.0 / (g - 1.0))
            u[mask] = u_fan
        return rho, u
