"""Gamma-law pressure, eigenstructure and fluxes for 1D isentropic gas dynamics.

The same fluid appears in two frames.  The Lagrangian p-system in the
variables (v, u) with p(v) = v**-gamma carries the wave algebra; the
Eulerian form (rho, rho*u) with p = rho**gamma is what the finite-volume
solver advances.  The gas constant is fixed at 1.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ValidationError


class Frame(str, Enum):
    LAGRANGIAN = "lagrangian"
    EULERIAN = "eulerian"


@dataclass(frozen=True)
class GasLaw:
    """Gamma-law gas, p(v) = v**-gamma in Lagrangian variables.

    Parameters
    ----------
    gamma : float
        Adiabatic exponent, must exceed 1 so that p is strictly
        decreasing and convex in v.
    gas_constant : float
        Kept fixed at 1 and not configurable.
    """

    gamma: float
    gas_constant: float = 1.0

    def __post_init__(self):
        if not (self.gamma > 1.0):
            raise ValidationError(f"gamma must exceed 1, got {self.gamma}")
        if self.gas_constant != 1.0:
            raise ValidationError("gas constant is fixed at 1")

    def pressure_v(self, v):
        """Lagrangian pressure p(v) = v**-gamma (accepts arrays)."""
        return v ** (-self.gamma)

    def pressure_rho(self, rho):
        """Eulerian pressure p = rho**gamma (accepts arrays)."""
        return rho ** self.gamma

    def dp_dv(self, v):
        """p'(v) = -gamma * v**-(gamma+1), strictly negative for v > 0."""
        return -self.gamma * v ** (-self.gamma - 1.0)

    def char_speed_v(self, v):
        """Lagrangian characteristic speed sqrt(-p'(v))."""
        return np.sqrt(self.gamma) * v ** (-(self.gamma + 1.0) / 2.0)

    def sound_speed_rho(self, rho):
        """Eulerian sound speed sqrt(gamma * rho**(gamma-1))."""
        return np.sqrt(self.gamma) * rho ** ((self.gamma - 1.0) / 2.0)


@dataclass(frozen=True)
class State:
    """Constant fluid state tagged with the frame its scalar lives in.

    ``val`` is the specific volume in the Lagrangian frame and the density
    in the Eulerian frame; the other quantity is derived through the exact
    relation v = 1/rho.
    """

    frame: Frame
    val: float
    u: float

    def __post_init__(self):
        if not (math.isfinite(self.val) and self.val > 0.0):
            raise ValidationError(
                f"{'specific volume' if self.frame is Frame.LAGRANGIAN else 'density'}"
                f" must be positive and finite, got {self.val}"
            )
        if not math.isfinite(self.u):
            raise ValidationError(f"velocity must be finite, got {self.u}")

    @classmethod
    def lagrangian(cls, v: float, u: float) -> "State":
        return cls(Frame.LAGRANGIAN, float(v), float(u))

    @classmethod
    def eulerian(cls, rho: float, u: float) -> "State":
        return cls(Frame.EULERIAN, float(rho), float(u))

    @property
    def v(self) -> float:
        return self.val if self.frame is Frame.LAGRANGIAN else 1.0 / self.val

    @property
    def rho(self) -> float:
        return self.val if self.frame is Frame.EULERIAN else 1.0 / self.val

    def to_lagrangian(self) -> "State":
        return self if self.frame is Frame.LAGRANGIAN else State.lagrangian(self.v, self.u)

    def to_eulerian(self) -> "State":
        return self if self.frame is Frame.EULERIAN else State.eulerian(self.rho, self.u)


@dataclass(frozen=True)
class SubCharParam:
    """Relaxation characteristic speed together with its safety factor."""

    a: float
    margin: float


def pressure(law: GasLaw, s: State) -> float:
    """Pressure of a state: v**-gamma (Lagrangian) or rho**gamma (Eulerian)."""
    if s.frame is Frame.LAGRANGIAN:
        return float(law.pressure_v(s.val))
    return float(law.pressure_rho(s.val))


def eigenvalues(law: GasLaw, s: State) -> tuple[float, float]:
    """Characteristic speeds of the p-system at a state.

    Returns (lam1, lam2) with lam1 = -sqrt(gamma * v**-(gamma+1)) < 0 and
    lam2 = -lam1, evaluated at v = 1/rho for Eulerian states.
    """
    c = float(law.char_speed_v(s.v))
    return -c, c


def eigenvectors(law: GasLaw, s: State):
    """Left/right eigenvector matrices and eigenvalue diagonal at a state.

    Built analytically from r_i = (1, -lam_i)^T and L = R^-1, so that
    L @ Fprime(U) @ R = Lambda and L @ R = I with l_i . r_j = delta_ij.
    A numerical residual assertion guards the construction.

    Returns
    -------
    L : ndarray, shape (2, 2)
        Rows are the left eigenvectors.
    R : ndarray, shape (2, 2)
        Columns are the right eigenvectors.
    Lam : ndarray, shape (2, 2)
        diag(lam1, lam2).
    """
    lam1, lam2 = eigenvalues(law, s)
    R = np.array([[1.0, 1.0], [-lam1, -lam2]])
    L = np.array([[lam1, -1.0], [-lam2, 1.0]]) / (lam1 - lam2)
    Lam = np.diag([lam1, lam2])
    fprime = np.array([[0.0, -1.0], [law.dp_dv(s.v), 0.0]])
    scale = max(1.0, abs(lam2))
    if not np.allclose(L @ R, np.eye(2), atol=1e-12):
        raise AssertionError("eigenvector biorthonormality residual above 1e-12")
    if not np.allclose(L @ fprime @ R, Lam, atol=1e-12 * scale):
        raise AssertionError("eigenvalue diagonalization residual above 1e-12")
    return L, R, Lam


def choose_a(law: GasLaw, v_min: float, v_max: float, margin: float = 1.2) -> SubCharParam:
    """Pick a relaxation speed dominating sqrt(-p'(v)) on [v_min, v_max].

    -p'(v) is decreasing in v, so the bound is attained at v_min and
    a = margin * sqrt(gamma * v_min**-(gamma+1)).  margin == 1 gives the
    exact characteristic speed and is flagged with a warning since the
    dominance is then not strict.
    """
    if not (0.0 < v_min <= v_max):
        raise ValidationError(f"need 0 < v_min <= v_max, got ({v_min}, {v_max})")
    if margin < 1.0:
        raise ValidationError(f"margin must be >= 1, got {margin}")
    if margin == 1.0:
        warnings.warn(
            "margin == 1 makes a equal to the exact characteristic speed; "
            "the dominance condition holds only non-strictly",
            stacklevel=2,
        )
    a = margin * float(law.char_speed_v(v_min))
    return SubCharParam(a=a, margin=margin)


def euler_flux(law: GasLaw, s: State, chi_x: float = 0.0, eps: float = 0.0):
    """Eulerian flux of (rho, rho*u) including the capillary contribution.

    mass flux = rho*u, momentum flux = rho*u**2 + rho**gamma
    + (eps**2/2) * chi_x**2.  The phase-gradient part of the stress
    reduces in 1D to the single conservative term (eps**2/2)*chi_x**2.
    """
    if s.frame is not Frame.EULERIAN:
        raise ValidationError("euler_flux is defined on Eulerian states")
    rho, u = s.rho, s.u
    f_mass = rho * u
    f_mom = rho * u * u + float(law.pressure_rho(rho)) + 0.5 * eps * eps * chi_x * chi_x
    return f_mass, f_mom
