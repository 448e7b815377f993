"""1D laboratory for compressible immiscible two-phase flow.

Exact p-system shock algebra, relaxation shock profiles, and a Jin-Xin
relaxation finite-volume solver for the 1D Navier-Stokes/Allen-Cahn
system, plus an experiment harness demonstrating the sharp-interface
limit and shock/interface transparency.
"""

from .model import Frame, GasLaw, State, SubCharParam, choose_a, eigenvalues, eigenvectors, euler_flux, pressure
from .riemann import (
    CompositeSolution,
    RiemannSolution,
    ShockWave,
    WaveFan,
    build_wave_fan,
    evaluate_entropy_solution,
    hugoniot_locus,
    solve_post_interaction,
    solve_riemann_general,
    solve_two_shock,
    wave_strengths,
)

__version__ = "0.1.0"
