import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nsac1d.errors import ValidationError
from nsac1d.model import (
    Frame,
    GasLaw,
    State,
    choose_a,
    eigenvalues,
    eigenvectors,
    euler_flux,
    pressure,
)

# frozen oracle values, computed by direct power evaluation
P_RHO_0125_G14 = 0.05440941020600777      # 0.125**1.4
SQRT_14 = 1.1832159566199232              # sqrt(1.4)
SQRT_2 = 1.4142135623730951
A_MARGIN_12 = 1.4198591479439078          # 1.2*sqrt(1.4)
A_05_2_MARGIN_11 = 2.9901480905462074     # 1.1*sqrt(1.4*0.5**-2.4)


class TestGasLaw:
    def test_gamma_must_exceed_one(self):
        with pytest.raises(ValidationError):
            GasLaw(1.0)

    def test_gas_constant_fixed(self):
        with pytest.raises(ValidationError):
            GasLaw(1.4, gas_constant=2.0)


class TestState:
    def test_frame_conversion_reciprocal(self):
        s = State.eulerian(0.125, 0.3)
        assert s.v == 8.0
        assert s.to_lagrangian().rho == 0.125

    def test_positive_value_required(self):
        with pytest.raises(ValidationError):
            State.lagrangian(-1.0, 0.0)
        with pytest.raises(ValidationError):
            State.eulerian(0.0, 0.0)


class TestPressure:
    def test_unit_state(self, law14):
        assert pressure(law14, State.lagrangian(1.0, 0.0)) == 1.0

    def test_eulerian_power(self, law14):
        assert pressure(law14, State.eulerian(0.125, 0.0)) == pytest.approx(
            P_RHO_0125_G14, rel=1e-15)

    def test_gamma_two(self):
        assert pressure(GasLaw(2.0), State.lagrangian(2.0, 0.0)) == 0.25

    @settings(max_examples=100, derandomize=True, deadline=None)
    @given(gamma=st.floats(1.05, 3.0), v=st.floats(0.05, 20.0))
    def test_frame_consistency(self, gamma, v):
        law = GasLaw(gamma)
        p_l = pressure(law, State.lagrangian(v, 0.0))
        p_e = pressure(law, State.eulerian(1.0 / v, 0.0))
        assert abs(p_l - p_e) <= 1e-14 * p_l


class TestEigenvalues:
    def test_unit_state(self, law14):
        lam1, lam2 = eigenvalues(law14, State.lagrangian(1.0, 0.0))
        assert lam2 == pytest.approx(SQRT_14, rel=1e-15)
        assert lam1 == -lam2

    def test_gamma_two(self):
        _, lam2 = eigenvalues(GasLaw(2.0), State.lagrangian(1.0, 0.0))
        assert lam2 == pytest.approx(SQRT_2, rel=1e-15)

    @settings(max_examples=100, derandomize=True, deadline=None)
    @given(gamma=st.floats(1.05, 3.0), v=st.floats(0.05, 20.0),
           u=st.floats(-5.0, 5.0))
    def test_spectrum_symmetry(self, gamma, v, u):
        lam1, lam2 = eigenvalues(GasLaw(gamma), State.lagrangian(v, u))
        assert lam1 < 0.0 < lam2
        assert lam1 + lam2 == 0.0

    def test_lam2_strictly_decreasing_in_v(self, law14):
        vs = np.linspace(0.2, 5.0, 200)
        lam2 = np.array([eigenvalues(law14, State.lagrangian(v, 0.0))[1] for v in vs])
        assert np.all(np.diff(lam2) < 0.0)


class TestEigenvectors:
    def test_biorthonormality(self, law14):
        L, R, _ = eigenvectors(law14, State.lagrangian(1.3, 0.2))
        assert np.allclose(L @ R, np.eye(2), atol=1e-12)

    def test_diagonalization_unit_state(self, law14):
        s = State.lagrangian(1.0, 0.0)
        L, R, Lam = eigenvectors(law14, s)
        fprime = np.array([[0.0, -1.0], [law14.dp_dv(1.0), 0.0]])
        D = L @ fprime @ R
        assert D[0, 0] == pytest.approx(-SQRT_14, rel=1e-12)
        assert D[1, 1] == pytest.approx(SQRT_14, rel=1e-12)

    def test_offdiagonal_residual_perturbed(self, law14):
        L, R, _ = eigenvectors(law14, State.lagrangian(1.1, 0.0))
        fprime = np.array([[0.0, -1.0], [law14.dp_dv(1.1), 0.0]])
        D = L @ fprime @ R
        assert abs(D[0, 1]) < 1e-10 and abs(D[1, 0]) < 1e-10

    def test_random_states(self, law14):
        rng = np.random.default_rng(7)
        for _ in range(100):
            v = rng.uniform(0.1, 10.0)
            u = rng.uniform(-3.0, 3.0)
            L, R, Lam = eigenvectors(law14, State.lagrangian(v, u))
            fprime = np.array([[0.0, -1.0], [law14.dp_dv(v), 0.0]])
            scale = max(1.0, abs(Lam[1, 1]))
            assert np.allclose(L @ R, np.eye(2), atol=1e-10)
            assert np.allclose(L @ fprime @ R, Lam, atol=1e-10 * scale)


class TestChooseA:
    def test_closed_form(self, law14):
        p = choose_a(law14, 1.0, 1.0, margin=1.2)
        assert p.a == pytest.approx(A_MARGIN_12, rel=1e-15)

    def test_margin_one_warns(self, law14):
        with pytest.warns(UserWarning):
            p = choose_a(law14, 1.0, 1.0, margin=1.0)
        assert p.a == pytest.approx(SQRT_14, rel=1e-15)

    def test_max_at_v_min(self, law14):
        p = choose_a(law14, 0.5, 2.0, margin=1.1)
        assert p.a == pytest.approx(A_05_2_MARGIN_11, rel=1e-15)

    def test_strict_domination(self, law14):
        p = choose_a(law14, 0.5, 2.0, margin=1.1)
        for v in np.linspace(0.5, 2.0, 50):
            lam2 = eigenvalues(law14, State.lagrangian(v, 0.0))[1]
            assert p.a ** 2 - lam2 ** 2 > 0.0

    def test_domain_errors(self, law14):
        with pytest.raises(ValidationError):
            choose_a(law14, -1.0, 1.0)
        with pytest.raises(ValidationError):
            choose_a(law14, 1.0, 1.0, margin=0.9)


class TestEulerFlux:
    def test_static_unit_state(self, law14):
        assert euler_flux(law14, State.eulerian(1.0, 0.0)) == (0.0, 1.0)

    def test_moving_state(self, law14):
        f_mass, f_mom = euler_flux(law14, State.eulerian(1.0, 2.0))
        assert f_mass == 2.0
        assert f_mom == pytest.approx(5.0, rel=1e-15)

    def test_capillary_term(self, law14):
        _, f_mom = euler_flux(law14, State.eulerian(1.0, 0.0), chi_x=1.0, eps=0.1)
        assert f_mom == pytest.approx(1.005, rel=1e-15)

    def test_requires_eulerian(self, law14):
        with pytest.raises(ValidationError):
            euler_flux(law14, State.lagrangian(1.0, 0.0))
