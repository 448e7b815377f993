import math

import numpy as np
import pytest

from conftest import write_exact_fan, write_exact_general
from nsac_plot.exact import ExactPattern


class TestFanSampling:
    def test_pre_interaction_regions(self, tmp_path):
        pat = ExactPattern.load(write_exact_fan(tmp_path / "fan.txt"))
        x = np.array([-1.0, 0.5, 2.0])
        rho, u = pat.sample(x, 0.1)
        assert rho[0] == pytest.approx(1.0 / 0.8)
        assert rho[1] == pytest.approx(1.0)     # middle wedge
        assert u[2] == pytest.approx(-0.27)

    def test_post_interaction_regions(self, tmp_path):
        pat = ExactPattern.load(write_exact_fan(tmp_path / "fan.txt"))
        rho, u = pat.sample(np.array([0.5]), 1.0)   # past t0, centre wedge
        assert rho[0] == pytest.approx(1.0 / 0.646)

    def test_piecewise_constant(self, tmp_path):
        pat = ExactPattern.load(write_exact_fan(tmp_path / "fan.txt"))
        x = np.linspace(-1.0, 2.0, 400)
        rho, _ = pat.sample(x, 0.1)
        assert len(np.unique(rho)) == 2           # symmetric fan: two levels


class TestGeneralSampling:
    def test_regions_and_fan_interior(self, tmp_path):
        pat = ExactPattern.load(write_exact_general(tmp_path / "gen.txt"))
        t = 0.2
        x = np.linspace(0.0, 1.0, 2000)
        rho, u = pat.sample(x, t)
        # far fields
        assert rho[0] == 1.0 and rho[-1] == 0.125
        # middle plateau between rarefaction tail and the shock
        mid = (x > 0.5 + 0.07 * t) & (x < 0.5 + 1.55 * t)
        assert np.allclose(rho[mid], 0.37917913831375466)
        # rarefaction interior is continuous and monotone in rho
        fan = (x > 0.5 - 1.183 * t) & (x <= 0.5 + 0.068 * t)
        assert np.all(np.diff(rho[fan]) <= 1e-8)
        # continuity at the head edge
        head_rho = rho[np.argmax(fan)]
        assert head_rho == pytest.approx(1.0, abs=5e-3)

    def test_time_zero_is_step(self, tmp_path):
        pat = ExactPattern.load(write_exact_general(tmp_path / "gen.txt"))
        rho, u = pat.sample(np.array([0.2, 0.8]), 0.0)
        assert rho[0] == 1.0 and rho[1] == 0.125

    def test_lagrangian_variant(self, tmp_path):
        f = tmp_path / "lag.txt"
        f.write_text("\n".join([
            "kind = general_riemann",
            "frame = lagrangian",
            "gamma = 1.4",
            "x_jump = 0",
            "v_left = 1", "u_left = 0",
            "v_middle = 2.6380977014351056", "u_middle = 1.0430068734039093",
            "v_right = 8", "u_right = 0",
            "wave1_kind = rarefaction",
            "wave1_head = -1.1832159566199232",
            "wave1_tail = -0.36742404225514176",
            "wave2_kind = shock",
            "wave2_speed = 0.41331364962197377",
        ]) + "\n")
        pat = ExactPattern.load(f)
        x = np.linspace(-1.5, 1.5, 1000)
        rho, u = pat.sample(x, 1.0)
        assert rho[0] == pytest.approx(1.0)
        assert rho[-1] == pytest.approx(0.125)
        inside = np.abs(x - (-0.8)) < 0.05   # inside the fan
        v_expected = (1.4 / 0.8 ** 2) ** (1.0 / 2.4)
        assert np.any(np.abs(1.0 / rho[inside] - v_expected) < 0.05)
