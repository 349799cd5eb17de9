"""
h = 0 사격법과 고정점 프로파일 비교 테스트
"""

import numpy as np
import pytest
import sys
import os

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..', 'src'))

from reaction import builtin_kpp
from verify import align_profiles
from wavefront import SolverOptions, shoot_front, solve_profile


class TestShootFront:
    """shoot_front 테스트"""

    def test_shape_and_normalization(self):
        t = np.linspace(-30.0, 30.0, 1201)
        phi = shoot_front(builtin_kpp(0.0), 2.5, t)
        assert phi.shape == t.shape
        i0 = int(np.argmin(np.abs(t)))
        assert phi[i0] == pytest.approx(0.5, abs=1e-6)
        assert np.all(np.diff(phi) >= -1e-12)
        assert phi[0] < 1e-5
        assert phi[-1] == pytest.approx(1.0, abs=1e-4)

    def test_satisfies_ode(self):
        """φ'' - cφ' + φ(1 - φ) ≈ 0 (차분)"""
        dt = 0.01
        t = dt * np.arange(-1000, 1001)
        phi = shoot_front(builtin_kpp(0.0), 2.5, t)
        d1 = np.gradient(phi, dt)
        d2 = np.gradient(d1, dt)
        ode = d2 - 2.5 * d1 + phi * (1.0 - phi)
        assert np.max(np.abs(ode[5:-5])) < 1e-3

    def test_no_half_level_crossing(self, mocker):
        """궤적이 κ/2 를 지나지 않으면 RuntimeError"""
        from wavefront import oracle as oracle_module
        stuck = mocker.Mock(status=0, t=np.array([0.0, -10.0]))
        stuck.sol = lambda s: np.vstack([np.full_like(s, 0.9), np.zeros_like(s)])
        mocker.patch.object(oracle_module, 'solve_ivp', return_value=stuck)
        with pytest.raises(RuntimeError, match="κ/2"):
            shoot_front(builtin_kpp(0.0), 2.5, np.linspace(-5.0, 5.0, 11))

    def test_rejects_delay(self, kpp_model):
        with pytest.raises(ValueError, match="h = 0"):
            shoot_front(kpp_model, 2.5, np.linspace(-1.0, 1.0, 5))


class TestOracleAgreement:
    """고정점 해와 사격법 해의 일치"""

    @pytest.mark.slow
    def test_fixed_point_matches_shooting(self):
        """KPP h=0, c=2.5: 정렬 후 sup 오차 ≤ 1e-4"""
        model = builtin_kpp(0.0)
        sol = solve_profile(model, 2.5, SolverOptions(step=0.02))
        assert sol.converged

        reference = shoot_front(model, 2.5, sol.t)
        shift, error = align_profiles(sol.t, reference, sol.phi, max_shift=1.0)
        assert abs(shift) < 0.05
        assert error <= 1e-4

    def test_coarse_grid_agreement(self, kpp_solution):
        """거친 격자에서도 1e-3 안에서 일치"""
        reference = shoot_front(kpp_solution.model, 2.5, kpp_solution.t)
        _, error = align_profiles(kpp_solution.t, reference, kpp_solution.phi, max_shift=1.0)
        assert error <= 1e-3
