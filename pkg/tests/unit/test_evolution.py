"""
시간 발전 (선의 방법) 테스트
"""

import numpy as np
import pytest
import sys
import os

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..', 'src'))

from evolution import (
    HistoryRing, advance, compact_data, compact_front, compare_with_profile,
    default_domain, default_dt, fit_speed, laplacian, level_crossing, make_state,
    moving_profile, step, traveling_data, traveling_front
)
from wavefront import solve_profile


class TestHistoryRing:
    """HistoryRing 테스트"""

    def test_slot_count(self):
        assert HistoryRing(5, 0.25, 1.0).n_slots == 6
        assert HistoryRing(5, 0.3, 1.0).n_slots == 6
        assert HistoryRing(5, 0.1, 0.0).n_slots == 2

    def test_delayed_interpolates(self):
        ring = HistoryRing(3, 0.25, 1.0)
        ring.fill(lambda s: np.full(3, s))
        assert np.allclose(ring.current, 0.0)
        assert np.allclose(ring.delayed(0.5), -0.5)
        assert np.allclose(ring.delayed(0.3), -0.3)
        assert np.allclose(ring.delayed(1.0), -1.0)

    def test_push_moves_history(self):
        ring = HistoryRing(2, 0.5, 1.0)
        ring.fill(lambda s: np.full(2, s))
        ring.push(np.full(2, 0.5))
        assert np.allclose(ring.current, 0.5)
        assert np.allclose(ring.delayed(0.5), 0.0)
        assert np.allclose(ring.delayed(1.0), -0.5)

    def test_delay_out_of_range(self):
        ring = HistoryRing(2, 0.5, 1.0)
        with pytest.raises(ValueError):
            ring.delayed(1.5)
        with pytest.raises(ValueError):
            ring.slot(10)

    def test_invalid_dt(self):
        with pytest.raises(ValueError):
            HistoryRing(2, 0.0, 1.0)


class TestInitialData:
    """초기 자료 생성"""

    def test_traveling_data(self):
        initial = traveling_data(1.0, 0.5, 2.5)
        x = np.array([-10.0, 0.0, 10.0])
        u = initial(x, 0.0)
        assert u[0] == pytest.approx(0.5 * np.exp(-5.0))
        assert u[1] == pytest.approx(0.5)
        assert u[2] == 1.0
        # 과거 시각은 ξ = x + cs 만큼 뒤쪽
        assert initial(np.array([0.0]), -1.0)[0] == pytest.approx(0.5 * np.exp(-1.25))

    def test_compact_data(self):
        x = np.linspace(-2.0, 2.0, 5)
        assert np.array_equal(compact_data(2.0)(x, 0.0), [0.0, 0.0, 2.0, 2.0, 2.0])
        assert np.array_equal(compact_data(1.0, width=1.0)(x, 0.0), [0.0, 0.0, 1.0, 1.0, 0.0])

    def test_make_state(self, kpp_model):
        state = make_state(kpp_model, (-5.0, 5.0), 0.1, 0.004, compact_data(1.0))
        assert state.x.size == 101
        assert state.dx == pytest.approx(0.1)
        assert state.tap_values().shape == (2, 101)

    def test_invalid_domain(self, kpp_model):
        with pytest.raises(ValueError):
            make_state(kpp_model, (5.0, -5.0), 0.1, 0.004, compact_data(1.0))


class TestStepper:
    """step, advance, laplacian"""

    def test_default_dt(self):
        assert default_dt(0.1) == pytest.approx(0.004)

    def test_laplacian_of_quadratic(self):
        dx = 0.1
        x = dx * np.arange(1, 50)
        lap = laplacian(x ** 2, dx)
        assert np.allclose(lap[1:-1], 2.0)

    @pytest.mark.parametrize("name", ["kpp_model", "nicholson_model"])
    def test_equilibria_are_fixed(self, request, name):
        """u ≡ 0 과 u ≡ κ 는 그대로"""
        model = request.getfixturevalue(name)
        for level in (0.0, model.kappa):
            state = make_state(model, (-5.0, 5.0), 0.1, 0.004, lambda x, s: np.full(x.size, level))
            advance(state, 0.4)
            assert state.steps == 100
            assert np.allclose(state.u, level, atol=1e-12)

    def test_cfl_violation(self, kpp_model):
        state = make_state(kpp_model, (-5.0, 5.0), 0.1, 0.006, compact_data(1.0))
        with pytest.raises(ValueError):
            step(state)

    def test_implicit_allows_large_step(self, kpp_model):
        state = make_state(kpp_model, (-5.0, 5.0), 0.1, 0.05, compact_data(1.0))
        step(state, implicit=True)
        assert state.t == pytest.approx(0.05)
        assert np.all(state.u >= 0)
        assert np.all(state.u <= 1.0 + 1e-12)

    def test_dt_mismatch(self, kpp_model):
        state = make_state(kpp_model, (-5.0, 5.0), 0.1, 0.004, compact_data(1.0))
        with pytest.raises(ValueError):
            step(state, dt=0.002)

    def test_front_invades_zero_state(self, kpp_local):
        """κ 쪽이 0 쪽으로 번져 감"""
        state = make_state(kpp_local, (-20.0, 20.0), 0.1, 0.004, compact_data(1.0))
        before = level_crossing(state.x, state.u, 0.5)
        advance(state, 2.0)
        after = level_crossing(state.x, state.u, 0.5)
        assert after < before
        assert state.clamp_count == 0


class TestLevelCrossing:
    """level_crossing, fit_speed"""

    def test_interpolates(self):
        x = np.array([0.0, 1.0, 2.0])
        u = np.array([0.0, 0.4, 0.8])
        assert level_crossing(x, u, 0.5) == pytest.approx(1.25)

    def test_first_crossing(self):
        x = np.arange(6, dtype=float)
        u = np.array([0.0, 1.0, 0.0, 0.0, 1.0, 1.0])
        assert level_crossing(x, u, 0.5) == pytest.approx(0.5)

    def test_no_crossing(self):
        x = np.arange(3, dtype=float)
        assert level_crossing(x, np.zeros(3), 0.5) is None

    def test_fit_speed_uses_late_half(self):
        times = np.linspace(0.0, 10.0, 101)
        positions = np.where(times < 5.0, -5.0 * times, -25.0 - 2.0 * (times - 5.0))
        assert fit_speed(times, positions) == pytest.approx(2.0)

    def test_fit_speed_too_short(self):
        assert np.isnan(fit_speed(np.array([0.0]), np.array([1.0])))


class TestFrontSpeed:
    """전선 속도 측정"""

    def test_default_domain(self):
        left, right = default_domain(2.0, 10.0)
        assert left < -2.0 * 10.0 - 10.0
        assert right == 40.0

    def test_aborts_near_boundary(self, kpp_local):
        """영역이 짧으면 경계에 닿아 중단"""
        result = traveling_front(kpp_local, 0.5, 20.0, domain=(-25.0, 20.0))
        assert result.aborted
        assert result.times[-1] < 20.0
        assert result.to_dict()['aborted'] is True

    @pytest.mark.slow
    def test_traveling_data_speed(self, kpp_local):
        """꼬리 e^{0.5x}: 속도 2.5 (2% 이내)"""
        result = traveling_front(kpp_local, 0.5, 20.0)
        assert not result.aborted
        assert result.expected_speed == pytest.approx(2.5)
        assert result.speed == pytest.approx(2.5, rel=0.02)
        frame = result.to_frame()
        assert list(frame.columns) == ['t', 'position']

    @pytest.mark.slow
    def test_compact_data_speed(self, kpp_local):
        """계단형 자료: 속도 → c* = 2 (로그 보정 때문에 3% 이내)"""
        result = compact_front(kpp_local, 60.0, expected_speed=2.0)
        assert not result.aborted
        assert result.speed == pytest.approx(2.0, rel=0.03)

    @pytest.mark.slow
    def test_delayed_traveling_data_speed(self, kpp_model, fast_options):
        """h=1, 꼬리 λ₁(2.5): 속도 2.5 (2% 이내), 이동 좌표 프로파일 오차 ≤ 5e-2"""
        result = traveling_front(kpp_model, 0.5, 30.0)
        assert not result.aborted
        assert result.speed == pytest.approx(2.5, rel=0.02)

        sol = solve_profile(kpp_model, 2.5, fast_options)
        assert sol.converged
        assert compare_with_profile(result.state, sol) <= 5e-2


class TestMovingFrame:
    """이동 좌표계 비교"""

    def test_moving_profile_centered(self, kpp_local):
        state = make_state(kpp_local, (-20.0, 20.0), 0.1, 0.004, traveling_data(1.0, 0.5, 2.5, x0=3.0))
        values = moving_profile(state, np.array([0.0]))
        assert values[0] == pytest.approx(0.5, abs=1e-9)

    def test_no_crossing(self, kpp_local):
        state = make_state(kpp_local, (-5.0, 5.0), 0.1, 0.004, lambda x, s: np.zeros(x.size))
        with pytest.raises(ValueError):
            moving_profile(state, np.array([0.0]))

    def test_model_mismatch(self, kpp_model, kpp_solution):
        state = make_state(kpp_model, (-5.0, 5.0), 0.1, 0.004, compact_data(1.0))
        with pytest.raises(ValueError):
            compare_with_profile(state, kpp_solution)

    @pytest.mark.slow
    def test_matches_solver_profile(self, kpp_solution):
        """시간 발전 결과가 솔버 프로파일로 다가감"""
        result = traveling_front(kpp_solution.model, 0.5, 30.0)
        assert not result.aborted
        error = compare_with_profile(result.state, kpp_solution)
        assert error <= 5e-2
