"""
특성 함수, 실근, 임계 속도 테스트
"""

import math

import numpy as np
import pytest
import sys
import os

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..', 'src'))

from chareq import (
    CriticalSpeedError, analyze_speed, chi_minimum, chi_parts, critical_speed,
    eval_chi, real_roots, speed_for_rate
)
from chareq import critical as critical_module
from reaction import builtin_kpp, may, nicholson


class TestEvalChi:
    """eval_chi 테스트"""

    def test_kpp_closed_form(self, kpp_local):
        """h=0 KPP: χ(z, c) = z² - cz + 1"""
        z = np.array([0.0, 0.5, 1.0 + 2.0j])
        expected = z * z - 2.5 * z + 1.0
        assert np.allclose(eval_chi(kpp_local, z, 2.5), expected)

    def test_scalar_types(self, nicholson_model):
        """스칼라 실수 입력은 float, 복소수 입력은 complex"""
        assert isinstance(eval_chi(nicholson_model, 0.3, 2.0), float)
        assert isinstance(eval_chi(nicholson_model, 0.3 + 0.1j, 2.0), complex)

    def test_at_origin(self, nicholson_model):
        """χ(0, c) = p - q"""
        assert eval_chi(nicholson_model, 0.0, 1.3) == pytest.approx(1.0)

    def test_nonpositive_speed(self, kpp_model):
        with pytest.raises(ValueError):
            eval_chi(kpp_model, 0.5, 0.0)

    def test_chi_parts_derivatives(self, nicholson_model):
        """해석적 편미분과 중심 차분 일치"""
        lam, c, eps = 0.4, 1.7, 1e-6
        chi, chi_z, chi_zz, chi_c, chi_zc = chi_parts(nicholson_model, lam, c)

        def f(z, s):
            return chi_parts(nicholson_model, z, s)[0]

        assert chi == pytest.approx(eval_chi(nicholson_model, lam, c))
        assert chi_z == pytest.approx((f(lam + eps, c) - f(lam - eps, c)) / (2 * eps), rel=1e-6)
        assert chi_c == pytest.approx((f(lam, c + eps) - f(lam, c - eps)) / (2 * eps), rel=1e-6)
        dz = lambda s: chi_parts(nicholson_model, lam, s)[1]
        assert chi_zc == pytest.approx((dz(c + eps) - dz(c - eps)) / (2 * eps), rel=1e-5)
        dzz = lambda z: chi_parts(nicholson_model, z, c)[1]
        assert chi_zz == pytest.approx((dzz(lam + eps) - dzz(lam - eps)) / (2 * eps), rel=1e-5)


class TestRealRoots:
    """real_roots 테스트"""

    def test_kpp_no_delay(self, kpp_local):
        """c = 2.5: 근 0.5, 2.0"""
        roots = real_roots(kpp_local, 2.5)
        assert abs(roots.lambda1 - 0.5) <= 1e-10
        assert abs(roots.lambda2 - 2.0) <= 1e-10
        assert not roots.critical

    @pytest.mark.parametrize("c", [2.1, 2.5, 3.0, 5.0])
    def test_roots_are_zeros(self, nicholson_model, c):
        crit = critical_speed(nicholson_model).c_star
        if c < crit:
            pytest.skip("임계 속도 미만")
        roots = real_roots(nicholson_model, c)
        assert roots.lambda1 < roots.lambda2
        assert abs(eval_chi(nicholson_model, roots.lambda1, c)) < 1e-10
        assert abs(eval_chi(nicholson_model, roots.lambda2, c)) < 1e-10

    def test_subcritical_returns_none(self, kpp_local):
        assert real_roots(kpp_local, 1.5) is None

    def test_double_root_at_critical(self, kpp_local):
        """c = 2 에서 이중근 λ = 1"""
        roots = real_roots(kpp_local, 2.0)
        assert roots.critical
        assert roots.lambda1 == pytest.approx(1.0, abs=1e-6)

    def test_chi_minimum(self, kpp_local):
        z_min, value = chi_minimum(kpp_local, 2.5)
        assert z_min == pytest.approx(1.25)
        assert value == pytest.approx(1.25 ** 2 - 2.5 * 1.25 + 1.0)


class TestCriticalSpeed:
    """critical_speed 테스트"""

    @pytest.mark.parametrize("h", [0.0, 0.5, 1.0, 2.0])
    def test_kpp_critical_speed_independent_of_delay(self, h):
        """μ₊ = δ₀ 이므로 모든 h 에서 c* = 2, λ* = 1"""
        crit = critical_speed(builtin_kpp(h))
        assert crit.c_star == pytest.approx(2.0, abs=1e-10)
        assert crit.lambda_star == pytest.approx(1.0, abs=1e-8)
        assert crit.method == 'newton'

    def test_newton_and_bisection_agree(self, nicholson_model):
        crit = critical_speed(nicholson_model)
        assert crit.bisection is not None
        assert abs(crit.c_star - crit.bisection) <= 1e-8
        assert crit.agreed is True

    def test_disagreement_is_flagged(self, mocker, kpp_model):
        """이분법 값이 1e-6 어긋나면 agreed=False"""
        mocker.patch.object(critical_module, '_bisection', return_value=2.0 + 1e-6)
        crit = critical_speed(kpp_model)
        assert crit.agreed is False
        assert crit.method == 'newton'
        assert crit.to_dict()['agreed'] is False

    def test_double_root_conditions(self, may_model):
        """χ(λ*, c*) = χ_z(λ*, c*) = 0"""
        crit = critical_speed(may_model)
        chi, chi_z = chi_parts(may_model, crit.lambda_star, crit.c_star)[:2]
        assert abs(chi) < 1e-10
        assert abs(chi_z) < 1e-10

    def test_delay_slows_mackey_glass(self):
        """지연이 길수록 c* 감소"""
        speeds = [critical_speed(nicholson(h, 3.0)).c_star for h in (0.0, 1.0, 3.0)]
        assert speeds[0] > speeds[1] > speeds[2] > 0

    def test_bisection_fallback(self, mocker, nicholson_model):
        """Newton 실패 시 이분법 값 사용"""
        mocker.patch.object(critical_module, '_newton', return_value=None)
        crit = critical_speed(nicholson_model)
        assert crit.method == 'bisection'
        assert crit.newton is None
        assert crit.agreed is None
        assert eval_chi(nicholson_model, crit.lambda_star, crit.c_star) == pytest.approx(0.0, abs=1e-8)

    def test_both_methods_fail(self, mocker, nicholson_model):
        mocker.patch.object(critical_module, '_newton', return_value=None)
        mocker.patch.object(critical_module, '_bisection', return_value=None)
        with pytest.raises(CriticalSpeedError):
            critical_speed(nicholson_model)

    def test_to_dict(self, kpp_model):
        data = critical_speed(kpp_model).to_dict()
        assert set(data) == {'c_star', 'lambda_star', 'method', 'newton_c_star', 'bisection_c_star', 'agreed'}


class TestSpeedForRate:
    """speed_for_rate 테스트"""

    def test_kpp_rate(self, kpp_local):
        """h=0 KPP: c = λ + 1/λ"""
        assert speed_for_rate(kpp_local, 0.5) == pytest.approx(2.5, abs=1e-12)

    def test_inverse_of_real_roots(self, nicholson_model):
        roots = real_roots(nicholson_model, 3.0)
        assert speed_for_rate(nicholson_model, roots.lambda1) == pytest.approx(3.0, abs=1e-10)

    def test_nonpositive_rate(self, kpp_local):
        with pytest.raises(ValueError):
            speed_for_rate(kpp_local, 0.0)


class TestAnalyzeSpeed:
    """analyze_speed 테스트"""

    def test_supercritical(self, kpp_local):
        analysis = analyze_speed(kpp_local, c=2.5)
        assert analysis.lambda1 == pytest.approx(0.5, abs=1e-10)
        assert analysis.lambda2 == pytest.approx(2.0, abs=1e-10)
        assert analysis.dominance_ok is True
        assert not analysis.subcritical

    def test_at_critical_speed(self, kpp_model):
        """c 를 주지 않으면 c* 에서 이중근"""
        analysis = analyze_speed(kpp_model)
        assert analysis.c == pytest.approx(2.0)
        assert analysis.critical
        assert analysis.lambda1 == analysis.lambda2

    def test_subcritical(self, kpp_local):
        analysis = analyze_speed(kpp_local, c=1.0)
        assert analysis.subcritical
        assert analysis.lambda1 is None
        assert analysis.dominance_ok is None
        assert analysis.to_dict()['subcritical'] is True

    def test_offset(self, nicholson_model):
        crit = critical_speed(nicholson_model)
        analysis = analyze_speed(nicholson_model, c_offset=0.5, check_dominance=False)
        assert analysis.c == pytest.approx(crit.c_star + 0.5)
        assert analysis.dominance_ok is None

    def test_rejects_degenerate(self):
        """(ND) 위반 모델은 분석할 수 없음"""
        from reaction import Measure, Model
        model = Model(
            name='flat', h=0.0, taps=(0.0,),
            reaction=lambda v: -v[0],
            measure=Measure(q=1.0, atoms=((0.0, 1.0),), h=0.0),
            kappa=1.0,
        )
        with pytest.raises(ValueError):
            analyze_speed(model, c=2.0)
