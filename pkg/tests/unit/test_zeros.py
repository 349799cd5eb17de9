"""
편각 원리 영점 개수와 지배성 테스트
"""

import pytest
import sys
import os

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..', 'src'))

from chareq import (
    ContourError, count_zeros_detailed, count_zeros_rect, critical_speed,
    dominance_bounds, dominance_check, real_roots
)
from chareq import zeros as zeros_module


class TestCountZeros:
    """count_zeros_rect 테스트"""

    def test_kpp_both_roots(self, kpp_local):
        """c = 2.5 에서 [0.4, 2.1] 안에 근 0.5, 2.0"""
        assert count_zeros_rect(kpp_local, 2.5, (0.4, 2.1), 50.0) == 2

    def test_kpp_no_roots(self, kpp_local):
        """[0.6, 1.9] 는 두 근 사이"""
        assert count_zeros_rect(kpp_local, 2.5, (0.6, 1.9), 50.0) == 0

    def test_kpp_one_root(self, kpp_local):
        assert count_zeros_rect(kpp_local, 2.5, (0.4, 1.0), 5.0) == 1

    def test_complex_pair(self, kpp_local):
        """c = 1 (c < c*) 에서 z = 1/2 ± i√3/2"""
        assert count_zeros_rect(kpp_local, 1.0, (0.0, 1.0), 2.0) == 2
        assert count_zeros_rect(kpp_local, 1.0, (0.0, 1.0), 0.5) == 0

    def test_delayed_model(self, nicholson_model):
        """지연 모델도 두 실근을 셈"""
        roots = real_roots(nicholson_model, 3.0)
        count = count_zeros_rect(nicholson_model, 3.0, (roots.lambda1 - 0.05, roots.lambda2 + 0.05), 20.0)
        assert count == 2

    @pytest.mark.parametrize("name", ["kpp_model", "nicholson_model"])
    def test_additive_over_vertical_split(self, request, name):
        """[0.1, λ₂+1] 을 (λ₁+λ₂)/2 에서 나누면 개수가 더해짐"""
        model = request.getfixturevalue(name)
        c = critical_speed(model).c_star + 0.5
        roots = real_roots(model, c)
        a, b = 0.1, roots.lambda2 + 1.0
        mid = 0.5 * (roots.lambda1 + roots.lambda2)

        whole = count_zeros_rect(model, c, (a, b), 20.0)
        left = count_zeros_rect(model, c, (a, mid), 20.0)
        right = count_zeros_rect(model, c, (mid, b), 20.0)
        assert whole == left + right
        assert left >= 1
        assert right >= 1

    def test_invalid_rectangle(self, kpp_local):
        with pytest.raises(ValueError):
            count_zeros_rect(kpp_local, 2.5, (2.0, 1.0), 5.0)
        with pytest.raises(ValueError):
            count_zeros_rect(kpp_local, 2.5, (0.0, 1.0), 0.0)


class TestContourPerturbation:
    """윤곽선이 영점에 닿을 때의 재시도"""

    def test_zero_on_edge_is_perturbed(self, kpp_local):
        """경계 위의 근 0.5 는 바깥으로 넓힌 직사각형에서 세어짐"""
        result = count_zeros_detailed(kpp_local, 2.5, (0.5, 1.0), 5.0)
        assert result.attempts > 1
        assert result.count == 1
        assert result.rectangle[0] < 0.5

    def test_gives_up_after_retries(self, mocker, kpp_local):
        """모든 시도가 실패하면 ContourError"""
        mocker.patch.object(zeros_module, '_winding', side_effect=zeros_module._ContourTouch())
        with pytest.raises(ContourError):
            count_zeros_detailed(kpp_local, 2.5, (0.4, 2.1), 5.0)
        assert zeros_module._winding.call_count == zeros_module.MAX_PERTURBATIONS + 1

    def test_to_dict(self, kpp_local):
        data = count_zeros_detailed(kpp_local, 2.5, (0.4, 2.1), 50.0).to_dict()
        assert data['count'] == 2
        assert data['attempts'] == 1
        assert data['rectangle'] == {'re_min': 0.4, 're_max': 2.1, 'im_max': 50.0}
        assert data['winding'] == pytest.approx(2.0, abs=1e-6)


class TestDominance:
    """dominance_check 테스트"""

    def test_bounds_positive(self, nicholson_model):
        bound, height = dominance_bounds(nicholson_model, 2.0)
        assert bound == pytest.approx(2.0 + 2.0 + 1.0 + 1.0)
        assert height > bound

    @pytest.mark.parametrize("name", ["kpp_model", "nicholson_model", "may_model"])
    def test_builtin_models_dominant(self, request, name):
        model = request.getfixturevalue(name)
        c = critical_speed(model).c_star + 0.5
        assert dominance_check(model, c)

    def test_subcritical_raises(self, kpp_local):
        with pytest.raises(ValueError):
            dominance_check(kpp_local, 1.0)

    def test_fails_with_extra_zero(self, mocker, kpp_local):
        """영점이 셋 이상이면 지배성 실패"""
        fake = zeros_module.ZeroCount(3, 1, (0.0, 1.0, 1.0), 3.0)
        mocker.patch.object(zeros_module, 'count_zeros_detailed', return_value=fake)
        assert dominance_check(kpp_local, 2.5) is False
