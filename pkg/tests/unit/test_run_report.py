"""
RunReport 텍스트 요약 테스트
"""

import pytest
import sys
import os

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..', 'src'))

from report import RunReport
from report.run_report import RULE


@pytest.fixture
def reporter():
    return RunReport()


class TestFormatting:
    """숫자 형식"""

    def test_format_number(self, reporter):
        assert reporter.format_number(None) == "N/A"
        assert reporter.format_number(float('nan')) == "N/A"
        assert reporter.format_number(True) == "예"
        assert reporter.format_number(2.0) == "2"
        assert reporter.format_number(1.0 / 3.0, 4) == "0.3333"

    def test_format_error(self, reporter):
        assert reporter.format_error(1.234e-9) == "1.234e-09"
        assert reporter.format_error(None) == "N/A"

    def test_format_change(self, reporter):
        assert reporter.format_change(2.05, 2.0) == "+2.500%"
        assert reporter.format_change(1.9, 2.0) == "-5.000%"
        assert reporter.format_change(1.0, 0.0) == "N/A"
        assert reporter.format_change(None, 2.0) == "N/A"


class TestGenerateReport:
    """generate_report 섹션 구성"""

    def test_header(self, reporter):
        text = reporter.generate_report('speed', 'kpp', {})
        assert text.startswith(RULE)
        assert "semiwave speed: kpp" in text

    def test_speed_section(self, reporter):
        payload = {'speed': {
            'c': 2.5, 'c_star': 2.0, 'lambda_star': 1.0, 'lambda1': 0.5, 'lambda2': 2.0,
            'critical': False, 'dominance_ok': True, 'subcritical': False,
        }}
        text = reporter.generate_report('speed', 'kpp', payload)
        assert "c* = 2" in text
        assert "λ₁ = 0.5" in text
        assert "지배성: 예" in text

    def test_subcritical_speed(self, reporter):
        payload = {'speed': {'c': 1.0, 'c_star': 2.0, 'lambda_star': 1.0, 'subcritical': True}}
        text = reporter.generate_report('speed', 'kpp', payload)
        assert "실근 없음" in text
        assert "λ₁" not in text

    def test_verify_section(self, reporter):
        payload = {'verification': {
            'hypotheses': {
                'UB': {'passed': False, 'details': {}},
                'LB': {'passed': True, 'details': {'delta_hat': 0.25}},
            },
            'uniqueness': {'seeds': [0, 1], 'pairs': [{'sup_distance': 2e-9}], 'excluded': []},
            'note': 'sampled checks are falsification tests, not proofs',
        }}
        text = reporter.generate_report('verify', 'ub_violating', payload)
        assert "(UB) 실패" in text
        assert "(LB) 통과" in text
        assert "δ̂ = 0.25" in text
        assert "2.000e-09" in text
        assert "not proofs" in text

    def test_profile_and_evolve_sections(self, reporter):
        payload = {
            'profile': {
                'grid': {'t_min': -40.0, 't_max': 30.0, 'step': 0.05, 'points': 1401},
                'converged': True, 'iterations': 120, 'residual': 5e-9, 'lambda1': 0.5,
                'decay': {'rate': 0.501, 'mode': 'pure', 'crossing_count': 0, 'oscillatory': False},
            },
            'evolution': {'speed': 2.49, 'expected_speed': 2.5, 'aborted': False, 'clamp_count': 0},
        }
        text = reporter.generate_report('profile', 'kpp', payload)
        assert "1401점" in text
        assert "+0.200%" in text
        assert "측정 속도: 2.49" in text
        assert "-0.400%" in text

    def test_errors_listed(self, reporter):
        text = reporter.generate_report('profile', 'kpp', {}, ["프로파일 미수렴"])
        assert "⚠ 오류" in text
        assert "- 프로파일 미수렴" in text

    def test_save_report(self, reporter, out_dir):
        path = reporter.save_report("요약", os.path.join(out_dir, 'nested', 'summary.txt'))
        with open(path, encoding='utf-8') as f:
            assert f.read() == "요약"
