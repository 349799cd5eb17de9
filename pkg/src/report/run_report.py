import logging
import os
from typing import Optional

import pandas as pd

logger = logging.getLogger(__name__)

RULE = "=" * 80
THIN_RULE = "-" * 80


class RunReport:
    """명령 실행 결과의 텍스트 요약 생성기"""

    def format_number(self, num, digits: int = 10) -> str:
        """유효숫자 digits 자리"""
        if num is None or (isinstance(num, float) and pd.isna(num)):
            return "N/A"
        if isinstance(num, bool):
            return "예" if num else "아니오"
        if isinstance(num, (int, float)):
            return f"{num:.{digits}g}"
        return str(num)

    def format_error(self, num) -> str:
        """오차·잔차 (지수 표기)"""
        if num is None or (isinstance(num, float) and pd.isna(num)):
            return "N/A"
        if isinstance(num, (int, float)):
            return f"{num:.3e}"
        return str(num)

    def format_change(self, num, reference) -> str:
        """기준값 대비 상대 차이"""
        if num is None or reference is None or pd.isna(num) or pd.isna(reference) or reference == 0:
            return "N/A"
        rel = (num - reference) / abs(reference) * 100
        sign = "+" if rel > 0 else ""
        return f"{sign}{rel:.3f}%"

    def header(self, title: str) -> str:
        return RULE + "\n" + f"{title}\n" + RULE + "\n\n"

    def generate_speed_section(self, speed: dict) -> str:
        """속도 분석 섹션"""
        report = THIN_RULE + "\n"
        report = report + "▶ 특성근과 임계 속도\n"
        report = report + THIN_RULE + "\n"
        report = report + f"  c  = {self.format_number(speed.get('c'))}\n"
        report = report + f"  c* = {self.format_number(speed.get('c_star'))}  (λ* = {self.format_number(speed.get('lambda_star'))})\n"
        if speed.get('subcritical'):
            report = report + "  c < c*: 실근 없음\n\n"
            return report
        report = report + f"  λ₁ = {self.format_number(speed.get('lambda1'))}\n"
        report = report + f"  λ₂ = {self.format_number(speed.get('lambda2'))}\n"
        report = report + f"  이중근: {self.format_number(speed.get('critical'))}\n"
        report = report + f"  지배성: {self.format_number(speed.get('dominance_ok'))}\n\n"
        return report

    def generate_zeros_section(self, zeros: dict) -> str:
        rect = zeros.get('rectangle', {})
        report = THIN_RULE + "\n"
        report = report + "▶ 편각 원리 영점 개수\n"
        report = report + THIN_RULE + "\n"
        report = report + (
            f"  [{self.format_number(rect.get('re_min'), 6)}, {self.format_number(rect.get('re_max'), 6)}]"
            f" × [-{self.format_number(rect.get('im_max'), 6)}, {self.format_number(rect.get('im_max'), 6)}]\n"
        )
        report = report + f"  개수: {zeros.get('count')}  (시도 {zeros.get('attempts')}회)\n\n"
        return report

    def generate_profile_section(self, profile: dict) -> str:
        """프로파일 섹션"""
        grid = profile.get('grid', {})
        report = THIN_RULE + "\n"
        report = report + "▶ 반파면 프로파일\n"
        report = report + THIN_RULE + "\n"
        report = report + (
            f"  격자: [{self.format_number(grid.get('t_min'), 6)}, {self.format_number(grid.get('t_max'), 6)}]"
            f"  Δ = {self.format_number(grid.get('step'), 6)}  ({grid.get('points')}점)\n"
        )
        report = report + f"  수렴: {self.format_number(profile.get('converged'))}  "
        report = report + f"반복 {profile.get('iterations')}회  잔차 {self.format_error(profile.get('residual'))}\n"

        decay = profile.get('decay')
        if decay:
            report = report + f"  꼬리 감쇠율: {self.format_number(decay.get('rate'), 8)} "
            report = report + f"(λ₁ 대비 {self.format_change(decay.get('rate'), profile.get('lambda1'))}, {decay.get('mode')})\n"
            report = report + f"  κ 교차: {decay.get('crossing_count')}회  진동: {self.format_number(decay.get('oscillatory'))}\n"
        if profile.get('Q_min') is not None:
            report = report + f"  Q_min = {self.format_error(profile.get('Q_min'))}  π = {self.format_number(profile.get('pi_integral'), 8)}\n"
        if profile.get('oracle_error') is not None:
            report = report + f"  사격법 비교 sup 오차: {self.format_error(profile.get('oracle_error'))}\n"
        report = report + "\n"
        return report

    def generate_verify_section(self, verification: dict) -> str:
        """가설 검사 섹션"""
        report = THIN_RULE + "\n"
        report = report + "▶ 가설 검사\n"
        report = report + THIN_RULE + "\n"
        for name, result in verification.get('hypotheses', {}).items():
            mark = "통과" if result.get('passed') else "실패"
            report = report + f"  ({name:>2s}) {mark}"
            delta_hat = result.get('details', {}).get('delta_hat')
            if delta_hat is not None:
                report = report + f"  δ̂ = {self.format_number(delta_hat, 6)}"
            report = report + "\n"
        if verification.get('Q_min') is not None:
            report = report + f"  Q_min = {self.format_error(verification.get('Q_min'))}  π = {self.format_number(verification.get('pi_integral'), 8)}\n"
        uniqueness = verification.get('uniqueness')
        if uniqueness:
            distances = [p['sup_distance'] for p in uniqueness.get('pairs', [])]
            worst = max(distances) if distances else None
            report = report + f"  일치 검사: 씨앗 {len(uniqueness.get('seeds', []))}개, 최대 거리 {self.format_error(worst)}"
            if uniqueness.get('excluded'):
                report = report + f", 제외 {uniqueness['excluded']}"
            report = report + "\n"
        report = report + f"  ※ {verification.get('note', '')}\n\n"
        return report

    def generate_evolve_section(self, evolve: dict) -> str:
        report = THIN_RULE + "\n"
        report = report + "▶ 시간 발전\n"
        report = report + THIN_RULE + "\n"
        report = report + f"  측정 속도: {self.format_number(evolve.get('speed'), 8)}"
        expected = evolve.get('expected_speed')
        if expected is not None:
            report = report + f"  (기대 {self.format_number(expected, 8)}, {self.format_change(evolve.get('speed'), expected)})"
        report = report + "\n"
        report = report + f"  중단: {self.format_number(evolve.get('aborted'))}  클램프: {evolve.get('clamp_count')}회\n"
        if evolve.get('profile_error') is not None:
            report = report + f"  이동 좌표 프로파일 sup 오차: {self.format_error(evolve.get('profile_error'))}\n"
        report = report + "\n"
        return report

    def generate_report(self, command: str, model: str, payload: dict, errors: Optional[list] = None) -> str:
        """
        명령 결과 요약 생성

        Args:
            command: 하위 명령
            model: 모델 이름
            payload: 명령의 JSON 본문

        Returns:
            요약 텍스트
        """
        logger.debug(f"요약 생성: {command} {model}")
        report = self.header(f"semiwave {command}: {model}")

        if 'speed' in payload:
            report = report + self.generate_speed_section(payload['speed'])
        if 'zeros' in payload:
            report = report + self.generate_zeros_section(payload['zeros'])
        if 'profile' in payload:
            report = report + self.generate_profile_section(payload['profile'])
        if 'verification' in payload:
            report = report + self.generate_verify_section(payload['verification'])
        if 'evolution' in payload:
            report = report + self.generate_evolve_section(payload['evolution'])

        if errors:
            report = report + "⚠ 오류:\n"
            for error in errors:
                report = report + f"  - {error}\n"
            report = report + "\n"
        return report

    def save_report(self, report: str, path: str) -> str:
        """요약을 파일로 저장"""
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        with open(path, 'w', encoding='utf-8', newline='\n') as f:
            f.write(report)
        logger.info(f"요약 저장: {path}")
        return path
