"""
-∞ 쪽 감쇠 법칙 추정과 κ 주위 진동 검출

순수 지수형 φ ~ A e^{γt} 과 임계형 φ ~ (A - t) e^{γt} 을 구분합니다.
임계 판정은 log φ - λ₁t 를 log(-t) 에 회귀한 기울기가 1에 가까운지로 합니다.
"""

from dataclasses import dataclass
from typing import Optional, Tuple
import logging
import os
import sys

import numpy as np

sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from wavefront import ProfileSolution

logger = logging.getLogger(__name__)

PURE = 'pure_exponential'
CRITICAL = 'critical_t_times_exponential'

MIN_WINDOW_POINTS = 50
WINDOW_LEVEL = 0.05
CRITICAL_SLOPE_TOL = 0.15
LEFT_MARGIN_STEPS = 5
BAND = 1e-6


@dataclass(frozen=True)
class DecayFit:
    """꼬리 감쇠 적합 결과"""

    rate: float
    mode: str
    window: Tuple[float, float]
    fit_error: float
    log_amplitude: float
    critical_slope: float
    oscillatory: bool = False
    crossing_count: int = 0

    def to_dict(self) -> dict:
        return {
            'rate': self.rate,
            'mode': self.mode,
            'window': list(self.window),
            'fit_error': self.fit_error,
            'log_amplitude': self.log_amplitude,
            'critical_slope': self.critical_slope,
            'oscillatory': self.oscillatory,
            'crossing_count': self.crossing_count,
        }


def fit_window(t: np.ndarray, phi: np.ndarray, kappa: float) -> Tuple[int, int]:
    """[T₋ + 5Δ, φ가 처음 0.05κ 에 닿는 t) 의 인덱스 범위"""
    start = LEFT_MARGIN_STEPS
    reached = np.flatnonzero(phi >= WINDOW_LEVEL * kappa)
    stop = int(reached[0]) if reached.size else t.size
    # log(-t) 회귀를 위해 t < 0 으로 제한
    nonnegative = np.flatnonzero(t >= 0)
    if nonnegative.size:
        stop = min(stop, int(nonnegative[0]))
    return start, stop


def fit_decay_arrays(
    t: np.ndarray,
    phi: np.ndarray,
    kappa: float,
    lambda1: Optional[float] = None,
    window: Optional[Tuple[float, float]] = None
) -> DecayFit:
    """
    격자 배열에서 감쇠율 적합

    Args:
        lambda1: 임계 판정에 쓸 λ₁ (None이면 log φ = a + γt + β log(-t) 동시 회귀의 β 사용)
        window: 적합 구간 (t_a, t_b), None이면 기본 창

    Raises:
        ValueError: 창의 점이 50개 미만이거나 φ ≤ 0 인 점이 있을 때
    """
    t = np.asarray(t, dtype=float)
    phi = np.asarray(phi, dtype=float)

    if window is None:
        start, stop = fit_window(t, phi, kappa)
        mask = np.zeros(t.size, dtype=bool)
        mask[start:stop] = True
    else:
        mask = (t >= window[0]) & (t < window[1]) & (t < 0)

    n_points = int(np.count_nonzero(mask))
    if n_points < MIN_WINDOW_POINTS:
        raise ValueError(f"적합 창의 점이 {n_points}개로 {MIN_WINDOW_POINTS}개보다 적습니다")

    tw, pw = t[mask], phi[mask]
    if np.any(pw <= 0):
        raise ValueError("적합 창에 양수가 아닌 φ 값이 있습니다")

    log_phi = np.log(pw)
    log_minus_t = np.log(-tw)

    if lambda1 is None:
        design = np.column_stack([np.ones_like(tw), tw, log_minus_t])
        coef, *_ = np.linalg.lstsq(design, log_phi, rcond=None)
        critical_slope = float(coef[2])
    else:
        critical_slope = float(np.polyfit(log_minus_t, log_phi - lambda1 * tw, 1)[0])

    if abs(critical_slope - 1.0) <= CRITICAL_SLOPE_TOL:
        mode = CRITICAL
        target = log_phi - log_minus_t
    else:
        mode = PURE
        target = log_phi

    rate, intercept = np.polyfit(tw, target, 1)
    residuals = target - (rate * tw + intercept)
    fit_error = float(np.sqrt(np.mean(residuals ** 2)))

    return DecayFit(
        rate=float(rate),
        mode=mode,
        window=(float(tw[0]), float(tw[-1])),
        fit_error=fit_error,
        log_amplitude=float(intercept),
        critical_slope=critical_slope,
    )


def fit_decay(sol: ProfileSolution, window: Optional[Tuple[float, float]] = None) -> DecayFit:
    """
    수렴한 프로파일의 꼬리 감쇠 적합 (진동 정보 포함)

    Raises:
        ValueError: 수렴하지 않은 해, 창이 너무 작음
    """
    if not sol.converged:
        raise ValueError(f"수렴하지 않은 프로파일은 적합할 수 없습니다: {sol}")

    fit = fit_decay_arrays(sol.t, sol.phi, sol.kappa, lambda1=sol.lambda1, window=window)
    oscillatory, crossings = detect_oscillation(sol)
    logger.info(
        f"감쇠 적합: 율={fit.rate:.6g} (λ₁={sol.lambda1:.6g}), 모드={fit.mode}, "
        f"창=[{fit.window[0]:.3g}, {fit.window[1]:.3g}], 오차={fit.fit_error:.2e}"
    )
    return DecayFit(
        rate=fit.rate,
        mode=fit.mode,
        window=fit.window,
        fit_error=fit.fit_error,
        log_amplitude=fit.log_amplitude,
        critical_slope=fit.critical_slope,
        oscillatory=oscillatory,
        crossing_count=crossings,
    )


def count_crossings(t: np.ndarray, phi: np.ndarray, kappa: float) -> int:
    """t ≥ 0 에서 φ - κ 의 부호 변화 횟수 (|φ - κ| ≤ 1e-6κ 띠는 무시)"""
    t = np.asarray(t, dtype=float)
    diff = np.asarray(phi, dtype=float)[t >= 0] - kappa
    signs = np.sign(diff[np.abs(diff) > BAND * kappa])
    if signs.size < 2:
        return 0
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def detect_oscillation(sol: ProfileSolution) -> Tuple[bool, int]:
    """
    κ 주위 진동 여부와 교차 횟수

    Raises:
        ValueError: 수렴하지 않은 해
    """
    if not sol.converged:
        raise ValueError(f"수렴하지 않은 프로파일의 진동은 판정하지 않습니다: {sol}")
    count = count_crossings(sol.t, sol.phi, sol.kappa)
    return count >= 2, count


def is_monotone(sol: ProfileSolution, slack: Optional[float] = None) -> bool:
    """이산 기울기가 -10·tol/Δ 보다 작아지지 않으면 단조"""
    slack = 10.0 * sol.tol if slack is None else slack
    slopes = np.diff(sol.phi) / sol.step
    return bool(np.min(slopes) >= -slack / sol.step)
