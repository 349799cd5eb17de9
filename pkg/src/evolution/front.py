"""
전선 속도 측정과 이동 좌표계 비교

u(t, x) = φ(x + ct) 는 왼쪽으로 움직이므로, 가장 왼쪽의 κ/2 상향 교차 위치 X(t) 의
후반부 최소제곱 기울기의 부호를 바꾼 값을 속도로 보고합니다.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple
import logging
import os
import sys

import numpy as np
import pandas as pd

sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from chareq import speed_for_rate
from reaction import Model
from wavefront import ProfileSolution
from .state import EvolutionState, InitialData, compact_data, make_state, traveling_data
from .stepper import default_dt, front_bounds, level_crossing, step

logger = logging.getLogger(__name__)

BOUNDARY_MARGIN = 10.0


@dataclass
class FrontResult:
    """
    전선 추적 결과

    aborted 이면 전선이 경계 10 이내로 들어가 중단된 것이고, 그때까지의 자료만 담습니다.
    """

    model: str
    times: List[float] = field(default_factory=list)
    positions: List[float] = field(default_factory=list)
    speed: float = float('nan')
    aborted: bool = False
    clamp_count: int = 0
    expected_speed: Optional[float] = None
    state: Optional[EvolutionState] = None

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({'t': self.times, 'position': self.positions})

    def to_dict(self) -> dict:
        return {
            'model': self.model,
            'speed': self.speed,
            'expected_speed': self.expected_speed,
            'aborted': self.aborted,
            'clamp_count': self.clamp_count,
            'records': len(self.times),
            't_end': self.times[-1] if self.times else None,
        }


def fit_speed(times: np.ndarray, positions: np.ndarray) -> float:
    """후반부 X(t) 기울기의 부호 반전"""
    times = np.asarray(times, dtype=float)
    positions = np.asarray(positions, dtype=float)
    if times.size < 2:
        return float('nan')
    half = times >= times[0] + 0.5 * (times[-1] - times[0])
    if np.count_nonzero(half) < 2:
        half = np.ones_like(times, dtype=bool)
    slope = np.polyfit(times[half], positions[half], 1)[0]
    return float(-slope)


def front_speed(
    model: Model,
    initial: InitialData,
    t_run: float,
    domain: Tuple[float, float],
    dx: float = 0.1,
    dt: Optional[float] = None,
    implicit: bool = False,
    record_every: float = 0.1,
    expected_speed: Optional[float] = None
) -> FrontResult:
    """
    초기 자료에서 t_run 까지 전진하며 κ/2 위치를 기록

    Args:
        initial: (x, s) → u(s, x), s ∈ [-h, 0]
        domain: (L₋, L₊)
        dt: 시간 간격 (None이면 0.4Δx²)
        record_every: 위치 기록 간격 (시간)
    """
    dt = default_dt(dx) if dt is None else dt
    state = make_state(model, domain, dx, dt, initial)
    level = 0.5 * model.kappa
    low, high = front_bounds(state, BOUNDARY_MARGIN)
    every = max(1, int(round(record_every / dt)))
    n_steps = int(round(t_run / dt))

    logger.info(
        f"시간 발전 시작: {model.name}, 영역=[{domain[0]}, {domain[1]}], Δx={dx}, Δt={dt:.3g}, "
        f"T={t_run}, {'반암시적' if implicit else '명시적'}"
    )
    result = FrontResult(model=model.name, expected_speed=expected_speed, state=state)

    for n in range(n_steps + 1):
        if n % every == 0:
            position = level_crossing(state.x, state.u, level)
            if position is None or not low <= position <= high:
                result.aborted = True
                logger.warning(f"전선이 영역 경계에 닿아 t={state.t:.4g} 에서 중단합니다 (위치 {position})")
                break
            result.times.append(state.t)
            result.positions.append(position)
        if n < n_steps:
            step(state, implicit=implicit)

    result.speed = fit_speed(np.array(result.times), np.array(result.positions))
    result.clamp_count = state.clamp_count
    if state.clamp_count:
        logger.warning(f"{model.name}: 음수 클램프 {state.clamp_count}회")
    logger.info(f"시간 발전 종료: t={state.t:.4g}, 측정 속도={result.speed:.6g}")
    return result


def default_domain(speed: float, t_run: float, right: float = 40.0) -> Tuple[float, float]:
    """t_run 동안 왼쪽으로 speed·t_run 이동해도 경계에서 여유가 남는 영역"""
    return -(speed * t_run + 3.0 * BOUNDARY_MARGIN + 20.0), right


def traveling_front(
    model: Model,
    rate: float,
    t_run: float,
    dx: float = 0.1,
    domain: Optional[Tuple[float, float]] = None,
    implicit: bool = False
) -> FrontResult:
    """왼쪽 꼬리 e^{rate·x} 자료의 전선 속도 (기대값은 χ(rate, c) = 0 의 c)"""
    c = speed_for_rate(model, rate)
    domain = domain or default_domain(c, t_run)
    initial = traveling_data(model.kappa, rate, c)
    return front_speed(model, initial, t_run, domain, dx, implicit=implicit, expected_speed=c)


def compact_front(
    model: Model,
    t_run: float,
    dx: float = 0.1,
    domain: Optional[Tuple[float, float]] = None,
    implicit: bool = False,
    expected_speed: Optional[float] = None
) -> FrontResult:
    """계단형 (왼쪽이 0) 자료의 전선 속도"""
    speed_guess = expected_speed if expected_speed is not None else 2.0 * np.sqrt(model.measure.p)
    domain = domain or default_domain(speed_guess, t_run)
    initial = compact_data(model.kappa)
    return front_speed(model, initial, t_run, domain, dx, implicit=implicit, expected_speed=expected_speed)


def moving_profile(state: EvolutionState, xi: np.ndarray) -> np.ndarray:
    """κ/2 교차점을 원점으로 둔 이동 좌표 ξ 에서의 u"""
    origin = level_crossing(state.x, state.u, 0.5 * state.model.kappa)
    if origin is None:
        raise ValueError("κ/2 교차점이 없어 이동 좌표를 만들 수 없습니다")
    return np.interp(origin + np.asarray(xi, dtype=float), state.x, state.u)


def compare_with_profile(
    state: EvolutionState,
    sol: ProfileSolution,
    window: Tuple[float, float] = (-20.0, 20.0)
) -> float:
    """
    이동 좌표계 u 와 솔버 프로파일 φ 의 sup 거리 (둘 다 κ/2 교차점에 고정)

    Raises:
        ValueError: 모델이 다르거나 창이 격자 밖일 때
    """
    if state.model.name != sol.model.name or abs(state.model.h - sol.model.h) > 1e-12:
        raise ValueError(f"서로 다른 모델입니다: {state.model} / {sol.model}")
    lo = max(window[0], sol.t_min)
    hi = min(window[1], sol.t_max)
    if hi <= lo:
        raise ValueError(f"비교 창이 프로파일 격자 밖입니다: {window}")

    mask = (sol.t >= lo) & (sol.t <= hi)
    xi = sol.t[mask]
    error = float(np.max(np.abs(moving_profile(state, xi) - sol.phi[mask])))
    logger.info(f"이동 좌표 비교: 창=[{lo:.3g}, {hi:.3g}], sup 오차={error:.3e}")
    return error
