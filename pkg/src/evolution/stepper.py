"""
선의 방법 시간 전진

기본은 중앙 2차 차분 라플라시안의 명시적 Euler (Δt ≤ Δx²/2),
반암시적 변형은 확산 항만 삼중대각 풀이로 처리합니다.

경계: 왼쪽 유령점은 u₋₁ = u₀·min(u₀/u₁, 1) (지수 꼬리 연장),
오른쪽 유령점은 u_{N+1} = u_N (상수 연장).
"""

from typing import Optional, Tuple
import logging

import numpy as np
from scipy.linalg import solve_banded

from .state import EvolutionState

logger = logging.getLogger(__name__)

CFL_LIMIT = 0.5
DEFAULT_CFL = 0.4


def default_dt(dx: float) -> float:
    return DEFAULT_CFL * dx * dx


def left_ratio(u: np.ndarray) -> float:
    """왼쪽 유령점 비율 min(u₀/u₁, 1), u₁ = 0 이면 0"""
    if u[1] <= 0:
        return 0.0
    return float(min(u[0] / u[1], 1.0))


def laplacian(u: np.ndarray, dx: float) -> np.ndarray:
    ghost_left = u[0] * left_ratio(u)
    padded = np.concatenate(([ghost_left], u, [u[-1]]))
    return (padded[:-2] - 2.0 * u + padded[2:]) / (dx * dx)


def _diffusion_matrix(n: int, r: float, ratio: float) -> np.ndarray:
    """(I - rD) 의 띠 저장 (위, 주, 아래)"""
    ab = np.zeros((3, n))
    ab[0, 1:] = -r
    ab[1, :] = 1.0 + 2.0 * r
    ab[2, :-1] = -r
    ab[1, 0] -= r * ratio
    ab[1, -1] -= r
    return ab


def _clamp(state: EvolutionState, u: np.ndarray) -> np.ndarray:
    negative = int(np.count_nonzero(u < 0))
    if negative:
        state.clamp_count = state.clamp_count + negative
        u = np.maximum(u, 0.0)
    return u


def step(state: EvolutionState, dt: Optional[float] = None, implicit: bool = False) -> EvolutionState:
    """
    한 시간 단계 전진 (상태를 갱신해서 돌려줌)

    Args:
        dt: 시간 간격, 링 간격과 같아야 함 (None이면 링 간격)
        implicit: 확산 항 반암시적 처리

    Raises:
        ValueError: 링 간격과 다른 dt, 명시적 모드의 CFL 위반
    """
    ring_dt = state.dt
    if dt is not None and abs(dt - ring_dt) > 1e-15 * max(1.0, ring_dt):
        raise ValueError(f"dt({dt})가 이력 링 간격({ring_dt})과 다릅니다")
    dt = ring_dt
    dx = state.dx
    if not implicit and dt > CFL_LIMIT * dx * dx:
        raise ValueError(f"명시적 안정 조건 위반: dt={dt} > Δx²/2={CFL_LIMIT * dx * dx}")

    u = state.u
    reaction = state.model.reaction_at(state.tap_values())

    if implicit:
        r = dt / (dx * dx)
        ab = _diffusion_matrix(u.size, r, left_ratio(u))
        new_u = solve_banded((1, 1), ab, u + dt * reaction)
    else:
        new_u = u + dt * (laplacian(u, dx) + reaction)

    state.ring.push(_clamp(state, new_u))
    state.t = state.t + dt
    state.steps = state.steps + 1
    return state


def advance(state: EvolutionState, t_end: float, implicit: bool = False) -> EvolutionState:
    """t_end 까지 전진"""
    n_steps = int(round((t_end - state.t) / state.dt))
    for _ in range(max(n_steps, 0)):
        step(state, implicit=implicit)
    return state


def level_crossing(x: np.ndarray, u: np.ndarray, level: float) -> Optional[float]:
    """u 가 level 을 처음 위로 지나는 x (선형 보간), 없으면 None"""
    above = u >= level
    if above[0]:
        return float(x[0])
    idx = np.flatnonzero(~above[:-1] & above[1:])
    if idx.size == 0:
        return None
    i = int(idx[0])
    return float(x[i] + (level - u[i]) / (u[i + 1] - u[i]) * (x[i + 1] - x[i]))


def front_bounds(state: EvolutionState, margin: float) -> Tuple[float, float]:
    left, right = state.domain
    return left + margin, right - margin
