"""
시간 발전 상태: 공간 격자와 지연 구간을 덮는 이력 링

    ∂u/∂t = ∂²u/∂x² + f(u_t(·, x)),  u_t(s, x) = u(t + s, x), s ∈ [-h, 0]

프로파일 쪽 이력은 φ(ξ + cs) 이고 여기 이력은 u(t + s, x) 입니다.
u(t, x) = φ(x + ct) 이면 ξ = x + ct 로 둘이 일치합니다.
"""

from dataclasses import dataclass
from typing import Callable, Optional, Tuple
import logging
import math
import os
import sys

import numpy as np

sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from reaction import Model

logger = logging.getLogger(__name__)

# (x, 시각) → u, 시각은 [-h, 0]
InitialData = Callable[[np.ndarray, float], np.ndarray]


class HistoryRing:
    """
    최근 h 시간 동안의 u 를 보관하는 고리 버퍼

    슬롯 수는 ceil(h/Δt) + 2 이고, 지연 값은 인접한 두 슬롯의 선형 보간입니다.
    """

    def __init__(self, n_points: int, dt: float, h: float):
        if dt <= 0:
            raise ValueError(f"시간 간격은 양수여야 합니다: {dt}")
        self.dt = float(dt)
        self.h = float(h)
        self.n_slots = int(math.ceil(h / dt - 1e-9)) + 2
        self.data = np.zeros((self.n_slots, n_points))
        self.head = 0

    @property
    def current(self) -> np.ndarray:
        return self.data[self.head]

    def push(self, u: np.ndarray):
        self.head = (self.head + 1) % self.n_slots
        self.data[self.head] = u

    def slot(self, back: int) -> np.ndarray:
        """back 단계 전 상태 (0이 현재)"""
        if not 0 <= back < self.n_slots:
            raise ValueError(f"링 범위 밖입니다: {back} (슬롯 {self.n_slots}개)")
        return self.data[(self.head - back) % self.n_slots]

    def delayed(self, delay: float) -> np.ndarray:
        """u(t - delay, ·), 0 ≤ delay ≤ h"""
        if delay < -1e-12 or delay > self.h + 1e-12:
            raise ValueError(f"지연이 [0, h] 밖입니다: {delay} (h={self.h})")
        k = max(delay, 0.0) / self.dt
        lower = int(math.floor(k + 1e-9))
        frac = k - lower
        if frac < 1e-9:
            return self.slot(lower)
        return (1.0 - frac) * self.slot(lower) + frac * self.slot(lower + 1)

    def fill(self, values_at: Callable[[float], np.ndarray]):
        """시각 -kΔt 의 값으로 모든 슬롯을 채움 (가장 오래된 슬롯부터)"""
        for back in range(self.n_slots - 1, -1, -1):
            self.data[(self.head - back) % self.n_slots] = values_at(-back * self.dt)


@dataclass
class EvolutionState:
    """
    한 번의 시간 발전 실행 상태

    Attributes:
        x: 공간 격자 [L₋, L₊]
        t: 현재 시각
        ring: 지연 구간을 덮는 이력 링
        clamp_count: u < 0 을 0으로 자른 횟수
    """

    model: Model
    x: np.ndarray
    t: float
    ring: HistoryRing
    clamp_count: int = 0
    steps: int = 0

    @property
    def u(self) -> np.ndarray:
        return self.ring.current

    @property
    def dx(self) -> float:
        return float(self.x[1] - self.x[0])

    @property
    def dt(self) -> float:
        return self.ring.dt

    @property
    def domain(self) -> Tuple[float, float]:
        return float(self.x[0]), float(self.x[-1])

    def tap_values(self) -> np.ndarray:
        """각 공간 점의 탭 값 u(t + s_j, x), 모양 (탭 수, 점 수)"""
        return np.stack([self.ring.delayed(-s) for s in self.model.taps])

    def __repr__(self):
        return (
            f"<EvolutionState(model='{self.model.name}', t={self.t:.4g}, "
            f"domain=[{self.x[0]:.4g}, {self.x[-1]:.4g}], dx={self.dx:.3g})>"
        )


def make_state(
    model: Model,
    domain: Tuple[float, float],
    dx: float,
    dt: float,
    initial: InitialData,
    t0: float = 0.0
) -> EvolutionState:
    """초기 이력 u(s, x), s ∈ [-h, 0] 로 상태 생성"""
    left, right = domain
    if right <= left or dx <= 0:
        raise ValueError(f"잘못된 공간 격자: domain={domain}, dx={dx}")
    n = int(round((right - left) / dx)) + 1
    x = left + dx * np.arange(n, dtype=float)

    ring = HistoryRing(n, dt, model.h)
    ring.fill(lambda s: np.maximum(np.asarray(initial(x, s), dtype=float), 0.0))
    return EvolutionState(model=model, x=x, t=float(t0), ring=ring)


def traveling_data(kappa: float, rate: float, c: float, x0: float = 0.0) -> InitialData:
    """꼬리 e^{rate·x} 를 가진 계단형 자료 min(κ, (κ/2)e^{rate(x - x0 + cs)})"""

    def initial(x: np.ndarray, s: float) -> np.ndarray:
        arg = rate * (x - x0 + c * s)
        return np.minimum(kappa, 0.5 * kappa * np.exp(np.minimum(arg, 50.0)))

    return initial


def compact_data(kappa: float, x0: float = 0.0, width: Optional[float] = None) -> InitialData:
    """x ≥ x0 에서 κ, 그 왼쪽은 0 (width가 있으면 [x0, x0 + width] 만 κ)"""

    def initial(x: np.ndarray, s: float) -> np.ndarray:
        inside = x >= x0
        if width is not None:
            inside = inside & (x <= x0 + width)
        return np.where(inside, kappa, 0.0)

    return initial
