"""
지연 반응 범함수 f와 그 선형화

f는 유한 개의 지연 탭 s ∈ [-h, 0]에서의 값만 읽습니다. 반응 함수는 모양
(탭 수, ...)의 배열을 받아 (...) 모양의 값을 돌려주도록 벡터화되어 있어,
프로파일 솔버가 격자 전체를 한 번에 평가할 수 있습니다.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple, Union
import logging

import numpy as np

from .measure import Measure
from .segment import HistorySegment

logger = logging.getLogger(__name__)

ReactionFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Smoothness:
    """가정 (S)의 상수 (K, α, δ)"""

    K: float
    alpha: float
    delta: float

    def __post_init__(self):
        if self.K <= 0 or self.alpha <= 0 or self.delta <= 0:
            raise ValueError(f"평활성 상수는 모두 양수여야 합니다: {self}")

    def to_dict(self) -> dict:
        return {'K': self.K, 'alpha': self.alpha, 'delta': self.delta}


@dataclass(frozen=True, eq=False)
class Model:
    """
    단안정 지연 반응 모델

    Attributes:
        name: 모델 식별자
        h: 최대 지연
        taps: f가 읽는 지연 위치 (각각 [-h, 0] 안)
        reaction: 탭 값 배열 → 반응 값 (벡터화)
        measure: f'(0)의 (q, μ₊) 분해
        kappa: 양의 평형점 κ
        smoothness: (S)의 상수, 모르면 None
        sup_bound: 속도 c에 대한 프로파일 상한 (솔버 클램프에 사용)
        params: 생성 파라미터 (보고용)
    """

    name: str
    h: float
    taps: Tuple[float, ...]
    reaction: ReactionFn
    measure: Measure
    kappa: float
    smoothness: Optional[Smoothness] = None
    sup_bound: Optional[Callable[[float], float]] = None
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        taps = tuple(float(s) for s in self.taps)
        object.__setattr__(self, 'taps', taps)

        if self.h < 0:
            raise ValueError(f"지연 h는 음수일 수 없습니다: h={self.h}")
        if not taps:
            raise ValueError("탭이 하나 이상 필요합니다")
        if self.kappa <= 0:
            raise ValueError(f"양의 평형점 κ가 필요합니다: κ={self.kappa}")
        for s in taps:
            if s > 1e-12 or s < -self.h - 1e-12:
                raise ValueError(f"탭 위치가 [-h, 0] 밖에 있습니다: s={s}, h={self.h}")
        if abs(self.measure.h - self.h) > 1e-12:
            raise ValueError(f"측도의 h({self.measure.h})와 모델의 h({self.h})가 다릅니다")

        # 탭 값에 곱할 선형화 계수: -q (lag 0) + w_j (원자)
        weights = np.zeros(len(taps))
        if self.measure.q > 0:
            weights[self._tap_index(0.0)] -= self.measure.q
        for s, w in self.measure.atoms:
            weights[self._tap_index(s)] += w
        weights.setflags(write=False)
        object.__setattr__(self, '_lin_weights', weights)

    def _tap_index(self, s: float) -> int:
        for i, tap in enumerate(self.taps):
            if abs(tap - s) <= 1e-12 * max(1.0, self.h):
                return i
        raise ValueError(f"측도 원자 s={s}가 모델 탭 {self.taps}에 없습니다")

    @property
    def tap_array(self) -> np.ndarray:
        return np.asarray(self.taps, dtype=float)

    def _check_domain(self, seg: HistorySegment):
        if abs(seg.h - self.h) > 1e-12 * max(1.0, self.h):
            raise ValueError(f"구간의 h({seg.h})가 모델 {self.name}의 h({self.h})와 다릅니다")

    def eval_f(self, seg: HistorySegment) -> float:
        """f(φ): 구간 위 반응 범함수 값"""
        self._check_domain(seg)
        values = np.asarray(seg(self.tap_array), dtype=float)
        return float(self.reaction(values))

    def eval_lin(self, seg: HistorySegment) -> float:
        """f'(0)φ = -qφ(0) + Σ w_j φ(s_j)"""
        self._check_domain(seg)
        total = -self.measure.q * seg(0.0)
        for s, w in self.measure.atoms:
            total = total + w * seg(s)
        return float(total)

    def reaction_at(self, values: np.ndarray) -> np.ndarray:
        """탭 값 배열 (n_taps, ...)에서 f를 평가"""
        return np.asarray(self.reaction(np.asarray(values, dtype=float)), dtype=float)

    def linear_response(self, values: np.ndarray) -> np.ndarray:
        """탭 값 배열 (n_taps, ...)에서 f'(0)을 평가"""
        return np.tensordot(self._lin_weights, np.asarray(values, dtype=float), axes=1)

    def f_star(self, x: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        """상수 구간 위의 값 f*(x) = f(x)"""
        x_arr = np.asarray(x, dtype=float)
        values = np.broadcast_to(x_arr, (len(self.taps),) + x_arr.shape)
        result = self.reaction_at(values)
        if np.ndim(x) == 0:
            return float(result)
        return result

    def bound(self, c: float) -> float:
        """속도 c 프로파일의 사전 상한"""
        if self.sup_bound is None:
            return 2.0 * self.kappa
        return float(self.sup_bound(c))

    def linearized(self) -> 'Model':
        """f를 f'(0)으로 바꾼 모델"""
        return Model(
            name=f"{self.name}_lin",
            h=self.h,
            taps=self.taps,
            reaction=self.linear_response,
            measure=self.measure,
            kappa=self.kappa,
            smoothness=None,
            sup_bound=self.sup_bound,
            params=dict(self.params),
        )

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'h': self.h,
            'kappa': self.kappa,
            'taps': list(self.taps),
            'measure': self.measure.to_dict(),
            'smoothness': self.smoothness.to_dict() if self.smoothness else None,
            'params': dict(self.params),
        }

    def __repr__(self):
        return f"<Model(name='{self.name}', h={self.h}, kappa={self.kappa})>"
