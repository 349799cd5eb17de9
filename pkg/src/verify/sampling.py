"""
가설 검사용 무작위 이력 구간

구간은 [-h, 0] 위 8개 절점의 구간별 선형 함수이며, 절점 값은 크기가 로그 균등하게
분포합니다. 모델은 탭 위치의 값만 읽으므로 절점 → 탭 보간 행렬을 한 번 만들어 둡니다.
"""

from dataclasses import dataclass
import os
import sys

import numpy as np

sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from reaction import HistorySegment, Model

N_KNOTS = 8


@dataclass(frozen=True)
class SegmentSampler:
    """모델 탭에 맞춘 구간 표본기"""

    model: Model
    rng: np.random.Generator

    @property
    def n_knots(self) -> int:
        return 1 if self.model.h == 0 else N_KNOTS

    @property
    def knots(self) -> np.ndarray:
        if self.model.h == 0:
            return np.zeros(1)
        return np.linspace(-self.model.h, 0.0, N_KNOTS)

    def interpolation_matrix(self) -> np.ndarray:
        """(탭 수, 절점 수) 행렬: 탭 값 = M @ 절점 값"""
        knots = self.knots
        matrix = np.zeros((len(self.model.taps), knots.size))
        for i, s in enumerate(self.model.taps):
            unit = np.eye(knots.size)
            matrix[i] = [np.interp(s, knots, unit[j]) for j in range(knots.size)]
        return matrix

    def log_uniform(self, low: np.ndarray, high: np.ndarray, size) -> np.ndarray:
        """[low, high] 에서 로그 균등 표본"""
        u = self.rng.uniform(0.0, 1.0, size=size)
        return np.exp(np.log(low) + u * (np.log(high) - np.log(low)))

    def segments(self, n: int, low: float, high: float) -> np.ndarray:
        """(n, 절점 수) 절점 값, 각 값은 [low, high] 로그 균등"""
        return self.log_uniform(low, high, (n, self.n_knots))

    def tap_values(self, knot_values: np.ndarray) -> np.ndarray:
        """(n, 절점 수) → (탭 수, n)"""
        return self.interpolation_matrix() @ knot_values.T

    def to_segment(self, knot_values: np.ndarray) -> HistorySegment:
        return HistorySegment(self.model.h, np.asarray(knot_values, dtype=float))


def make_sampler(model: Model, seed: int) -> SegmentSampler:
    return SegmentSampler(model, np.random.default_rng(seed))
