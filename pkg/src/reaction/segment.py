"""
이력 구간 C[-h, 0]의 원소

균일 표본 + 구간별 선형 보간으로 표현합니다. 지연 원자 s_j가 격자점에 놓일 필요는 없습니다.
"""

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np


@dataclass(frozen=True, eq=False)
class HistorySegment:
    """[-h, 0] 위의 연속 함수 (구간별 선형)"""

    h: float
    values: np.ndarray

    def __post_init__(self):
        values = np.atleast_1d(np.asarray(self.values, dtype=float)).copy()
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)

        if self.h < 0:
            raise ValueError(f"지연 h는 음수일 수 없습니다: h={self.h}")
        if self.h == 0 and values.size != 1:
            raise ValueError("h=0 구간은 표본이 하나여야 합니다")
        if self.h > 0 and values.size < 2:
            raise ValueError("h>0 구간은 표본이 둘 이상 필요합니다")

    @property
    def nodes(self) -> np.ndarray:
        if self.h == 0:
            return np.zeros(1)
        return np.linspace(-self.h, 0.0, self.values.size)

    def __call__(self, s: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        s_arr = np.asarray(s, dtype=float)
        tol = 1e-12 * max(1.0, self.h)
        if np.any(s_arr > tol) or np.any(s_arr < -self.h - tol):
            raise ValueError(f"구간 [-{self.h}, 0] 밖의 점에서 평가할 수 없습니다: {s}")

        if self.h == 0:
            result = np.full(s_arr.shape, self.values[0])
        else:
            result = np.interp(s_arr, self.nodes, self.values)

        if np.ndim(s) == 0:
            return float(result)
        return result

    def norm(self) -> float:
        """최대 노름 |φ|_C (구간별 선형이므로 절점에서 달성)"""
        return float(np.max(np.abs(self.values)))

    def _check_compatible(self, other: 'HistorySegment'):
        if abs(self.h - other.h) > 1e-12 or self.values.size != other.values.size:
            raise ValueError("서로 다른 격자의 구간은 결합할 수 없습니다")

    def __add__(self, other: 'HistorySegment') -> 'HistorySegment':
        self._check_compatible(other)
        return HistorySegment(self.h, self.values + other.values)

    def __sub__(self, other: 'HistorySegment') -> 'HistorySegment':
        self._check_compatible(other)
        return HistorySegment(self.h, self.values - other.values)

    def __mul__(self, scalar: float) -> 'HistorySegment':
        return HistorySegment(self.h, self.values * float(scalar))

    __rmul__ = __mul__

    @classmethod
    def constant(cls, h: float, x: float, n: int = 2) -> 'HistorySegment':
        """상수 구간"""
        size = 1 if h == 0 else max(2, n)
        return cls(h, np.full(size, float(x)))

    @classmethod
    def from_function(
        cls,
        h: float,
        fn: Callable[[np.ndarray], np.ndarray],
        n: int = 129
    ) -> 'HistorySegment':
        """함수를 균일 표본화하여 구간 생성"""
        if h == 0:
            return cls(0.0, np.atleast_1d(fn(np.zeros(1))))
        nodes = np.linspace(-h, 0.0, max(2, n))
        return cls(h, np.asarray(fn(nodes), dtype=float))
