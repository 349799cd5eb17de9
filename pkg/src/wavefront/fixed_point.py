"""
프로파일 적분 연산자

    Aφ(t) = ∫K(t - s)[(1+q)φ(s) + f(φ̃_s)] ds,  φ̃_s(θ) = φ(s + cθ)

격자 왼쪽은 T₋ 에서 맞춘 지수 꼬리, 오른쪽은 상수 φ(T₊) 로 연장합니다.
"""

from typing import Optional, Tuple
import logging
import math
import os
import sys

import numpy as np

sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from kernel import ExponentialTail, convolve, make_kernel
from reaction import Model

logger = logging.getLogger(__name__)

TAIL_FIT_SPAN = 1.0


class FixedPointOperator:
    """고정 격자 위의 적분 연산자 A"""

    def __init__(self, model: Model, c: float, t: np.ndarray, lambda1: float, critical: bool):
        self.model = model
        self.c = float(c)
        self.t = np.asarray(t, dtype=float)
        self.dt = float(self.t[1] - self.t[0])
        self.lambda1 = float(lambda1)
        self.critical = bool(critical)
        self.kernel = make_kernel(self.c, model.measure.q)
        self.shifts = self.c * model.tap_array
        self.fit_offset = max(1, int(round(TAIL_FIT_SPAN / self.dt)))

    def fit_tail(self, values: np.ndarray, rate: Optional[float] = None, two_point: Optional[bool] = None) -> ExponentialTail:
        """T₋ 에서 (a + b(s - T₋))e^{r(s - T₋)} 꼬리 맞춤 (b ≤ 0)"""
        rate = self.lambda1 if rate is None else rate
        two_point = self.critical if two_point is None else two_point
        origin = float(self.t[0])
        a = float(values[0])
        if not two_point:
            return ExponentialTail(a, rate, 0.0, origin)

        m = min(self.fit_offset, values.size - 1)
        span = m * self.dt
        b = (float(values[m]) * math.exp(-rate * span) - a) / span
        return ExponentialTail(a, rate, min(b, 0.0), origin)

    def extend(self, phi: np.ndarray, tail: ExponentialTail, x: np.ndarray) -> np.ndarray:
        """격자 밖까지 연장한 φ(x): 왼쪽 꼬리, 오른쪽 상수"""
        out = np.interp(x, self.t, phi)
        left = x < self.t[0]
        if np.any(left):
            out[left] = tail(x[left])
        return out

    def history(self, phi: np.ndarray, tail: ExponentialTail) -> np.ndarray:
        """탭 값 배열 φ(t_i + c s_j), 모양 (탭 수, 격자 수)"""
        return np.stack([self.extend(phi, tail, self.t + shift) for shift in self.shifts])

    def source(self, phi: np.ndarray, tail: ExponentialTail) -> np.ndarray:
        q = self.model.measure.q
        return (1.0 + q) * phi + self.model.reaction_at(self.history(phi, tail))

    def apply(self, phi: np.ndarray, tail: Optional[ExponentialTail] = None) -> Tuple[np.ndarray, ExponentialTail]:
        """(Aφ, 사용한 φ 꼬리)"""
        if tail is None:
            tail = self.fit_tail(phi)
        src = self.source(phi, tail)
        src_tail = self.fit_tail(src, rate=tail.rate, two_point=self.critical or tail.slope != 0)

        q = self.model.measure.q
        right = phi[-1]
        right_source = (1.0 + q) * right + self.model.f_star(float(right))
        return convolve(self.kernel, src, self.dt, src_tail, right_source), tail

    def pin(self, phi: np.ndarray) -> Tuple[np.ndarray, float]:
        """κ/2 상향 교차점을 t = 0 으로 이동. (이동된 φ, 이동량)"""
        level = 0.5 * self.model.kappa
        above = phi >= level
        crossings = np.flatnonzero(~above[:-1] & above[1:])
        if crossings.size == 0:
            logger.warning("κ/2 상향 교차점이 없어 고정하지 않습니다")
            return phi, 0.0

        i = int(crossings[0])
        t_cross = self.t[i] + (level - phi[i]) / (phi[i + 1] - phi[i]) * self.dt
        if abs(t_cross) < 1e-14:
            return phi, 0.0
        tail = self.fit_tail(phi)
        return self.extend(phi, tail, self.t + t_cross), float(t_cross)


