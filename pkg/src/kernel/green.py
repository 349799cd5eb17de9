"""
y'' - c y' - (1+q) y = 0 의 양의 Green 함수와 합성곱

    K(t) = norm·e^{μ₋ t} (t ≥ 0),  norm·e^{μ₊ t} (t ≤ 0),  norm = 1/(μ₊ - μ₋)

합성곱 ∫K(t - s) src(s) ds 는 두 지수 적분의 합으로 나뉩니다:

    F(t) = ∫_{-∞}^t e^{μ₋(t-s)} src(s) ds,  B(t) = ∫_t^∞ e^{μ₊(t-s)} src(s) ds
"""

from dataclasses import dataclass
from typing import Union
import logging
import math

import numpy as np

from .quadrature import backward_integral, forward_integral

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExponentialTail:
    """
    격자 왼쪽 (s < origin) 의 원천 꼴 (a + b(s - T))·e^{r(s - T)}

    r = 0, b = 0 이면 상수 a 입니다. 임계 속도 꼬리는 b ≠ 0 을 씁니다.
    """

    amplitude: float
    rate: float
    slope: float = 0.0
    origin: float = 0.0

    def __call__(self, s: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        x = np.asarray(s, dtype=float) - self.origin
        return (self.amplitude + self.slope * x) * np.exp(self.rate * x)

    def scaled(self, factor: float) -> 'ExponentialTail':
        return ExponentialTail(self.amplitude * factor, self.rate, self.slope * factor, self.origin)

    def to_dict(self) -> dict:
        return {
            'amplitude': self.amplitude,
            'rate': self.rate,
            'slope': self.slope,
            'origin': self.origin,
        }


@dataclass(frozen=True)
class GreenKernel:
    """양의 Green 함수 K"""

    c: float
    q: float
    mu_plus_root: float
    mu_minus_root: float
    norm: float

    def __call__(self, t: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        t_arr = np.asarray(t, dtype=float)
        rate = np.where(t_arr >= 0, self.mu_minus_root, self.mu_plus_root)
        result = self.norm * np.exp(rate * t_arr)
        if np.ndim(t) == 0:
            return float(result)
        return result

    def derivative(self, t: Union[float, np.ndarray], side: str = 'right') -> Union[float, np.ndarray]:
        """K'(t), t = 0 에서는 side ('left' | 'right') 쪽 극한"""
        if side not in ('left', 'right'):
            raise ValueError(f"side는 'left' 또는 'right' 입니다: {side}")
        t_arr = np.asarray(t, dtype=float)
        on_right = t_arr > 0 if side == 'left' else t_arr >= 0
        rate = np.where(on_right, self.mu_minus_root, self.mu_plus_root)
        result = self.norm * rate * np.exp(rate * t_arr)
        if np.ndim(t) == 0:
            return float(result)
        return result

    def second_derivative(self, t: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        t_arr = np.asarray(t, dtype=float)
        rate = np.where(t_arr >= 0, self.mu_minus_root, self.mu_plus_root)
        return self.norm * rate * rate * np.exp(rate * t_arr)

    @property
    def total_mass(self) -> float:
        """∫K = 1/(1+q)"""
        return self.norm * (1.0 / self.mu_plus_root - 1.0 / self.mu_minus_root)

    @property
    def jump(self) -> float:
        """K'(0⁻) - K'(0⁺)"""
        return self.derivative(0.0, 'left') - self.derivative(0.0, 'right')

    def ode_residual(self, t: np.ndarray) -> np.ndarray:
        """K'' - cK' - (1+q)K (t ≠ 0)"""
        t = np.asarray(t, dtype=float)
        return (
            self.second_derivative(t)
            - self.c * self.derivative(t)
            - (1.0 + self.q) * self(t)
        )


def make_kernel(c: float, q: float) -> GreenKernel:
    """
    Green 함수 생성 및 자체 점검 (ODE 잔차, 도함수 도약 = 1)

    Raises:
        ValueError: c ≤ 0 또는 q < 0
    """
    if c <= 0:
        raise ValueError(f"속도 c는 양수여야 합니다: c={c}")
    if q < 0:
        raise ValueError(f"q는 음수일 수 없습니다: q={q}")

    disc = math.sqrt(c * c + 4.0 * (1.0 + q))
    mu_plus = 0.5 * (c + disc)
    # 상쇄를 피하기 위해 근의 곱 μ₊μ₋ = -(1+q) 사용
    mu_minus = -(1.0 + q) / mu_plus
    kernel = GreenKernel(c, q, mu_plus, mu_minus, 1.0 / disc)

    probe = np.array([-5.0, -1.0, -0.1, 0.1, 1.0, 5.0])
    scale = np.abs(kernel(probe)) * (1.0 + c + mu_plus ** 2)
    residual = float(np.max(np.abs(kernel.ode_residual(probe)) / scale))
    if residual > 1e-12 or abs(kernel.jump - 1.0) > 1e-10:
        logger.warning(f"Green 함수 자체 점검 실패: 잔차={residual:.2e}, 도약={kernel.jump:.15g}")
    return kernel


def convolve(
    k: GreenKernel,
    source: np.ndarray,
    dt: float,
    left_tail: ExponentialTail,
    right_value: float
) -> np.ndarray:
    """
    격자 [T₋, T₊] 위 ∫K(t - s) src(s) ds

    Args:
        k: Green 함수
        source: 격자 값 (t_i = T₋ + iΔ)
        dt: 격자 간격 Δ
        left_tail: s < T₋ 의 원천 (origin = T₋)
        right_value: s > T₊ 의 상수 원천
    """
    d = left_tail.rate - k.mu_minus_root
    start = left_tail.amplitude / d - left_tail.slope / (d * d)
    end = right_value / k.mu_plus_root

    forward = forward_integral(source, k.mu_minus_root, dt, start)
    backward = backward_integral(source, k.mu_plus_root, dt, end)
    return k.norm * (forward + backward)


def extend_left(
    k: GreenKernel,
    t: Union[float, np.ndarray],
    left_tail: ExponentialTail,
    value_at_start: float
) -> Union[float, np.ndarray]:
    """
    격자 왼쪽 t < T₋ 에서의 합성곱 값 (닫힌 형태)

    value_at_start는 convolve 결과의 첫 값입니다. r = μ₊ 공명일 때는
    x·e^{μ₊x} 항으로 바뀝니다.
    """
    t_arr = np.asarray(t, dtype=float)
    x = t_arr - left_tail.origin
    if np.any(x > 0):
        raise ValueError("extend_left는 T₋ 왼쪽 점만 평가합니다")

    a, b, r = left_tail.amplitude, left_tail.slope, left_tail.rate
    d = r - k.mu_minus_root
    forward = ((a + b * x) / d - b / (d * d)) * np.exp(r * x)

    start = a / d - b / (d * d)
    backward_at_start = value_at_start / k.norm - start

    e = r - k.mu_plus_root
    if abs(e) < 1e-12:
        inner = -a * x - 0.5 * b * x * x
    else:
        ex = np.exp(e * x)
        inner = a * (1.0 - ex) / e + b * (-1.0 / (e * e) - x * ex / e + ex / (e * e))
    backward = np.exp(k.mu_plus_root * x) * (inner + backward_at_start)

    result = k.norm * (forward + backward)
    if np.ndim(t) == 0:
        return float(result)
    return result
