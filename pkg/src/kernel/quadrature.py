"""
지수 가중 적분의 구간별 선형 정확 구적

균일 격자 위 구간별 선형 함수 y에 대해

    F(t_i) = ∫_{-∞}^{t_i} e^{μ(t_i - s)} y(s) ds

를 점화식 F_{i+1} = e^{μΔ} F_i + w0·y_{i+1} + w1·y_i 로 계산합니다.
가중치는 닫힌 형태 (|μΔ| 작으면 급수)이며 점화식은 scipy.signal.lfilter로 돌립니다.
"""

from typing import Tuple
import math

import numpy as np
from scipy.signal import lfilter

SERIES_THRESHOLD = 0.1
SERIES_TERMS = 18


def exp_weights(mu: float, dt: float) -> Tuple[float, float]:
    """
    한 구간의 가중치 (w0, w1)

    w0 = ∫_0^Δ e^{μu}(1 - u/Δ) du,  w1 = ∫_0^Δ e^{μu}(u/Δ) du
    """
    if dt <= 0:
        raise ValueError(f"격자 간격은 양수여야 합니다: dt={dt}")

    x = mu * dt
    if abs(x) < SERIES_THRESHOLD:
        w0, w1 = 0.0, 0.0
        term = 1.0  # x^n / n!
        for n in range(SERIES_TERMS):
            w0 = w0 + term / ((n + 1) * (n + 2))
            w1 = w1 + term / (n + 2)
            term = term * x / (n + 1)
        return dt * w0, dt * w1

    em1 = math.expm1(x)
    w1 = (x * math.exp(x) - em1) / (mu * x)
    w0 = em1 / mu - w1
    return w0, w1


def forward_integral(y: np.ndarray, mu: float, dt: float, start: float) -> np.ndarray:
    """
    F(t_i) = ∫_{-∞}^{t_i} e^{μ(t_i - s)} y(s) ds  (μ ≤ 0 에서 안정)

    Args:
        y: 격자 값
        mu: 지수
        dt: 격자 간격
        start: F(t_0), 격자 왼쪽 꼬리의 기여
    """
    y = np.asarray(y, dtype=float)
    rho = math.exp(mu * dt)
    w0, w1 = exp_weights(mu, dt)

    out = np.empty_like(y)
    out[0] = start
    if y.size > 1:
        increments = w0 * y[1:] + w1 * y[:-1]
        out[1:], _ = lfilter([1.0], [1.0, -rho], increments, zi=[rho * start])
    return out


def backward_integral(y: np.ndarray, nu: float, dt: float, end: float) -> np.ndarray:
    """
    B(t_i) = ∫_{t_i}^{∞} e^{ν(t_i - s)} y(s) ds  (ν ≥ 0 에서 안정)

    Args:
        end: B(t_{N-1}), 격자 오른쪽 꼬리의 기여
    """
    y = np.asarray(y, dtype=float)
    return forward_integral(y[::-1], -nu, dt, end)[::-1].copy()
