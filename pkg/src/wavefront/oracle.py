"""
h = 0 프로파일의 독립 검증용 사격법

φ'' - cφ' + f*(φ) = 0 을 평형점 κ 의 안정 다양체에서 출발해 t 가 줄어드는 방향으로
적분합니다 (φ ≈ κ - ε e^{ν₋t}, ν₋ < 0). 결과는 κ/2 교차점을 t = 0 에 맞춥니다.
"""

import logging
import math
import os
import sys

import numpy as np
from scipy.integrate import solve_ivp

sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from chareq import real_roots
from reaction import Model

logger = logging.getLogger(__name__)


def shoot_front(
    model: Model,
    c: float,
    t: np.ndarray,
    eps: float = 1e-8,
    span: float = 400.0
) -> np.ndarray:
    """
    사격법 프로파일을 격자 t 에서 평가

    Raises:
        ValueError: h > 0, 또는 κ 가 안장점이 아닐 때
        RuntimeError: 적분 실패, 또는 궤적이 κ/2 를 지나지 않을 때
    """
    if model.h != 0:
        raise ValueError(f"사격법은 h = 0 모델만 지원합니다: h={model.h}")

    kappa = model.kappa
    delta = 1e-6 * kappa
    slope = (model.f_star(kappa + delta) - model.f_star(kappa - delta)) / (2.0 * delta)
    if slope >= 0:
        raise ValueError(f"f*'(κ) = {slope} ≥ 0: κ 가 안장점이 아닙니다")
    nu_minus = 0.5 * (c - math.sqrt(c * c - 4.0 * slope))

    def rhs(_, y):
        return [y[1], c * y[1] - model.f_star(y[0])]

    def reached_zero(_, y):
        return y[0] - 1e-13 * kappa

    reached_zero.terminal = True

    y0 = [kappa - eps, -eps * nu_minus]
    result = solve_ivp(
        rhs, (0.0, -span), y0,
        method='DOP853', rtol=1e-12, atol=1e-16,
        dense_output=True, events=reached_zero
    )
    if result.status < 0:
        raise RuntimeError(f"사격법 적분 실패: {result.message}")

    t_end = float(result.t[-1])
    samples = np.linspace(t_end, 0.0, 200001)
    values = result.sol(samples)[0]
    level = 0.5 * kappa
    above = values >= level
    crossings = np.flatnonzero(~above[:-1] & above[1:])
    if crossings.size == 0:
        raise RuntimeError(f"사격 궤적이 κ/2={level:g}를 지나지 않습니다 (c={c})")
    i = int(crossings[0])
    t_cross = samples[i] + (level - values[i]) / (values[i + 1] - values[i]) * (samples[1] - samples[0])

    roots = real_roots(model, c)
    rate = roots.lambda1 if roots is not None else 1.0
    phi_end = float(values[0])

    x = np.asarray(t, dtype=float) + t_cross
    inside = (x >= t_end) & (x <= 0.0)
    out = np.empty_like(x)
    out[inside] = result.sol(x[inside])[0]
    left = x < t_end
    out[left] = phi_end * np.exp(rate * (x[left] - t_end))
    right = x > 0.0
    out[right] = kappa - eps * np.exp(nu_minus * x[right])

    logger.info(f"사격법 완료: {model.name}, c={c}, 적분 구간 [{t_end:.3g}, 0], 이동 {t_cross:.6g}")
    return out
