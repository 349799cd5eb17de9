"""
프로파일 위의 진단량

    Q(t) = f'(0)φ̃_t - f(φ̃_t)
    π = ∫ e^{-λ₁ s} Q(s) ds
"""

from typing import Tuple
import logging
import os
import sys

import numpy as np
from scipy.integrate import trapezoid

sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from wavefront import FixedPointOperator, ProfileSolution

logger = logging.getLogger(__name__)


def q_values(sol: ProfileSolution) -> np.ndarray:
    """격자 위 Q(t) (왼쪽은 저장된 꼬리로 연장한 이력 사용)"""
    op = FixedPointOperator(sol.model, sol.c, sol.t, sol.lambda1, sol.critical)
    history = op.history(sol.phi, sol.tail)
    return sol.model.linear_response(history) - sol.model.reaction_at(history)


def diagnostics_Q(sol: ProfileSolution) -> Tuple[float, float]:
    """
    (Q_min, π 적분)

    π 적분은 격자 위 사다리꼴에 양 끝 꼬리의 닫힌 꼴을 더합니다.
    왼쪽은 Q ~ φ^{1+α} 이므로 피적분 함수가 e^{αλ₁ s} 로 줄어들고,
    오른쪽은 Q(T₊) 가 상수로 이어진다고 봅니다.

    Raises:
        ValueError: 수렴하지 않은 해
    """
    if not sol.converged:
        raise ValueError(f"수렴하지 않은 프로파일의 진단량은 계산하지 않습니다: {sol}")

    q = q_values(sol)
    lam = sol.lambda1
    weight = np.exp(-lam * sol.t)
    integrand = weight * q

    alpha = sol.model.smoothness.alpha if sol.model.smoothness else 1.0
    left = integrand[0] / (alpha * lam)
    right = q[-1] * weight[-1] / lam
    pi_integral = float(trapezoid(integrand, sol.t) + left + right)
    q_min = float(np.min(q))

    if q_min < -10.0 * sol.tol:
        logger.warning(f"{sol.model.name}: Q_min={q_min:.3e} < -10·tol")
    if pi_integral <= 0:
        logger.warning(f"{sol.model.name}: π 적분이 양수가 아닙니다 ({pi_integral:.6g})")
    logger.info(f"진단량: Q_min={q_min:.3e}, π={pi_integral:.6g}")
    return q_min, pi_integral
