"""
특성 함수 χ(z, c) = z² - cz - q + Σ w_j e^{c z s_j} 와 실근

실수축 위에서 χ(·, c)는 강볼록이고 χ(0, c) = p - q > 0, ∂χ/∂z(0, c) < 0 이므로
양의 실근은 최솟점 양쪽에 많아야 하나씩 있습니다.
"""

from dataclasses import dataclass
from typing import Optional, Tuple, Union
import logging
import os
import sys

import numpy as np
from scipy.optimize import brentq

# 상대 경로 처리
sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from reaction import Model

logger = logging.getLogger(__name__)

DOUBLE_ROOT_RTOL = 1e-6


@dataclass(frozen=True)
class RootPair:
    """χ(·, c)의 두 양의 실근 λ₁ ≤ λ₂"""

    lambda1: float
    lambda2: float
    critical: bool

    def to_dict(self) -> dict:
        return {'lambda1': self.lambda1, 'lambda2': self.lambda2, 'critical': self.critical}


def eval_chi(model: Model, z: Union[complex, np.ndarray], c: float) -> Union[complex, float, np.ndarray]:
    """
    χ(z, c) 평가

    Args:
        model: 반응 모델 (측도만 사용)
        z: 복소수 또는 배열
        c: 속도 (> 0)
    """
    if c <= 0:
        raise ValueError(f"속도 c는 양수여야 합니다: c={c}")

    z_arr = np.asarray(z)
    positions = model.measure.positions
    weights = model.measure.weights
    delayed = np.exp(c * np.multiply.outer(z_arr, positions)) @ weights if positions.size else 0.0
    result = z_arr * z_arr - c * z_arr - model.measure.q + delayed

    if np.ndim(z) == 0:
        return complex(result) if np.iscomplexobj(result) else float(result)
    return result


def chi_parts(model: Model, lam: float, c: float) -> Tuple[float, float, float, float, float]:
    """
    실수 λ에서 (χ, χ_z, χ_zz, χ_c, χ_zc)

    Newton 반복의 야코비안 [[χ_z, χ_c], [χ_zz, χ_zc]] 에 쓰입니다.
    """
    s = model.measure.positions
    w = model.measure.weights
    e = w * np.exp(c * lam * s)

    chi = lam * lam - c * lam - model.measure.q + float(np.sum(e))
    chi_z = 2.0 * lam - c + float(np.sum(e * c * s))
    chi_zz = 2.0 + float(np.sum(e * (c * s) ** 2))
    chi_c = -lam + float(np.sum(e * lam * s))
    chi_zc = -1.0 + float(np.sum(e * s * (1.0 + c * lam * s)))
    return chi, chi_z, chi_zz, chi_c, chi_zc


def _chi_real(model: Model, lam: float, c: float) -> float:
    return chi_parts(model, lam, c)[0]


def _chi_z_real(model: Model, lam: float, c: float) -> float:
    return chi_parts(model, lam, c)[1]


def chi_minimum(model: Model, c: float) -> Tuple[float, float]:
    """
    양의 실수축 위 χ(·, c)의 최솟점과 최솟값

    Returns:
        (z_min, χ(z_min, c))
    """
    hi = 1.0
    while _chi_z_real(model, hi, c) <= 0:
        hi = hi * 2.0
        if hi > 1e8:
            raise ValueError(f"χ_z의 부호 변화 구간을 찾지 못했습니다: c={c}")
    z_min = brentq(lambda z: _chi_z_real(model, z, c), 0.0, hi, xtol=1e-15)
    return float(z_min), _chi_real(model, z_min, c)


def real_roots(model: Model, c: float) -> Optional[RootPair]:
    """
    χ(·, c)의 두 양의 실근

    Returns:
        RootPair, c < c* (실근 없음)이면 None
    """
    if c <= 0:
        raise ValueError(f"속도 c는 양수여야 합니다: c={c}")
    model.measure.require_nondegenerate()

    z_min, chi_min = chi_minimum(model, c)
    tol = 1e-12 * (1.0 + z_min * z_min)

    if chi_min > tol:
        logger.warning(f"{model.name}: c={c}는 임계 속도 미만입니다 (min χ = {chi_min:.3e} > 0)")
        return None
    if abs(chi_min) <= tol:
        return RootPair(z_min, z_min, True)

    lambda1 = brentq(lambda z: _chi_real(model, z, c), 0.0, z_min, xtol=1e-15)

    hi = z_min + 1.0
    while _chi_real(model, hi, c) <= 0:
        hi = z_min + 2.0 * (hi - z_min)
    lambda2 = brentq(lambda z: _chi_real(model, z, c), z_min, hi, xtol=1e-15)

    critical = (lambda2 - lambda1) < DOUBLE_ROOT_RTOL * max(1.0, lambda2)
    return RootPair(float(lambda1), float(lambda2), bool(critical))
