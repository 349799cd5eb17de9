"""
임계 속도 c* 계산과 속도 분석

c*는 이중근 조건 χ(λ, c) = 0, ∂χ/∂λ(λ, c) = 0 의 해입니다.
감쇠 Newton 법으로 풀고, c에 대한 이분법 (min_λ χ(λ, c)의 부호)으로 교차 검증합니다.
"""

from dataclasses import dataclass
from typing import Optional, Tuple
import logging
import math
import os
import sys

import numpy as np
from scipy.optimize import bisect, brentq

sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from reaction import Model
from .characteristic import RootPair, chi_minimum, chi_parts, eval_chi, real_roots

logger = logging.getLogger(__name__)

MAX_NEWTON_ITER = 60
AGREEMENT_TOL = 1e-8


class CriticalSpeedError(RuntimeError):
    """Newton과 이분법이 모두 실패"""


@dataclass(frozen=True)
class CriticalSpeed:
    """
    임계 속도 계산 결과

    agreed: Newton과 이분법 값의 차이가 AGREEMENT_TOL 이하인지 (한쪽만 성공하면 None)
    """

    c_star: float
    lambda_star: float
    method: str
    newton: Optional[Tuple[float, float]] = None
    bisection: Optional[float] = None
    agreed: Optional[bool] = None

    def to_dict(self) -> dict:
        return {
            'c_star': self.c_star,
            'lambda_star': self.lambda_star,
            'method': self.method,
            'newton_c_star': self.newton[0] if self.newton else None,
            'bisection_c_star': self.bisection,
            'agreed': self.agreed,
        }


@dataclass(frozen=True)
class SpeedAnalysis:
    """속도 c의 특성근 분석"""

    c: float
    lambda1: Optional[float]
    lambda2: Optional[float]
    critical: bool
    c_star: float
    lambda_star: float
    dominance_ok: Optional[bool]

    @property
    def subcritical(self) -> bool:
        return self.lambda1 is None

    def to_dict(self) -> dict:
        return {
            'c': self.c,
            'c_star': self.c_star,
            'lambda_star': self.lambda_star,
            'lambda1': self.lambda1,
            'lambda2': self.lambda2,
            'critical': self.critical,
            'subcritical': self.subcritical,
            'dominance_ok': self.dominance_ok,
        }


def _newton(model: Model, tol: float = 1e-13) -> Optional[Tuple[float, float]]:
    """(λ, c) 감쇠 Newton. 수렴 실패 시 None"""
    gap = model.measure.p - model.measure.q
    lam, c = math.sqrt(gap), 2.0 * math.sqrt(gap)

    for iteration in range(MAX_NEWTON_ITER):
        chi, chi_z, chi_zz, chi_c, chi_zc = chi_parts(model, lam, c)
        residual = max(abs(chi), abs(chi_z))
        if residual <= tol * (1.0 + lam * lam):
            logger.debug(f"Newton 수렴: {iteration}회, c={c:.15g}, λ={lam:.15g}")
            return lam, c

        jacobian = np.array([[chi_z, chi_c], [chi_zz, chi_zc]])
        try:
            d_lam, d_c = np.linalg.solve(jacobian, [-chi, -chi_z])
        except np.linalg.LinAlgError:
            logger.warning("Newton 야코비안이 특이합니다")
            return None

        # 양수 영역을 유지하며 잔차가 줄 때까지 반감
        step = 1.0
        while step > 1e-6:
            new_lam, new_c = lam + step * d_lam, c + step * d_c
            if new_lam > 0 and new_c > 0:
                new_chi, new_chi_z = chi_parts(model, new_lam, new_c)[:2]
                if max(abs(new_chi), abs(new_chi_z)) < residual or step == 1.0 and residual < 1e-8:
                    break
            step = step * 0.5
        else:
            logger.warning(f"Newton 감쇠 실패: c={c}, λ={lam}")
            return None
        lam, c = new_lam, new_c

    logger.warning(f"Newton이 {MAX_NEWTON_ITER}회 안에 수렴하지 않았습니다")
    return None


def _bisection(model: Model, xtol: float = 1e-13) -> Optional[float]:
    """min_λ χ(λ, c) 의 부호 변화로 c* 탐색"""
    gap = model.measure.p - model.measure.q

    def min_chi(c: float) -> float:
        return chi_minimum(model, c)[1]

    # 지연 항은 e^{czs} ≤ 1 이므로 c* ≤ 2√(p-q)
    c_lo, c_hi = 1e-6, 2.0 * math.sqrt(gap) + 0.5
    try:
        if min_chi(c_lo) <= 0 or min_chi(c_hi) > 0:
            logger.warning("이분법 초기 구간에서 부호 변화가 없습니다")
            return None
        return float(bisect(min_chi, c_lo, c_hi, xtol=xtol, maxiter=200))
    except (ValueError, RuntimeError) as e:
        logger.warning(f"이분법 실패: {e}")
        return None


def critical_speed(model: Model) -> CriticalSpeed:
    """
    임계 속도 c*와 이중근 λ*

    Raises:
        ValueError: (ND) 위반
        CriticalSpeedError: Newton과 이분법 모두 실패
    """
    model.measure.require_nondegenerate()

    newton = _newton(model)
    bisection_c = _bisection(model)

    if newton is None and bisection_c is None:
        raise CriticalSpeedError(f"{model.name}: 임계 속도 계산 실패 (Newton, 이분법 모두)")

    if newton is None:
        logger.warning(f"{model.name}: Newton 실패, 이분법 값 사용 c*={bisection_c:.15g}")
        z_min, _ = chi_minimum(model, bisection_c)
        return CriticalSpeed(bisection_c, z_min, 'bisection', None, bisection_c)

    lam, c = newton
    agreed = None
    if bisection_c is not None:
        agreed = abs(bisection_c - c) <= AGREEMENT_TOL
        if not agreed:
            logger.warning(f"{model.name}: Newton c*={c:.15g}와 이분법 c*={bisection_c:.15g}가 다릅니다")

    logger.info(f"{model.name}: 임계 속도 c*={c:.12g}, λ*={lam:.12g}")
    return CriticalSpeed(c, lam, 'newton', (c, lam), bisection_c, agreed)


def speed_for_rate(model: Model, rate: float) -> float:
    """χ(rate, c) = 0 을 만족하는 속도 c (꼬리 감쇠율 → 속도)"""
    if rate <= 0:
        raise ValueError(f"감쇠율은 양수여야 합니다: {rate}")

    def chi_at(c: float) -> float:
        return chi_parts(model, rate, c)[0]

    hi = 1.0
    while chi_at(hi) > 0:
        hi = hi * 2.0
        if hi > 1e8:
            raise ValueError(f"감쇠율 {rate}에 대응하는 속도가 없습니다")
    return float(brentq(chi_at, 1e-12, hi, xtol=1e-15))


def analyze_speed(
    model: Model,
    c: Optional[float] = None,
    c_offset: float = 0.0,
    check_dominance: bool = True,
    eps_hat: float = 1e-3
) -> SpeedAnalysis:
    """
    속도 분석: c*, λ₁(c), λ₂(c), 임계 여부, 지배성

    Args:
        c: 분석할 속도, None이면 c* + c_offset
    """
    from .zeros import dominance_check

    crit = critical_speed(model)
    at_critical = c is None and c_offset == 0.0
    if c is None:
        c = crit.c_star + c_offset

    if at_critical:
        roots: Optional[RootPair] = RootPair(crit.lambda_star, crit.lambda_star, True)
    else:
        roots = real_roots(model, c)

    if roots is None:
        return SpeedAnalysis(c, None, None, False, crit.c_star, crit.lambda_star, None)

    dominance = dominance_check(model, c, eps_hat=eps_hat, roots=roots) if check_dominance else None
    residual = max(abs(eval_chi(model, roots.lambda1, c)), abs(eval_chi(model, roots.lambda2, c)))
    logger.info(
        f"{model.name}: c={c:.6g}, λ₁={roots.lambda1:.12g}, λ₂={roots.lambda2:.12g}, "
        f"임계={roots.critical}, 잔차={residual:.2e}"
    )
    return SpeedAnalysis(
        c=float(c),
        lambda1=roots.lambda1,
        lambda2=roots.lambda2,
        critical=roots.critical,
        c_star=crit.c_star,
        lambda_star=crit.lambda_star,
        dominance_ok=dominance,
    )
