"""
편각 원리에 의한 직사각형 내부 영점 개수

경계를 반시계 방향으로 돌며 arg χ의 증분을 누적합니다. 인접 표본 사이의 증분이
π/2 이상이면 그 구간을 반으로 나눠 다시 표본화합니다.
"""

from dataclasses import dataclass
from typing import Optional, Tuple
import logging
import math
import os
import sys

import numpy as np

sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from reaction import Model
from .characteristic import RootPair, eval_chi, real_roots

logger = logging.getLogger(__name__)

MAX_PERTURBATIONS = 3
MAX_DEPTH = 40
NEAR_ZERO = 1e-10


class ContourError(RuntimeError):
    """윤곽선 위(또는 매우 가까이)에 영점이 있어 개수를 셀 수 없음"""


class _ContourTouch(Exception):
    pass


@dataclass(frozen=True)
class ZeroCount:
    """영점 개수와 실제 사용한 직사각형"""

    count: int
    attempts: int
    rectangle: Tuple[float, float, float]
    winding: float

    def to_dict(self) -> dict:
        re_min, re_max, im_max = self.rectangle
        return {
            'count': self.count,
            'attempts': self.attempts,
            'rectangle': {'re_min': re_min, 're_max': re_max, 'im_max': im_max},
            'winding': self.winding,
        }


def _check_clear(z: np.ndarray, values: np.ndarray):
    if np.any(np.abs(values) < NEAR_ZERO * (1.0 + np.abs(z) ** 2)):
        raise _ContourTouch()


def _edge_phase(model: Model, c: float, start: complex, end: complex) -> float:
    """start → end 선분 위 arg χ 증분"""
    length = abs(end - start)
    h = model.h
    # e^{czs}의 회전 속도 c·h 와 z² 항을 고려한 초기 표본 수
    n = max(64, int(math.ceil(4.0 * length * (c * h + 2.0))))
    t = np.linspace(0.0, 1.0, n + 1)
    z = start + (end - start) * t
    values = eval_chi(model, z.astype(complex), c)
    _check_clear(z, values)

    increments = np.angle(values[1:] / values[:-1])
    total = 0.0
    for k in range(n):
        if abs(increments[k]) < math.pi / 2:
            total = total + increments[k]
        else:
            total = total + _refine(model, c, z[k], z[k + 1], values[k], values[k + 1], 1)
    return total


def _refine(model: Model, c: float, za: complex, zb: complex, fa: complex, fb: complex, depth: int) -> float:
    if depth > MAX_DEPTH:
        raise _ContourTouch()
    zm = 0.5 * (za + zb)
    fm = eval_chi(model, complex(zm), c)
    _check_clear(np.array([zm]), np.array([fm]))
    logger.debug(f"윤곽 세분화: depth={depth}, z={zm:.6g}")

    total = 0.0
    for z0, z1, f0, f1 in ((za, zm, fa, fm), (zm, zb, fm, fb)):
        step = float(np.angle(f1 / f0))
        if abs(step) < math.pi / 2:
            total = total + step
        else:
            total = total + _refine(model, c, z0, z1, f0, f1, depth + 1)
    return total


def _winding(model: Model, c: float, re_min: float, re_max: float, im_max: float) -> float:
    corners = [
        complex(re_min, -im_max),
        complex(re_max, -im_max),
        complex(re_max, im_max),
        complex(re_min, im_max),
    ]
    total = 0.0
    for i in range(4):
        total = total + _edge_phase(model, c, corners[i], corners[(i + 1) % 4])
    return total / (2.0 * math.pi)


def count_zeros_detailed(
    model: Model,
    c: float,
    re_range: Tuple[float, float],
    im_max: float
) -> ZeroCount:
    """
    [a, b] × [-Y, Y] 내부 χ(·, c) 영점 개수 (중복도 포함)

    경계가 영점에 닿으면 직사각형을 바깥쪽으로 조금씩 넓혀 최대 3번 재시도합니다.

    Raises:
        ContourError: 재시도 후에도 경계가 영점에 닿을 때
    """
    re_min, re_max = float(re_range[0]), float(re_range[1])
    if not re_min < re_max or im_max <= 0:
        raise ValueError(f"잘못된 직사각형: re=[{re_min}, {re_max}], im_max={im_max}")

    scale = 1.0 + abs(re_min) + abs(re_max)
    for attempt in range(MAX_PERTURBATIONS + 1):
        eps = 0.0 if attempt == 0 else 1e-7 * scale * 10.0 ** attempt
        a, b, y = re_min - eps, re_max + eps, im_max + eps
        try:
            winding = _winding(model, c, a, b, y)
        except _ContourTouch:
            logger.warning(f"윤곽선이 영점에 너무 가깝습니다 (시도 {attempt + 1}): [{a}, {b}]×[±{y}]")
            continue
        return ZeroCount(int(round(winding)), attempt + 1, (a, b, y), float(winding))

    raise ContourError(
        f"{MAX_PERTURBATIONS}번 섭동 후에도 윤곽선 위에 영점이 있습니다: "
        f"[{re_min}, {re_max}]×[±{im_max}]"
    )


def count_zeros_rect(
    model: Model,
    c: float,
    re_range: Tuple[float, float],
    im_max: float
) -> int:
    """[a, b] × [-Y, Y] 내부 χ(·, c)의 영점 개수"""
    return count_zeros_detailed(model, c, re_range, im_max).count


def dominance_bounds(model: Model, c: float) -> Tuple[float, float]:
    """
    우반평면 영점의 사전 한계 (R, Y)

    Re z ≥ 0 이면 |e^{czs}| ≤ 1 이므로 영점에서 |z||z - c| = |q - Σ w e^{czs}| ≤ p + q.
    |z| > c + 1 이면 |z - c| > 1 이 되어 |z| < p + q, 따라서 |z| < c + p + q + 1.
    """
    bound = c + model.measure.p + model.measure.q + 1.0
    return bound, 10.0 * bound


def dominance_check(
    model: Model,
    c: float,
    eps_hat: float = 1e-3,
    roots: Optional[RootPair] = None,
    im_max: Optional[float] = None
) -> bool:
    """
    λ₁ 이상의 실수부를 갖는 영점이 두 실근뿐인지 확인

    Raises:
        ValueError: c < c* (실근 없음)
        ContourError: 윤곽선 문제
    """
    if roots is None:
        roots = real_roots(model, c)
    if roots is None:
        raise ValueError(f"c={c}는 임계 속도 미만이라 지배성을 판정할 수 없습니다")

    bound, y_default = dominance_bounds(model, c)
    re_max = max(roots.lambda2 + 1.0, bound)
    y = y_default if im_max is None else im_max
    result = count_zeros_detailed(model, c, (roots.lambda1 - eps_hat, re_max), y)

    ok = result.count == 2
    if not ok:
        logger.warning(f"{model.name}: 지배성 실패, c={c}, 영점 {result.count}개")
    return ok
