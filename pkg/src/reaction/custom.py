"""
사용자 정의 이산 지연 모델

반응식은 탭 기호(각 기호는 φ(s)의 한 지연 위치)와 산술, 스칼라 비선형 함수의
조합으로 주어집니다. 선형화 f'(0)은 sympy 미분으로 얻습니다.

예:
    expression = "u0*(1 - ud)", taps = {"u0": 0.0, "ud": -1.0}
"""

from typing import Dict, Optional
import logging

import numpy as np
import sympy
from scipy.optimize import brentq
from sympy.parsing.sympy_parser import parse_expr

from .measure import Measure
from .model import Model, Smoothness

logger = logging.getLogger(__name__)


def _derivative_at_zero(expr: sympy.Expr, sym: sympy.Symbol, symbols: list) -> float:
    """∂f/∂sym 을 원점에서 평가 (특이점이면 우극한)"""
    derivative = sympy.diff(expr, sym)
    origin = {s: 0 for s in symbols}
    value = derivative.subs(origin)
    if not value.is_finite:
        others = {s: 0 for s in symbols if s != sym}
        value = sympy.limit(derivative.subs(others), sym, 0, '+')
    if not value.is_finite:
        raise ValueError(f"원점에서 ∂f/∂{sym} 가 유한하지 않습니다")
    return float(value)


def _find_kappa(f_star, upper: float = 100.0, n: int = 20001) -> float:
    """f*의 첫 양의 영점 (양 → 음 부호 변화) 탐색"""
    x = np.linspace(0.0, upper, n)[1:]
    values = np.asarray(f_star(x), dtype=float)
    for i in range(len(x) - 1):
        if values[i] > 0 and values[i + 1] <= 0:
            if values[i + 1] == 0:
                return float(x[i + 1])
            return float(brentq(f_star, x[i], x[i + 1], xtol=1e-14))
    raise ValueError(f"(0, {upper}]에서 양의 평형점 κ를 찾지 못했습니다")


def _estimate_smoothness(hessian_fn, n_taps: int, kappa: float, seed: int = 0) -> Smoothness:
    """[0, κ]^n 상자에서 Σ|∂²f|의 표본 최댓값으로 K 추정"""
    rng = np.random.default_rng(seed)
    corners = np.array(np.meshgrid(*[[0.0, kappa]] * n_taps)).reshape(n_taps, -1)
    points = np.concatenate([corners, rng.uniform(0.0, kappa, size=(n_taps, 2000))], axis=1)

    worst = 0.0
    for column in points.T:
        hessian = np.asarray(hessian_fn(*column), dtype=float)
        worst = max(worst, float(np.sum(np.abs(hessian))))
    return Smoothness(K=max(0.55 * worst, 1e-12), alpha=1.0, delta=kappa)


def make_custom_model(
    expression: str,
    taps: Dict[str, float],
    h: float,
    kappa: Optional[float] = None,
    smoothness: Optional[Smoothness] = None,
    name: str = 'custom'
) -> Model:
    """
    반응식 문자열로 모델 생성

    Args:
        expression: sympy 식 (탭 기호 사용)
        taps: 기호 → 지연 s ∈ [-h, 0]
        h: 최대 지연
        kappa: 양의 평형점 (None이면 f* 영점 탐색)
        smoothness: (S) 상수 (None이면 헤시안 표본으로 추정)

    Raises:
        ValueError: 식 해석 실패, 미정의 기호, (J) 위반(지연 탭의 음의 미분)
    """
    if not taps:
        raise ValueError("탭 기호가 하나 이상 필요합니다")

    names = list(taps)
    symbols = list(sympy.symbols(names))
    local_dict = dict(zip(names, symbols))

    try:
        expr = parse_expr(expression, local_dict=local_dict)
    except Exception as e:
        raise ValueError(f"반응식을 해석할 수 없습니다: {expression!r} ({e})") from e

    unknown = expr.free_symbols - set(symbols)
    if unknown:
        raise ValueError(f"정의되지 않은 기호: {sorted(str(s) for s in unknown)}")

    # Jordan 분해: lag 0의 음의 계수는 q, 나머지 양의 계수는 μ₊ 원자
    q = 0.0
    atoms: Dict[float, float] = {}
    for tap_name, sym in zip(names, symbols):
        s = float(taps[tap_name])
        coef = _derivative_at_zero(expr, sym, symbols)
        if coef < 0:
            if abs(s) > 1e-12:
                raise ValueError(
                    f"지연 탭 {tap_name}(s={s})의 계수 {coef} < 0: 가정 (J) 위반"
                )
            q = q - coef
        elif coef > 0:
            atoms[s] = atoms.get(s, 0.0) + coef

    measure = Measure(q=q, atoms=tuple(sorted(atoms.items(), reverse=True)), h=float(h))

    compiled = sympy.lambdify(symbols, expr, 'numpy')

    def reaction(v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        return np.zeros(v.shape[1:]) + compiled(*v)

    tap_positions = tuple(float(taps[n]) for n in names)

    def f_star(x):
        x = np.asarray(x, dtype=float)
        return reaction(np.broadcast_to(x, (len(names),) + x.shape))

    if kappa is None:
        kappa = _find_kappa(f_star)
        logger.info(f"{name}: 양의 평형점 κ = {kappa:.12g} (영점 탐색)")

    if smoothness is None:
        hessian = sympy.hessian(expr, symbols)
        hessian_fn = sympy.lambdify(symbols, hessian, 'numpy')
        smoothness = _estimate_smoothness(hessian_fn, len(names), kappa)
        logger.debug(f"{name}: 평활성 상수 추정 K={smoothness.K:.6g}")

    model_kappa = float(kappa)

    return Model(
        name=name,
        h=float(h),
        taps=tap_positions,
        reaction=reaction,
        measure=measure,
        kappa=model_kappa,
        smoothness=smoothness,
        sup_bound=lambda c: max(4.0 * model_kappa, model_kappa * float(np.exp(min(c * h, 50.0)))),
        params={'expression': expression, 'taps': dict(taps), 'h': float(h)},
    )
