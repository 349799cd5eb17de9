"""
내장 모델 레지스트리

- 지연 KPP-Fisher: f(φ) = φ(0)(1 - φ(-h))
- Mackey-Glass 형: f(φ) = -φ(0) + g(φ(-h))  (Nicholson, May 프리셋)
- UB 위반 합성 모델 (검증 실패 경로 확인용)
"""

from typing import Callable, Optional
import logging
import math

import numpy as np

from .measure import Measure
from .model import Model, Smoothness

logger = logging.getLogger(__name__)

ScalarMap = Callable[[np.ndarray], np.ndarray]


def builtin_kpp(h: float) -> Model:
    """지연 KPP-Fisher 모델 (κ=1, q=0, μ₊=δ₀)"""
    if h < 0:
        raise ValueError(f"지연 h는 음수일 수 없습니다: h={h}")

    def reaction(v: np.ndarray) -> np.ndarray:
        return v[0] * (1.0 - v[1])

    return Model(
        name='kpp',
        h=float(h),
        taps=(0.0, -float(h)),
        reaction=reaction,
        measure=Measure(q=0.0, atoms=((0.0, 1.0),), h=float(h)),
        kappa=1.0,
        smoothness=Smoothness(K=1.0, alpha=1.0, delta=1.0),
        sup_bound=lambda c: max(2.0, math.exp(min(c * h, 50.0))),
        params={'h': float(h)},
    )


def _second_derivative_sup(g: ScalarMap, upper: float, n: int = 4001) -> float:
    """[0, upper]에서 |g''|의 상한 (중심 차분, 10% 여유)"""
    x = np.linspace(0.0, upper, n)
    dx = x[1] - x[0]
    values = np.asarray(g(x), dtype=float)
    second = np.abs(np.diff(values, 2)) / dx ** 2
    return 1.1 * float(np.max(second))


def builtin_mackey_glass(
    h: float,
    g: ScalarMap,
    g_prime_0: float,
    kappa: float,
    smoothness: Optional[Smoothness] = None,
    sup_g: Optional[float] = None,
    name: str = 'mackey_glass',
    params: Optional[dict] = None
) -> Model:
    """
    Mackey-Glass 형 모델 f(φ) = -φ(0) + g(φ(-h))

    Args:
        h: 지연
        g: 생산 함수 (벡터화)
        g_prime_0: g'(0), 1보다 커야 함 (ND)
        kappa: g(κ)=κ 인 양의 고정점
        smoothness: (S) 상수, None이면 K = sup|g''|/2 (δ=κ, α=1)을 수치로 추정
        sup_g: sup g, None이면 [0, 4κ+4] 스캔으로 추정

    Raises:
        ValueError: g'(0) ≤ 1 이거나 평형 조건이 맞지 않을 때
    """
    if h < 0:
        raise ValueError(f"지연 h는 음수일 수 없습니다: h={h}")
    if g_prime_0 <= 1.0:
        raise ValueError(f"g'(0) = {g_prime_0} ≤ 1: 비퇴화 조건 (ND) p > q = 1 위반")

    tol = 1e-9 * max(1.0, abs(kappa))
    g0 = float(g(np.asarray(0.0)))
    gk = float(g(np.asarray(kappa)))
    if abs(g0) > tol:
        raise ValueError(f"g(0) = {g0} ≠ 0")
    if abs(gk - kappa) > tol:
        raise ValueError(f"g(κ) = {gk} ≠ κ = {kappa}")

    if smoothness is None:
        second = _second_derivative_sup(g, kappa)
        smoothness = Smoothness(K=max(0.5 * second, 1e-12), alpha=1.0, delta=kappa)
        logger.debug(f"{name}: 평활성 상수 추정 K={smoothness.K:.6g}, δ={kappa:.6g}")

    if sup_g is None:
        grid = np.linspace(0.0, 4.0 * kappa + 4.0, 8001)
        sup_g = float(np.max(g(grid)))
    bound = max(2.0 * kappa, 1.01 * sup_g)

    def reaction(v: np.ndarray) -> np.ndarray:
        return -v[0] + g(v[1])

    return Model(
        name=name,
        h=float(h),
        taps=(0.0, -float(h)),
        reaction=reaction,
        measure=Measure(q=1.0, atoms=((-float(h), float(g_prime_0)),), h=float(h)),
        kappa=float(kappa),
        smoothness=smoothness,
        sup_bound=lambda c: bound,
        params=dict(params or {}, h=float(h)),
    )


def nicholson(h: float, p: float) -> Model:
    """Nicholson 블로우플라이: g(u) = p·u·e^{-u}, κ = ln p"""
    if p <= 1.0:
        raise ValueError(f"g'(0) = {p} ≤ 1: 비퇴화 조건 (ND) p > q = 1 위반")

    def g(u: np.ndarray) -> np.ndarray:
        return p * u * np.exp(-u)

    # |g''(u)| = p·e^{-u}|u-2| ≤ 2p (u ≥ 0)
    return builtin_mackey_glass(
        h, g, g_prime_0=p, kappa=math.log(p),
        smoothness=Smoothness(K=p, alpha=1.0, delta=1.0),
        sup_g=p / math.e,
        name='nicholson',
        params={'p': float(p)},
    )


def may(h: float, p: float, z: float, k: float) -> Model:
    """May 고래 모델: g(u) = max{p·u·(1 - (u/k)^z), 0}"""
    if p <= 1.0:
        raise ValueError(f"g'(0) = {p} ≤ 1: 비퇴화 조건 (ND) p > q = 1 위반")
    if z <= 0 or k <= 0:
        raise ValueError(f"May 모델은 z > 0, k > 0 이어야 합니다: z={z}, k={k}")

    def g(u: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        ratio = np.power(np.abs(u) / k, z)
        return np.maximum(p * u * (1.0 - ratio), 0.0)

    kappa = k * (1.0 - 1.0 / p) ** (1.0 / z)
    # |g''(u)| = p·z(z+1)·u^{z-1}/k^z, [0, κ]에서 u=κ 일 때 최대 (z ≥ 1)
    second = p * z * (z + 1.0) * kappa ** (z - 1.0) / k ** z if z >= 1 else None
    smoothness = Smoothness(K=0.5 * second, alpha=1.0, delta=kappa) if second else None
    u_peak = k * (1.0 / (z + 1.0)) ** (1.0 / z)
    sup_g = float(g(np.asarray(u_peak)))

    return builtin_mackey_glass(
        h, g, g_prime_0=p, kappa=kappa,
        smoothness=smoothness,
        sup_g=sup_g,
        name='may',
        params={'p': float(p), 'z': float(z), 'k': float(k)},
    )


def ub_violating(h: float = 0.0) -> Model:
    """
    (UB)를 위반하는 합성 모델 f(φ) = u + u² - 2u³ (u = φ(0))

    f'(u) = 1 + 2u - 6u² 가 (0, 1/3)에서 f'(0) = 1 보다 큽니다.
    """

    def reaction(v: np.ndarray) -> np.ndarray:
        u = v[0]
        return u + u ** 2 - 2.0 * u ** 3

    return Model(
        name='ub_violating',
        h=float(h),
        taps=(0.0,),
        reaction=reaction,
        measure=Measure(q=0.0, atoms=((0.0, 1.0),), h=float(h)),
        kappa=1.0,
        smoothness=Smoothness(K=5.0, alpha=1.0, delta=1.0),
        sup_bound=lambda c: 2.0,
        params={'h': float(h)},
    )


BUILTIN_MODELS = {
    'kpp': builtin_kpp,
    'nicholson': nicholson,
    'may': may,
    'ub_violating': ub_violating,
}


def make_model(name: str, h: float, **params) -> Model:
    """
    이름과 파라미터로 내장 모델 생성

    Raises:
        ValueError: 알 수 없는 모델 이름 또는 파라미터 누락
    """
    factory = BUILTIN_MODELS.get(name)
    if factory is None:
        raise ValueError(f"알 수 없는 모델: {name} (사용 가능: {', '.join(sorted(BUILTIN_MODELS))})")

    try:
        model = factory(h=h, **params)
    except TypeError as e:
        raise ValueError(f"모델 {name}의 파라미터가 올바르지 않습니다: {e}") from e

    model.measure.require_nondegenerate()
    logger.debug(f"모델 생성: {model}")
    return model
