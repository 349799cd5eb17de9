"""
반파면 프로파일 고정점 솔버

    Aφ(t) = ∫K(t - s)[(1+q)φ(s) + f(φ̃_s)] ds,  φ̃_s(θ) = φ(s + cθ)

감쇠 반복 φ ← (1-ω)φ + ωAφ 를 돌리고, 매 반복 뒤 [ε₀, 상한]으로 클램프한 다음
κ/2 를 처음 위로 지나는 점이 t = 0 에 오도록 평행이동합니다.
격자 왼쪽은 T₋ 에서 맞춘 지수 꼬리, 오른쪽은 상수 φ(T₊) 로 연장합니다.
"""

from typing import Callable, Optional, Tuple, Union
import logging
import math
import os
import sys

import numpy as np

sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from chareq import RootPair, critical_speed, real_roots
from reaction import Model
from .derivative import recover_derivative
from .fixed_point import FixedPointOperator
from .solution import ProfileSolution, SolverOptions

logger = logging.getLogger(__name__)

FLOOR = 1e-250

InitialGuess = Union[np.ndarray, Callable[[np.ndarray], np.ndarray]]


def make_grid(options: SolverOptions, lambda1: float) -> np.ndarray:
    """0을 격자점으로 포함하는 [T₋, T₊] 균일 격자"""
    t_min = options.t_min if options.t_min is not None else -40.0 / lambda1
    dt = options.step
    i_min = int(math.floor(t_min / dt + 1e-9))
    i_max = int(math.ceil(options.t_max / dt - 1e-9))
    return dt * np.arange(i_min, i_max + 1, dtype=float)


def initial_guess(
    t: np.ndarray,
    kappa: float,
    lambda1: float,
    critical: bool = False,
    scale: float = 1.0,
    shift: float = 0.0
) -> np.ndarray:
    """min(κ, (κ/2)·scale·e^{λ₁(t - shift)}), 임계 꼴이면 왼쪽에 (1 - λ₁x) 인자"""
    x = np.asarray(t, dtype=float) - shift
    base = 0.5 * kappa * scale * np.exp(lambda1 * np.minimum(x, 50.0 / lambda1))
    if critical:
        base = np.where(x <= 0, base * (1.0 - lambda1 * x), base)
    return np.minimum(kappa, base)


class _AndersonMixer:
    """제한된 이력의 Anderson 혼합"""

    def __init__(self, depth: int):
        self.depth = depth
        self.xs = []
        self.fs = []

    def reset(self):
        self.xs.clear()
        self.fs.clear()

    def update(self, x: np.ndarray, f: np.ndarray, beta: float) -> np.ndarray:
        self.xs.append(x.copy())
        self.fs.append(f.copy())
        if len(self.xs) > self.depth + 1:
            self.xs.pop(0)
            self.fs.pop(0)
        if len(self.xs) < 2:
            return x + beta * f

        d_x = np.diff(np.array(self.xs), axis=0).T
        d_f = np.diff(np.array(self.fs), axis=0).T
        gamma, *_ = np.linalg.lstsq(d_f, f, rcond=None)
        return x + beta * f - (d_x + beta * d_f) @ gamma


def _speed_roots(model: Model, c: float) -> Tuple[float, bool]:
    roots: Optional[RootPair] = real_roots(model, c)
    if roots is not None:
        return roots.lambda1, roots.critical

    crit = critical_speed(model)
    logger.warning(
        f"{model.name}: c={c} < c*={crit.c_star:.10g}, 존재가 보장되지 않는 속도입니다 "
        f"(꼬리 감쇠율 λ*={crit.lambda_star:.6g} 사용)"
    )
    return crit.lambda_star, True


def solve_profile(
    model: Model,
    c: float,
    options: Optional[SolverOptions] = None,
    initial: Optional[InitialGuess] = None
) -> ProfileSolution:
    """
    감쇠 고정점 반복으로 프로파일 계산

    수렴하지 못해도 예외 대신 converged=False 와 잔차 이력을 담은 결과를 돌려줍니다.

    Args:
        model: 반응 모델
        c: 속도 (c ≥ c* 권장)
        options: 솔버 설정
        initial: 초기 추정 (격자 배열 또는 t → φ 함수)
    """
    options = options or SolverOptions()
    lambda1, critical = _speed_roots(model, c)
    t = make_grid(options, lambda1)
    op = FixedPointOperator(model, c, t, lambda1, critical)

    if initial is None:
        phi = initial_guess(t, model.kappa, lambda1, critical)
    elif callable(initial):
        phi = np.asarray(initial(t), dtype=float)
    else:
        phi = np.asarray(initial, dtype=float).copy()
    if phi.shape != t.shape:
        raise ValueError(f"초기 추정의 크기({phi.shape})가 격자({t.shape})와 다릅니다")

    bound = model.bound(c)
    phi = np.clip(phi, FLOOR, bound)
    phi, _ = op.pin(phi)

    logger.info(
        f"프로파일 계산 시작: {model.name}, c={c}, λ₁={lambda1:.6g}, 임계꼴={critical}, "
        f"격자=[{t[0]:.4g}, {t[-1]:.4g}] Δ={op.dt} ({t.size}점), ω={options.damping}, "
        f"가속={options.acceleration}"
    )

    mixer = _AndersonMixer(options.anderson_depth) if options.acceleration == 'anderson' else None
    history = []
    clamp_count = 0
    converged = False
    res = float('inf')
    iteration = 0

    for iteration in range(1, options.max_iter + 1):
        a_phi, _ = op.apply(phi)
        update = a_phi - phi
        res = float(np.max(np.abs(update)))
        history.append(res)

        if not np.isfinite(res):
            logger.error(f"반복 {iteration}: 잔차가 유한하지 않습니다")
            break
        if res <= options.tol:
            converged = True
            break

        if mixer is not None and res < options.anderson_start:
            new_phi = mixer.update(phi, update, options.damping)
        else:
            new_phi = phi + options.damping * update

        clamped = int(np.count_nonzero((new_phi < FLOOR) | (new_phi > bound)))
        if clamped:
            clamp_count = clamp_count + clamped
        new_phi = np.clip(new_phi, FLOOR, bound)

        phi, shift = op.pin(new_phi)
        if mixer is not None and abs(shift) > 1e-3 * op.dt:
            mixer.reset()

        if iteration % options.log_every == 0:
            logger.debug(f"반복 {iteration}: 잔차={res:.3e}, 이동={shift:.2e}")

    solution = ProfileSolution(
        model=model,
        c=float(c),
        t=t,
        phi=phi,
        tail=op.fit_tail(phi),
        lambda1=lambda1,
        critical=critical,
        residual=res,
        iterations=iteration,
        converged=converged,
        clamp_count=clamp_count,
        residual_history=history,
        tol=options.tol,
    )

    if clamp_count:
        logger.warning(f"{model.name}: 클램프 {clamp_count}회 발생 (하한 {FLOOR:g}, 상한 {bound:.4g})")

    if converged:
        solution.dphi = recover_derivative(solution)
        logger.info(f"프로파일 수렴: {iteration}회, 잔차={res:.3e}")
    else:
        logger.warning(f"프로파일 미수렴: {iteration}회 후 잔차={res:.3e} (tol={options.tol:g})")
    return solution


def residual(sol: ProfileSolution) -> float:
    """
    저장된 꼬리로 계산한 내부 격자 위 sup|Aφ - φ|

    양 끝점은 제외합니다. 반복 중 수렴 판정은 끝점까지 포함하므로 수렴한 해는 residual(sol) ≤ sol.residual 입니다.
    """
    op = FixedPointOperator(sol.model, sol.c, sol.t, sol.tail.rate, sol.critical)
    a_phi, _ = op.apply(sol.phi, tail=sol.tail)
    return float(np.max(np.abs(a_phi[1:-1] - sol.phi[1:-1])))
