"""
평행이동을 뺀 프로파일 일치 검사

서로 다른 초기 추정에서 계산한 프로파일을 둘씩 정렬해 sup 거리를 잽니다.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Optional, Tuple
import logging
import os
import sys

import numpy as np
from scipy.optimize import minimize_scalar

sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from chareq import critical_speed, real_roots
from reaction import Model
from wavefront import ProfileSolution, SolverOptions, initial_guess, solve_profile

logger = logging.getLogger(__name__)

NOISE = 0.05


@dataclass
class UniquenessResult:
    """씨앗별 수렴 여부와 쌍별 (이동량, 거리)"""

    model: str
    c: float
    seeds: List[int]
    converged: List[bool]
    pairs: List[Tuple[int, int]] = field(default_factory=list)
    distances: List[Tuple[float, float]] = field(default_factory=list)

    @property
    def excluded(self) -> List[int]:
        return [s for s, ok in zip(self.seeds, self.converged) if not ok]

    @property
    def max_distance(self) -> float:
        if not self.distances:
            return float('nan')
        return max(d for _, d in self.distances)

    def to_dict(self) -> dict:
        return {
            'model': self.model,
            'c': self.c,
            'seeds': list(self.seeds),
            'converged': list(self.converged),
            'excluded': self.excluded,
            'pairs': [
                {'seeds': [a, b], 'shift': shift, 'sup_distance': dist}
                for (a, b), (shift, dist) in zip(self.pairs, self.distances)
            ],
        }


def _sup_distance(t: np.ndarray, a: np.ndarray, b: np.ndarray, shift: float) -> float:
    """겹치는 구간에서 sup |a(t + shift) - b(t)|"""
    mask = (t + shift >= t[0]) & (t + shift <= t[-1])
    if not np.any(mask):
        return float('inf')
    moved = np.interp(t[mask] + shift, t, a)
    return float(np.max(np.abs(moved - b[mask])))


def align_profiles(t: np.ndarray, a: np.ndarray, b: np.ndarray, max_shift: float = 10.0) -> Tuple[float, float]:
    """
    b(t) ≈ a(t + τ) 가 되는 τ 와 그때의 sup 거리

    정수 격자 이동으로 찾은 뒤 Δ/10 격자로 좁히고, 마지막으로 유계 1차원 최소화로 다듬습니다.
    """
    t = np.asarray(t, dtype=float)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    dt = float(t[1] - t[0])

    n = int(max_shift / dt)
    coarse = dt * np.arange(-n, n + 1)
    scores = [_sup_distance(t, a, b, s) for s in coarse]
    best = float(coarse[int(np.argmin(scores))])

    fine = best + 0.1 * dt * np.arange(-10, 11)
    scores = [_sup_distance(t, a, b, s) for s in fine]
    best = float(fine[int(np.argmin(scores))])
    best_score = min(scores)

    result = minimize_scalar(
        lambda s: _sup_distance(t, a, b, s),
        bounds=(best - 0.1 * dt, best + 0.1 * dt),
        method='bounded',
        options={'xatol': 1e-12},
    )
    if result.success and result.fun <= best_score:
        return float(result.x), float(result.fun)
    return best, float(best_score)


def seeded_guess(model: Model, c: float, t: np.ndarray, lambda1: float, critical: bool, seed: int) -> np.ndarray:
    """씨앗 0은 기본 추정, 그 밖은 꼬리 배율·이동·곱셈 잡음을 준 추정"""
    if seed == 0:
        return initial_guess(t, model.kappa, lambda1, critical)
    rng = np.random.default_rng(seed)
    scale = rng.uniform(0.5, 2.0)
    shift = rng.uniform(-5.0, 5.0)
    base = initial_guess(t, model.kappa, lambda1, critical, scale=scale, shift=shift)
    return base * (1.0 + NOISE * rng.uniform(-1.0, 1.0, t.size))


def uniqueness_harness(
    model: Model,
    c: float,
    n_seeds: int,
    options: Optional[SolverOptions] = None,
    seed: int = 0,
    workers: int = 1
) -> UniquenessResult:
    """
    n_seeds개의 서로 다른 초기 추정에서 프로파일을 풀고 쌍별 정렬 거리를 보고

    수렴하지 못한 실행은 제외하고 excluded 로 보고합니다. 각 풀이는 씨앗만으로 결정되므로
    workers > 1 이어도 결과는 같습니다.
    """
    if n_seeds < 1:
        raise ValueError(f"씨앗 수는 1 이상이어야 합니다: {n_seeds}")

    options = options or SolverOptions()
    seeds = [seed + i for i in range(n_seeds)]

    roots = real_roots(model, c)
    if roots is None:
        lambda1, critical = critical_speed(model).lambda_star, True
    else:
        lambda1, critical = roots.lambda1, roots.critical

    def run(s: int) -> ProfileSolution:
        logger.info(f"일치 검사: 씨앗 {s} 풀이 시작")
        return solve_profile(
            model, c, options,
            initial=lambda t: seeded_guess(model, c, t, lambda1, critical, s),
        )

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            solutions = list(pool.map(run, seeds))
    else:
        solutions = [run(s) for s in seeds]

    result = UniquenessResult(
        model=model.name,
        c=float(c),
        seeds=seeds,
        converged=[sol.converged for sol in solutions],
    )
    if result.excluded:
        logger.warning(f"일치 검사: 수렴하지 않아 제외된 씨앗 {result.excluded}")

    good = [(s, sol) for s, sol in zip(seeds, solutions) if sol.converged]
    for (sa, a), (sb, b) in combinations(good, 2):
        shift, dist = align_profiles(a.t, a.phi, b.phi)
        result.pairs.append((sa, sb))
        result.distances.append((shift, dist))
        logger.info(f"일치 검사: 씨앗 ({sa}, {sb}) 이동={shift:.3g}, 거리={dist:.3e}")
    return result

