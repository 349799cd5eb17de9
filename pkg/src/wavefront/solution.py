"""
프로파일 솔버 옵션과 결과
"""

from dataclasses import dataclass, field, asdict
from typing import List, Optional
import os
import sys

import numpy as np
import pandas as pd

sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from kernel import ExponentialTail
from reaction import Model

ACCELERATIONS = ('none', 'anderson')


@dataclass(frozen=True)
class SolverOptions:
    """
    고정점 반복 설정

    t_min이 None이면 -40/λ₁ 을 씁니다.
    """

    t_min: Optional[float] = None
    t_max: float = 40.0
    step: float = 0.02
    damping: float = 0.5
    tol: float = 1e-8
    max_iter: int = 20000
    acceleration: str = 'none'
    anderson_depth: int = 5
    anderson_start: float = 1e-3
    log_every: int = 500

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError(f"격자 간격은 양수여야 합니다: {self.step}")
        if not 0 < self.damping <= 1:
            raise ValueError(f"감쇠 계수는 (0, 1] 이어야 합니다: {self.damping}")
        if self.tol <= 0 or self.max_iter < 1:
            raise ValueError(f"tol > 0, max_iter ≥ 1 이어야 합니다: tol={self.tol}, max_iter={self.max_iter}")
        if self.acceleration not in ACCELERATIONS:
            raise ValueError(f"알 수 없는 가속 방식: {self.acceleration} ({'/'.join(ACCELERATIONS)})")
        if self.t_max <= 0 or (self.t_min is not None and self.t_min >= 0):
            raise ValueError(f"격자는 0을 포함해야 합니다: [{self.t_min}, {self.t_max}]")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(eq=False)
class ProfileSolution:
    """
    절단 격자 위의 반파면 프로파일

    Attributes:
        model: 반응 모델
        c: 속도
        t: 균일 격자 (0 포함)
        phi: φ 표본
        dphi: φ' 표본 (수렴한 경우)
        residual: sup|Aφ - φ|
        iterations: 반복 횟수
        converged: residual ≤ tol 여부
        tail: T₋ 왼쪽 φ 꼬리
        lambda1: 꼬리 감쇠율 λ₁(c)
        critical: 임계 꼬리 꼴 (A - t)e^{λ₁t} 사용 여부
    """

    model: Model
    c: float
    t: np.ndarray
    phi: np.ndarray
    tail: ExponentialTail
    lambda1: float
    critical: bool = False
    dphi: Optional[np.ndarray] = None
    residual: float = float('nan')
    iterations: int = 0
    converged: bool = False
    clamp_count: int = 0
    residual_history: List[float] = field(default_factory=list)
    tol: float = 1e-8

    @property
    def t_min(self) -> float:
        return float(self.t[0])

    @property
    def t_max(self) -> float:
        return float(self.t[-1])

    @property
    def step(self) -> float:
        return float(self.t[1] - self.t[0])

    @property
    def kappa(self) -> float:
        return self.model.kappa

    def to_frame(self) -> pd.DataFrame:
        """t, phi, dphi 열의 DataFrame"""
        dphi = self.dphi if self.dphi is not None else np.full_like(self.phi, np.nan)
        return pd.DataFrame({'t': self.t, 'phi': self.phi, 'dphi': dphi})

    def summary(self) -> dict:
        return {
            'model': self.model.name,
            'c': self.c,
            'grid': {'t_min': self.t_min, 't_max': self.t_max, 'step': self.step, 'points': int(self.t.size)},
            'lambda1': self.lambda1,
            'critical_tail': self.critical,
            'tail': self.tail.to_dict(),
            'residual': self.residual,
            'tol': self.tol,
            'iterations': self.iterations,
            'converged': self.converged,
            'clamp_count': self.clamp_count,
            'phi_max': float(np.max(self.phi)),
        }

    def __repr__(self):
        return (
            f"<ProfileSolution(model='{self.model.name}', c={self.c}, "
            f"converged={self.converged}, residual={self.residual:.2e})>"
        )
