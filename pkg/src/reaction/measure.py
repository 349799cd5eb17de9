"""
선형화 f'(0)의 Jordan 분해 데이터

f'(0)φ = -qφ(0) + Σ w_j φ(s_j) 형태로, 음의 부분은 lag 0의 점질량 qδ₀ 하나로
제한되고 (가정 J) 양의 부분 μ₊는 유한 개의 원자(이산 지연)로 표현됩니다.
"""

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np


@dataclass(frozen=True)
class Measure:
    """선형화 측도 (q, μ₊ 원자)"""

    q: float
    atoms: Tuple[Tuple[float, float], ...] = field(default_factory=tuple)
    h: float = 0.0

    def __post_init__(self):
        atoms = tuple((float(s), float(w)) for s, w in self.atoms)
        object.__setattr__(self, 'atoms', atoms)

        if self.q < 0:
            raise ValueError(f"q는 음수일 수 없습니다: q={self.q}")
        if self.h < 0:
            raise ValueError(f"지연 h는 음수일 수 없습니다: h={self.h}")

        for s, w in atoms:
            if s > 0 or s < -self.h - 1e-12:
                raise ValueError(f"원자 위치가 [-h, 0] 밖에 있습니다: s={s}, h={self.h}")
            if w <= 0:
                raise ValueError(f"원자 가중치는 양수여야 합니다: w={w}")

    @property
    def p(self) -> float:
        """μ₊의 전체 질량 p = Σ w_j"""
        return float(sum(w for _, w in self.atoms))

    @property
    def positions(self) -> np.ndarray:
        return np.array([s for s, _ in self.atoms], dtype=float)

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for _, w in self.atoms], dtype=float)

    @property
    def is_nondegenerate(self) -> bool:
        """가정 (ND): p > q"""
        return self.p > self.q

    def require_nondegenerate(self):
        """(ND) 위반 시 ValueError"""
        if not self.is_nondegenerate:
            raise ValueError(f"비퇴화 조건 (ND) 위반: p={self.p} ≤ q={self.q}")

    def to_dict(self) -> dict:
        return {
            'q': self.q,
            'p': self.p,
            'atoms': [[s, w] for s, w in self.atoms],
        }
