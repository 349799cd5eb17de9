"""
가설 검사 묶음과 검증 보고서
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional
import logging
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from reaction import Model
from .hypotheses import HypothesisResult, check_LB, check_S, check_UB, check_structure
from .uniqueness import UniquenessResult

logger = logging.getLogger(__name__)

HYPOTHESES = ('M', 'S', 'J', 'ND', 'UB', 'LB')
SAMPLING_NOTE = (
    "sampled checks are falsification tests, not proofs: "
    "a pass means no violation was found among the drawn samples"
)
UNIQUENESS_TOL = 1e-3


@dataclass
class VerificationReport:
    """
    모델 검증 보고서

    Attributes:
        hypotheses: 가설 이름 → 결과
        q_min: 프로파일 위 Q 의 최솟값 (진단을 돌린 경우)
        pi_integral: π 적분 (진단을 돌린 경우)
        uniqueness: 일치 검사 결과 (돌린 경우)
    """

    model: str
    hypotheses: Dict[str, HypothesisResult] = field(default_factory=dict)
    q_min: Optional[float] = None
    pi_integral: Optional[float] = None
    tol: Optional[float] = None
    uniqueness: Optional[UniquenessResult] = None

    @property
    def failed(self) -> List[str]:
        return [name for name, r in self.hypotheses.items() if not r.passed]

    @property
    def diagnostics_ok(self) -> bool:
        if self.q_min is None:
            return True
        return self.q_min >= -10.0 * self.tol and self.pi_integral > 0

    @property
    def uniqueness_ok(self) -> bool:
        if self.uniqueness is None:
            return True
        if self.uniqueness.excluded:
            return False
        return not self.uniqueness.distances or self.uniqueness.max_distance <= UNIQUENESS_TOL

    @property
    def passed(self) -> bool:
        return not self.failed and self.diagnostics_ok and self.uniqueness_ok

    def to_dict(self) -> dict:
        return {
            'model': self.model,
            'hypotheses': {name: r.to_dict() for name, r in self.hypotheses.items()},
            'failed': self.failed,
            'Q_min': self.q_min,
            'pi_integral': self.pi_integral,
            'uniqueness': self.uniqueness.to_dict() if self.uniqueness else None,
            'note': SAMPLING_NOTE,
            'passed': self.passed,
        }


def check_hypotheses(
    model: Model,
    n_samples: int = 10000,
    seed: int = 0,
    epsilon: float = 0.1
) -> Dict[str, HypothesisResult]:
    """(M), (S), (J), (ND), (UB), (LB) 전부 검사"""
    logger.info(f"{model.name}: 가설 검사 시작 (표본 {n_samples}개, 씨앗 {seed})")
    results = {r.name: r for r in check_structure(model)}

    if model.smoothness is None:
        results['S'] = HypothesisResult(
            'S', False, {'reason': 'smoothness constants (K, alpha, delta) not declared'}, {}, 0, seed
        )
    else:
        results['S'] = check_S(model, n_samples, seed)
    results['UB'] = check_UB(model, n_samples, seed)
    results['LB'] = check_LB(model, epsilon, n_samples, seed)

    ordered = {name: results[name] for name in HYPOTHESES}
    failed = [name for name, r in ordered.items() if not r.passed]
    if failed:
        logger.warning(f"{model.name}: 실패한 가설 {failed}")
    else:
        logger.info(f"{model.name}: 모든 가설 통과")
    return ordered
