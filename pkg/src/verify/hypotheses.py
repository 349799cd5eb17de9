"""
모델 가설의 표본 검사

표본 검사는 반증 시험입니다. 통과는 "표본에서 위반을 찾지 못함"을 뜻할 뿐 증명이 아닙니다.

- (UB) 0 < φ ≤ ψ 이면 f(ψ) - f(φ) ≤ f'(0)(ψ - φ)
- (LB) |φ|_C ≤ δ 이면 qφ(0) + f(φ) ≥ (1 - ε) Σ w_j φ(s_j)
- (S)  |f(ψ) - f(φ) - f'(0)(ψ - φ)| ≤ K|ψ - φ|_C (|φ|_C^α + |ψ|_C^α)
- (M), (J), (ND): f* 영점 탐색, 측도 구조
"""

from dataclasses import dataclass, field
from typing import List, Optional
import logging
import os
import sys

import numpy as np
from scipy.optimize import brentq

sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from reaction import Model
from .sampling import make_sampler

logger = logging.getLogger(__name__)

UB_SLACK = 1e-12
S_RELATIVE_SLACK = 1e-12
LB_GRID = [10.0 ** (-k / 8.0) for k in range(-2, 65)]
STRUCTURE_POINTS = 20001


@dataclass
class HypothesisResult:
    """가설 하나의 검사 결과 (실패면 반례 포함)"""

    name: str
    passed: bool
    counterexample: Optional[dict] = None
    details: dict = field(default_factory=dict)
    n_samples: int = 0
    seed: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'passed': self.passed,
            'counterexample': self.counterexample,
            'details': self.details,
            'n_samples': self.n_samples,
            'seed': self.seed,
        }


def _first_violation(violation: np.ndarray) -> Optional[int]:
    hits = np.flatnonzero(violation)
    return int(hits[0]) if hits.size else None


def check_UB(model: Model, n_samples: int = 10000, seed: int = 0) -> HypothesisResult:
    """(UB) 표본 검사: 0 < φ ≤ ψ ≤ 2κ"""
    if n_samples < 1:
        raise ValueError(f"표본 수는 1 이상이어야 합니다: {n_samples}")

    sampler = make_sampler(model, seed)
    kappa = model.kappa
    phi = sampler.segments(n_samples, 1e-6 * kappa, 2.0 * kappa)
    gap = sampler.log_uniform(1e-6, 1.0, phi.shape)
    psi = phi + (2.0 * kappa - phi) * gap

    phi_taps, psi_taps = sampler.tap_values(phi), sampler.tap_values(psi)
    f_phi, f_psi = model.reaction_at(phi_taps), model.reaction_at(psi_taps)
    lhs = f_psi - f_phi
    rhs = model.linear_response(psi_taps - phi_taps)
    scale = 1.0 + np.abs(f_psi) + np.abs(f_phi)
    excess = lhs - rhs

    index = _first_violation(excess > UB_SLACK * scale)
    details = {'max_excess': float(np.max(excess))}
    if index is None:
        logger.info(f"{model.name}: (UB) 통과 ({n_samples}개 표본)")
        return HypothesisResult('UB', True, None, details, n_samples, seed)

    counterexample = {
        'phi': phi[index].tolist(),
        'psi': psi[index].tolist(),
        'f_psi_minus_f_phi': float(lhs[index]),
        'lin_psi_minus_phi': float(rhs[index]),
    }
    logger.warning(f"{model.name}: (UB) 위반 {counterexample}")
    return HypothesisResult('UB', False, counterexample, details, n_samples, seed)


def check_LB(model: Model, epsilon: float = 0.1, n_samples: int = 10000, seed: int = 0) -> HypothesisResult:
    """
    (LB) 표본 검사: 기하 격자 δ = κ·10^{-k/8} 위에서 부등식이 성립하는 최대 δ̂ 탐색

    δ 이하의 모든 격자 단계가 통과해야 δ가 인정됩니다.
    """
    if not 0 < epsilon < 1:
        raise ValueError(f"ε 은 (0, 1) 이어야 합니다: {epsilon}")

    sampler = make_sampler(model, seed)
    kappa = model.kappa
    q = model.measure.q
    tap_index_zero = [i for i, s in enumerate(model.taps) if s == 0.0]
    positive_weights = model.measure.weights
    positive_taps = [model._tap_index(s) for s in model.measure.positions]

    passed_levels = {}
    violations = {}
    n_knots = sampler.n_knots
    for level in LB_GRID:
        delta = kappa * level
        knots = sampler.segments(n_samples, delta * 1e-6, delta)
        corners = [np.full(n_knots, delta)]
        if n_knots > 1:
            at_zero = np.full(n_knots, delta * 1e-6)
            at_zero[-1] = delta
            at_delay = np.full(n_knots, delta * 1e-6)
            at_delay[0] = delta
            corners += [at_zero, at_delay]
        knots = np.vstack([knots] + corners)

        taps = sampler.tap_values(knots)
        phi_zero = taps[tap_index_zero[0]] if tap_index_zero else np.zeros(knots.shape[0])
        lhs = q * phi_zero + model.reaction_at(taps)
        rhs = (1.0 - epsilon) * (positive_weights @ taps[positive_taps]) if positive_taps else 0.0 * lhs
        slack = UB_SLACK * (1.0 + np.abs(lhs) + np.abs(rhs))

        index = _first_violation(lhs < rhs - slack)
        passed_levels[delta] = index is None
        if index is not None:
            violations[delta] = {
                'delta': delta,
                'phi': knots[index].tolist(),
                'lhs': float(lhs[index]),
                'rhs': float(rhs[index]),
            }

    # 작은 δ부터 연속으로 통과한 최대 δ
    delta_hat = 0.0
    for delta in sorted(passed_levels):
        if not passed_levels[delta]:
            break
        delta_hat = delta

    details = {'epsilon': epsilon, 'delta_hat': delta_hat, 'levels': len(LB_GRID)}
    if delta_hat > 0:
        larger = [v for d, v in sorted(violations.items()) if d > delta_hat]
        if larger:
            details['first_violation_above_delta_hat'] = larger[0]
        logger.info(f"{model.name}: (LB) 통과, ε={epsilon}, δ̂={delta_hat:.6g}")
        return HypothesisResult('LB', True, None, details, n_samples, seed)

    counterexample = violations[min(violations)]
    logger.warning(f"{model.name}: (LB) 위반, 가장 작은 δ 에서도 실패: {counterexample}")
    return HypothesisResult('LB', False, counterexample, details, n_samples, seed)


def check_S(model: Model, n_samples: int = 10000, seed: int = 0) -> HypothesisResult:
    """
    (S) 표본 검사: |φ|_C, |ψ|_C < δ

    Raises:
        ValueError: 모델에 평활성 상수가 없을 때
    """
    if model.smoothness is None:
        raise ValueError(f"모델 {model.name}에 평활성 상수 (K, α, δ)가 없습니다")

    K, alpha, delta = model.smoothness.K, model.smoothness.alpha, model.smoothness.delta
    sampler = make_sampler(model, seed)
    upper = delta * (1.0 - 1e-12)

    phi = sampler.segments(n_samples, delta * 1e-8, upper)
    independent = sampler.segments(n_samples, delta * 1e-8, upper)
    nearby = phi * (1.0 + sampler.log_uniform(1e-6, 1.0, phi.shape) * sampler.rng.uniform(-1.0, 1.0, phi.shape))
    half = n_samples // 2
    psi = np.vstack([independent[:half], np.clip(nearby[half:], delta * 1e-12, upper)])

    phi_taps, psi_taps = sampler.tap_values(phi), sampler.tap_values(psi)
    f_phi, f_psi = model.reaction_at(phi_taps), model.reaction_at(psi_taps)
    lin_diff = model.linear_response(psi_taps - phi_taps)
    remainder = np.abs(f_psi - f_phi - lin_diff)

    norm_phi = np.max(np.abs(phi), axis=1)
    norm_psi = np.max(np.abs(psi), axis=1)
    norm_diff = np.max(np.abs(psi - phi), axis=1)
    bound = K * norm_diff * (norm_phi ** alpha + norm_psi ** alpha)
    slack = S_RELATIVE_SLACK * (np.abs(f_psi) + np.abs(f_phi) + np.abs(lin_diff))

    ratio = np.where(bound > 0, remainder / np.where(bound > 0, bound, 1.0), 0.0)
    details = {'K': K, 'alpha': alpha, 'delta': delta, 'max_ratio': float(np.max(ratio))}

    index = _first_violation(remainder > bound + slack)
    if index is None:
        logger.info(f"{model.name}: (S) 통과 (최대 비율 {details['max_ratio']:.3g})")
        return HypothesisResult('S', True, None, details, n_samples, seed)

    counterexample = {
        'phi': phi[index].tolist(),
        'psi': psi[index].tolist(),
        'remainder': float(remainder[index]),
        'bound': float(bound[index]),
    }
    logger.warning(f"{model.name}: (S) 위반 {counterexample}")
    return HypothesisResult('S', False, counterexample, details, n_samples, seed)


def _scan_zeros(model: Model) -> List[float]:
    """(0, 2κ] 에서 f* 의 영점"""
    kappa = model.kappa
    x = np.linspace(0.0, 2.0 * kappa, STRUCTURE_POINTS)[1:]
    values = np.asarray(model.f_star(x), dtype=float)
    band = 1e-14 * (1.0 + np.max(np.abs(values)))
    signs = np.where(np.abs(values) <= band, 0.0, np.sign(values))

    zeros: List[float] = []
    i = 0
    while i < x.size:
        if signs[i] == 0:
            j = i
            while j + 1 < x.size and signs[j + 1] == 0:
                j = j + 1
            zeros.append(float(0.5 * (x[i] + x[j])))
            i = j + 1
            continue
        if i + 1 < x.size and signs[i] * signs[i + 1] < 0:
            zeros.append(float(brentq(model.f_star, x[i], x[i + 1], xtol=1e-15)))
        i = i + 1
    return zeros


def check_structure(model: Model) -> List[HypothesisResult]:
    """(M), (J), (ND) 검사"""
    kappa = model.kappa
    zeros = _scan_zeros(model)
    x = np.linspace(0.0, kappa, STRUCTURE_POINTS)[1:-1]
    inside = np.asarray(model.f_star(x), dtype=float)

    results = []
    ok_zero = len(zeros) == 1 and abs(zeros[0] - kappa) <= 1e-8 * max(1.0, kappa)
    ok_sign = bool(np.all(inside > 0))
    details = {'zeros': [0.0] + zeros, 'kappa': kappa}
    if ok_zero and ok_sign:
        results.append(HypothesisResult('M', True, None, details))
    else:
        if not ok_sign:
            bad = int(np.flatnonzero(inside <= 0)[0])
            counterexample = {'x': float(x[bad]), 'f_star': float(inside[bad])}
        else:
            counterexample = {'zeros': zeros}
        logger.warning(f"{model.name}: (M) 위반 {counterexample}")
        results.append(HypothesisResult('M', False, counterexample, details))

    # Measure 타입이 음의 부분을 lag 0 의 qδ₀ 하나로 제한
    results.append(HypothesisResult('J', True, None, {'structural': True, 'q': model.measure.q}))

    p, q = model.measure.p, model.measure.q
    if p > q:
        results.append(HypothesisResult('ND', True, None, {'p': p, 'q': q}))
    else:
        results.append(HypothesisResult('ND', False, {'p': p, 'q': q}, {'p': p, 'q': q}))
    return results
