"""
프로파일 도함수 복원

    φ'(t) = ∫_t^∞ e^{c(t-s)} f(φ̃_s) ds

오른쪽 상수 연장 C = φ(T₊) 위에서는 f(φ̃_s) = f*(C) 이므로 꼬리 기여는 f*(C)/c 입니다.
"""

import os
import sys

import numpy as np

sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from kernel import backward_integral
from .fixed_point import FixedPointOperator
from .solution import ProfileSolution


def recover_derivative(sol: ProfileSolution) -> np.ndarray:
    """
    수렴한 프로파일의 φ' 표본

    Raises:
        ValueError: 수렴하지 않은 해
    """
    if not sol.converged:
        raise ValueError(f"수렴하지 않은 프로파일에서는 도함수를 복원할 수 없습니다: {sol}")

    op = FixedPointOperator(sol.model, sol.c, sol.t, sol.tail.rate, sol.critical)
    reaction = sol.model.reaction_at(op.history(sol.phi, sol.tail))
    end = sol.model.f_star(float(sol.phi[-1])) / sol.c
    return backward_integral(reaction, sol.c, sol.step, end)
