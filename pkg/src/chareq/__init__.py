from .characteristic import RootPair, eval_chi, chi_parts, chi_minimum, real_roots
from .critical import (
    CriticalSpeed, CriticalSpeedError, SpeedAnalysis,
    critical_speed, speed_for_rate, analyze_speed
)
from .zeros import (
    ContourError, ZeroCount, count_zeros_rect, count_zeros_detailed,
    dominance_bounds, dominance_check
)

__all__ = [
    'RootPair',
    'eval_chi',
    'chi_parts',
    'chi_minimum',
    'real_roots',
    'CriticalSpeed',
    'CriticalSpeedError',
    'SpeedAnalysis',
    'critical_speed',
    'speed_for_rate',
    'analyze_speed',
    'ContourError',
    'ZeroCount',
    'count_zeros_rect',
    'count_zeros_detailed',
    'dominance_bounds',
    'dominance_check',
]
