from .decay import (
    CRITICAL, PURE, DecayFit,
    fit_decay, fit_decay_arrays, fit_window,
    detect_oscillation, count_crossings, is_monotone
)

__all__ = [
    'CRITICAL',
    'PURE',
    'DecayFit',
    'fit_decay',
    'fit_decay_arrays',
    'fit_window',
    'detect_oscillation',
    'count_crossings',
    'is_monotone',
]
