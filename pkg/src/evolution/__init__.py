from .state import HistoryRing, EvolutionState, make_state, traveling_data, compact_data
from .stepper import step, advance, laplacian, level_crossing, default_dt
from .front import (
    FrontResult, fit_speed, front_speed, default_domain,
    traveling_front, compact_front, moving_profile, compare_with_profile
)

__all__ = [
    'HistoryRing',
    'EvolutionState',
    'make_state',
    'traveling_data',
    'compact_data',
    'step',
    'advance',
    'laplacian',
    'level_crossing',
    'default_dt',
    'FrontResult',
    'fit_speed',
    'front_speed',
    'default_domain',
    'traveling_front',
    'compact_front',
    'moving_profile',
    'compare_with_profile',
]
