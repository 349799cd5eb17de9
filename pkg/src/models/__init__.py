from .run import Base, RunRecord
from .speed import SpeedRecord
from .profile import ProfileRecord
from .hypothesis import HypothesisRecord

__all__ = [
    'Base',
    'RunRecord',
    'SpeedRecord',
    'ProfileRecord',
    'HypothesisRecord',
]
