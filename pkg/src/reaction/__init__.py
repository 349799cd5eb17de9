from .measure import Measure
from .segment import HistorySegment
from .model import Model, Smoothness
from .builtin import (
    BUILTIN_MODELS, builtin_kpp, builtin_mackey_glass,
    nicholson, may, ub_violating, make_model
)
from .custom import make_custom_model

__all__ = [
    'Measure',
    'HistorySegment',
    'Model',
    'Smoothness',
    'BUILTIN_MODELS',
    'builtin_kpp',
    'builtin_mackey_glass',
    'nicholson',
    'may',
    'ub_violating',
    'make_model',
    'make_custom_model',
]
