from .solution import ProfileSolution, SolverOptions
from .fixed_point import FixedPointOperator
from .derivative import recover_derivative
from .solver import solve_profile, residual, make_grid, initial_guess
from .oracle import shoot_front

__all__ = [
    'ProfileSolution',
    'SolverOptions',
    'FixedPointOperator',
    'recover_derivative',
    'solve_profile',
    'residual',
    'make_grid',
    'initial_guess',
    'shoot_front',
]
