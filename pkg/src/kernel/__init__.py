from .green import ExponentialTail, GreenKernel, make_kernel, convolve, extend_left
from .quadrature import exp_weights, forward_integral, backward_integral

__all__ = [
    'ExponentialTail',
    'GreenKernel',
    'make_kernel',
    'convolve',
    'extend_left',
    'exp_weights',
    'forward_integral',
    'backward_integral',
]
