"""Finite computational algebra for power, convolution and functor semigroups over finite groups."""

__version__ = "0.1.0"
