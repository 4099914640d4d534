"""Exact computations for the deformed current Lie algebras sl_m^<Q>[x] and gl_m^<Q>[x]."""
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
