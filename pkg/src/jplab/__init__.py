"""Numerical verification laboratory for Jensen-Polya type real-zero criteria.

Theta kernels, Riemann and Dirichlet-character Xi functions, Jensen's
positivity functionals and ultraspherical-polynomial surrogates, all at
desk scale in double precision.
"""
from __future__ import annotations

from ._accel import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
