"""Composite Gauss-Legendre panel rules."""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def panel_rule(breaks, order: int = 16) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the composite rule on consecutive ``breaks``."""
    breaks = np.asarray(breaks, dtype=np.float64)
    x, w = gauss_legendre(order)
    lo, hi = breaks[:-1, None], breaks[1:, None]
    half = 0.5 * (hi - lo)
    nodes = (half * x + (lo + hi) * 0.5).ravel()
    weights = (half * w).ravel()
    return nodes, weights


def uniform_breaks(a: float, b: float, width: float) -> np.ndarray:
    count = max(1, int(math.ceil((b - a) / width - 1e-12)))
    return np.linspace(a, b, count + 1)


def composite(a: float, b: float, width: float, order: int = 16) -> tuple[np.ndarray, np.ndarray]:
    """Uniform panels no wider than ``width`` on ``[a, b]``."""
    return panel_rule(uniform_breaks(a, b, width), order)


def graded_breaks(a: float, b: float, width: float, point: float, finest: float) -> np.ndarray:
    """Uniform breaks on ``[a, b]`` plus geometric refinement towards ``point``.

    Panels adjacent to ``point`` shrink by halves down to ``finest`` on each
    side that lies inside ``[a, b]``.
    """
    base = uniform_breaks(a, b, width)
    extra = [point] if a < point < b else []
    step = width
    while step > finest:
        step *= 0.5
        for cand in (point - step, point + step):
            if a < cand < b:
                extra.append(cand)
    return np.unique(np.concatenate([base, np.asarray(extra, dtype=np.float64)]))
