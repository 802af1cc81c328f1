"""Fourier-cosine transforms of the kernels: Xi(z), its derivatives, and real zeros.

``Xi(z) = int_0^inf Phi(t) cos(z t) dt`` for every kernel; the symmetric form
``(1/2) int_R e^{-izt} Phi(t) dt`` of the character case is the same number by
evenness.  ``F(z) = 2 Xi(z)`` is the transform normalisation used by the
Jensen functionals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import partial

import numpy as np

from ._parallel import parallel_map
from .errors import AccuracyError, CapabilityError, DomainError
from .kernels import RIEMANN, KernelDescriptor, character_kernel, log_abs_phi, phi
from .quadrature import composite

Z_GUARD = 200.0
TAIL_DROP = math.log(1e18)


@dataclass(frozen=True)
class QuadratureSpec:
    """Composite Gauss rule for ``int_0^T kernel(t) cos(z t) dt``.

    ``truncation_T=None`` picks the kernel default.  Panels are no wider than
    ``min(0.25, pi / (panels_per_halfperiod * max(1, |z|)))`` and are halved
    until successive estimates differ by less than ``tolerance / 4``.
    """

    truncation_T: float | None = None
    panels_per_halfperiod: int = 4
    gauss_order: int = 16
    tolerance: float = 1e-12
    max_halvings: int = 12

    def __post_init__(self):
        if self.panels_per_halfperiod < 2:
            raise DomainError("panels_per_halfperiod must be at least 2")
        if self.gauss_order < 2:
            raise DomainError("gauss_order must be at least 2")
        if not self.tolerance > 0:
            raise DomainError("tolerance must be positive")

    def panel_width(self, z: float) -> float:
        return min(0.25, math.pi / (self.panels_per_halfperiod * max(1.0, abs(z))))


DEFAULT_SPEC = QuadratureSpec()


def default_truncation(desc: KernelDescriptor) -> float:
    if desc.kind == "riemann":
        return 2.5
    return max(2.5, 0.5 * math.log(45.0 * desc.modulus / math.pi))


def truncation_point(desc: KernelDescriptor, spec: QuadratureSpec) -> float:
    """Upper limit to use, checked so that ``|kernel(T)| < 1e-18 max|kernel|`` on ``[0, T]``."""
    T = spec.truncation_T if spec.truncation_T is not None else default_truncation(desc)
    probe = np.linspace(0.0, T, 257)
    logabs, _ = log_abs_phi(desc, probe)
    if not logabs[-1] < np.max(logabs) - TAIL_DROP:
        raise DomainError(f"truncation_T={T} leaves kernel tail above 1e-18 of its peak")
    return T


def _trig(z, t, k):
    # d^k/dz^k cos(z t) = t^k cos(z t + k pi/2), without rounding pi/2
    r = k % 4
    if r == 0:
        return np.cos(z * t)
    if r == 1:
        return -np.sin(z * t)
    if r == 2:
        return -np.cos(z * t)
    return np.sin(z * t)


def _panel_sum(desc, z, T, width, order, k):
    nodes, weights = composite(0.0, T, width, order)
    vals = phi(desc, nodes) * _trig(z, nodes, k)
    if k:
        vals = vals * nodes**k
    return float(np.dot(weights, vals))


@dataclass
class TransformResult:
    z: float
    value: float
    err_estimate: float
    levels: int
    truncation_T: float
    tail_bound: float


def _refine(desc, z, spec, k):
    if abs(z) > Z_GUARD:
        raise CapabilityError(f"|z| <= {Z_GUARD} required, got {z}")
    T = truncation_point(desc, spec)
    width = spec.panel_width(z)
    prev = _panel_sum(desc, z, T, width, spec.gauss_order, k)
    diff = math.inf
    for level in range(1, spec.max_halvings + 1):
        width *= 0.5
        cur = _panel_sum(desc, z, T, width, spec.gauss_order, k)
        diff = abs(cur - prev)
        if diff < spec.tolerance / 4:
            tail = abs(phi(desc, T)) * max(T, 1.0) ** k * (1.0 / max(abs(z), 1.0) + width)
            return TransformResult(float(z), cur, diff, level, T, tail)
        prev = cur
    raise AccuracyError(f"no convergence after {spec.max_halvings} halvings at z={z}", prev, diff)


def cosine_transform(desc: KernelDescriptor, z: float, spec: QuadratureSpec = DEFAULT_SPEC, full_output=False):
    """``int_0^T kernel(t) cos(z t) dt`` by halving-refined composite Gauss panels."""
    res = _refine(desc, float(z), spec, 0)
    return res if full_output else res.value


def xi_riemann(z: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    return cosine_transform(RIEMANN, z, spec)


def xi_character(z: float, d: int, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    return cosine_transform(character_kernel(d), z, spec)


def moment_transform(desc: KernelDescriptor, z: float, k: int, spec: QuadratureSpec = DEFAULT_SPEC, full_output=False):
    """k-th derivative of ``F(z) = 2 int_0^inf kernel(t) cos(z t) dt``."""
    if int(k) != k or not 0 <= k <= 8:
        raise DomainError(f"moment order must be an integer in [0, 8], got {k}")
    res = _refine(desc, float(z), spec, int(k))
    res.value *= 2.0
    res.err_estimate *= 2.0
    res.tail_bound *= 2.0
    return res if full_output else res.value


@dataclass
class ZeroBracket:
    lo: float
    hi: float
    refined_root: float
    residual: float


def _xi_at(desc, spec, z):
    return cosine_transform(desc, z, spec)


def find_real_zeros(
    desc: KernelDescriptor,
    z_max: float,
    scan_step: float = 0.1,
    spec: QuadratureSpec = DEFAULT_SPEC,
    width: float = 1e-10,
    workers: int = 1,
) -> list[ZeroBracket]:
    """Sign-change scan of the transform on ``[0, z_max]`` refined by bisection."""
    if not 0 < scan_step <= 0.25:
        raise DomainError(f"scan_step must lie in (0, 0.25], got {scan_step}")
    if z_max < scan_step:
        return []
    count = int(math.floor(z_max / scan_step + 1e-9)) + 1
    grid = scan_step * np.arange(count)
    f = partial(_xi_at, desc, spec)
    values = parallel_map(f, [float(z) for z in grid], workers)
    brackets = []
    for i in range(count - 1):
        va, vb = values[i], values[i + 1]
        if va == 0.0:
            brackets.append(ZeroBracket(float(grid[i]), float(grid[i]), float(grid[i]), 0.0))
            continue
        if va * vb < 0:
            brackets.append(_bisect(f, float(grid[i]), float(grid[i + 1]), va, width))
    return brackets


def _bisect(f, lo, hi, flo, width):
    a, b, fa = lo, hi, flo
    while b - a > width:
        c = 0.5 * (a + b)
        fc = f(c)
        if fc == 0.0:
            a = b = c
            break
        if (fc > 0) == (fa > 0):
            a, fa = c, fc
        else:
            b = c
    root = 0.5 * (a + b)
    return ZeroBracket(lo, hi, root, abs(f(root)))
