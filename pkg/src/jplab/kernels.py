"""The theta kernels whose cosine transforms are the Xi functions.

The Riemann kernel is

    Phi(t) = 4 pi sum_{n>=1} (2 pi n^4 e^{9t/2} - 3 n^2 e^{5t/2}) exp(-n^2 pi e^{2t})

and a real primitive character ``chi`` of modulus ``m`` gives

    Phi(t, chi|0) = 2 e^{t/2}  sum_{n in Z} chi(n)   exp(-n^2 pi e^{2t} / m)
    Phi(t, chi|1) = 2 e^{3t/2} sum_{n in Z} n chi(n) exp(-n^2 pi e^{2t} / m)

Every kernel is even in ``t``; by default negative ``t`` is folded to ``|t|``
and the defining series is only used at negative ``t`` when ``direct=True``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _hot
from .characters import RealPrimitiveCharacter, character
from .errors import DomainError



@dataclass(frozen=True)
class KernelDescriptor:
    kind: str = "riemann"
    character: RealPrimitiveCharacter | None = None
    truncation_floor: float = 1e-18

    def __post_init__(self):
        if self.kind not in ("riemann", "character"):
            raise DomainError(f"unknown kernel kind {self.kind!r}")
        if self.kind == "character" and self.character is None:
            raise DomainError("character kernel needs a character")
        if self.kind == "riemann" and self.character is not None:
            raise DomainError("riemann kernel takes no character")

    @property
    def label(self) -> str:
        return "riemann" if self.kind == "riemann" else f"chi_{self.character.discriminant}"

    @property
    def modulus(self) -> int:
        return 1 if self.character is None else self.character.modulus


RIEMANN = KernelDescriptor("riemann")


def character_kernel(d: int, truncation_floor: float = 1e-18) -> KernelDescriptor:
    return KernelDescriptor("character", character(d), truncation_floor)


def descriptor(kind: str = "riemann", d: int | None = None) -> KernelDescriptor:
    """Descriptor from CLI-style arguments; a discriminant implies a character kernel."""
    if d is not None or kind == "character":
        if d is None:
            raise DomainError("character kernel needs --d")
        return character_kernel(d)
    return RIEMANN


def _series(desc: KernelDescriptor, t: np.ndarray):
    """Return ``(log_prefactor, S, nterms, ratio)`` with ``Phi = exp(log_prefactor) * S``."""
    if desc.kind == "riemann":
        s, nterms, ratio = _hot.riemann_shifted_sum(t, desc.truncation_floor)
        logpre = math.log(4 * math.pi) + 2.5 * t - math.pi * np.exp(2.0 * t)
        return logpre, s, nterms, ratio
    chi = desc.character
    a = math.pi * np.exp(2.0 * t) / chi.modulus
    s, nterms, ratio = _hot.theta_shifted_sum(chi.table, chi.parity_a == 1, a, desc.truncation_floor)
    power = 0.5 if chi.parity_a == 0 else 1.5
    logpre = math.log(4.0) + power * t - a
    return logpre, s, nterms, ratio


def _prepare(t, direct):
    arr = np.asarray(t, dtype=np.float64)
    flat = np.atleast_1d(arr).ravel()
    if not direct:
        flat = np.abs(flat)
    return arr, flat


def phi(desc: KernelDescriptor, t, direct: bool = False, with_flag: bool = False):
    """Kernel value(s) at ``t``.

    With ``with_flag`` also returns a boolean (array) marking values that
    underflowed to zero.
    """
    arr, flat = _prepare(t, direct)
    logpre, s, _, _ = _series(desc, flat)
    with np.errstate(under="ignore", over="ignore"):
        vals = np.exp(logpre) * s
    underflow = (vals == 0.0) & (s != 0.0)
    if arr.ndim == 0:
        out, flag = float(vals[0]), bool(underflow[0])
    else:
        out, flag = vals.reshape(arr.shape), underflow.reshape(arr.shape)
    return (out, flag) if with_flag else out


def log_abs_phi(desc: KernelDescriptor, t):
    """``(log|Phi(t)|, sign Phi(t))`` without underflow, for ``t`` folded to ``|t|``."""
    arr, flat = _prepare(t, False)
    logpre, s, _, _ = _series(desc, flat)
    with np.errstate(divide="ignore"):
        logabs = logpre + np.log(np.abs(s))
    sign = np.sign(s)
    return logabs.reshape(arr.shape), sign.reshape(arr.shape)


@dataclass
class TruncationReport:
    t: float
    nterms: int
    first_omitted_ratio: float
    certified: bool


def truncation_report(desc: KernelDescriptor, t: float, direct: bool = False) -> TruncationReport:
    """Number of series terms kept at ``t`` and the size of the first omitted one."""
    _, flat = _prepare(float(t), direct)
    _, _, nterms, ratio = _series(desc, flat)
    r = float(ratio[0])
    return TruncationReport(float(t), int(nterms[0]), r, r <= desc.truncation_floor)


def evenness_residual(desc: KernelDescriptor, t) -> np.ndarray:
    """``|Phi(t) - Phi(-t)|`` with both sides from the defining series."""
    flat = np.atleast_1d(np.asarray(t, dtype=np.float64)).ravel()
    return np.abs(phi(desc, flat, direct=True) - phi(desc, -flat, direct=True))


@dataclass
class ScanReport:
    kernel: str
    t_max: float
    step: float
    n_points: int
    min_value: float
    min_log_abs: float
    min_sign: int
    argmin: float
    sign_changes: list[float] = field(default_factory=list)

    @property
    def positive(self) -> bool:
        """True when every grid value is strictly positive (decided in log space)."""
        return self.min_sign > 0


def scan_grid(t_max: float, step: float) -> np.ndarray:
    if not (t_max >= 0 and step > 0):
        raise DomainError("scan needs t_max >= 0 and step > 0")
    count = int(math.floor(t_max / step + 1e-9)) + 1
    return step * np.arange(count, dtype=np.float64)


def positivity_scan(desc: KernelDescriptor, t_max: float, step: float) -> ScanReport:
    """Minimum, argmin and sign changes of the kernel on ``[0, t_max]``.

    Values are ranked through ``(sign, log|Phi|)`` so that points where the
    kernel underflows double precision still order correctly: ``min_value``
    may read 0.0 while ``min_sign``/``min_log_abs`` carry the true minimum.
    Sign changes are recorded as the midpoint of the grid cell that flips.
    """
    grid = scan_grid(t_max, step)
    logabs, sign = log_abs_phi(desc, grid)
    # ascending order of the real value: most negative first, then zeros, then smallest positive
    key = np.where(sign < 0, -np.inf, np.where(sign == 0, 0.0, 1.0))
    rank = np.lexsort((np.where(sign < 0, -logabs, logabs), key))
    i = int(rank[0])
    flips = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
    changes = [float(0.5 * (grid[k] + grid[k + 1])) for k in flips]
    return ScanReport(
        desc.label, float(t_max), float(step), int(grid.size), float(phi(desc, grid[i])),
        float(logabs[i]), int(sign[i]), float(grid[i]), changes,
    )


@dataclass
class DecayReport:
    kernel: str
    derivative_order: int
    t: list[float]
    log_ratio: list[float]
    strictly_decreasing: bool


def kernel_derivative(desc: KernelDescriptor, t, order: int, h: float = 1e-4) -> np.ndarray:
    """Central finite difference of order 0..2 with one Richardson step-halving."""
    if order not in (0, 1, 2):
        raise DomainError(f"derivative order must be 0, 1 or 2, got {order}")
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    if order == 0:
        return phi(desc, t)

    def fd(step):
        if order == 1:
            return (phi(desc, t + step) - phi(desc, t - step)) / (2 * step)
        return (phi(desc, t + step) - 2 * phi(desc, t) + phi(desc, t - step)) / step**2

    with np.errstate(under="ignore"):
        return (4.0 * fd(h / 2) - fd(h)) / 3.0


def decay_check(desc: KernelDescriptor, derivative_order: int, t_grid, window=(0.5, 2.0)) -> DecayReport:
    """``log|Phi^(k)(t)| / t`` on the grid and whether it strictly decreases on the window.

    Points where the derivative underflows are reported as ``-inf`` and count
    as decreasing.
    """
    t = np.asarray(t_grid, dtype=np.float64)
    if t.ndim != 1 or np.any(t <= 0) or np.any(np.diff(t) <= 0):
        raise DomainError("t_grid must be positive and strictly increasing")
    deriv = kernel_derivative(desc, t, derivative_order)
    with np.errstate(divide="ignore"):
        ratio = np.log(np.abs(deriv)) / t
    inside = ratio[(t >= window[0] - 1e-12) & (t <= window[1] + 1e-12)]
    ok = True
    for prev, cur in zip(inside[:-1], inside[1:]):
        if cur == -np.inf:
            continue
        if not cur < prev:
            ok = False
    return DecayReport(desc.label, derivative_order, t.tolist(), ratio.tolist(), ok)
