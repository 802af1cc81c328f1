"""Real primitive Dirichlet characters as Kronecker symbols of fundamental discriminants.

Also the character theta series and the residual of its inversion formula
under ``x -> 1/x``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _hot
from .errors import DomainError

DISCRIMINANT_BOUND = 10_000
THETA_FLOOR = 1e-18


def _squarefree(n: int) -> bool:
    n = abs(n)
    if n % 4 == 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        if n % p == 0:
            n //= p
        p += 1
    return True


def is_fundamental_discriminant(d: int) -> bool:
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return _squarefree(d)
    if d % 4 == 0:
        q = d // 4
        return q % 4 in (2, 3) and _squarefree(q)
    return False


def _jacobi_symbol(a: int, n: int) -> int:
    # n odd positive
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _kronecker(d: int, n: int) -> int:
    if n == 0:
        return 1 if d in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if d < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if d % 2 == 0:
            return 0
        if v % 2 and d % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * _jacobi_symbol(d, n)


def kronecker_symbol(d: int, n: int) -> int:
    """Kronecker symbol ``(d/n)`` for a fundamental discriminant ``d``."""
    if not is_fundamental_discriminant(d):
        raise DomainError(f"{d} is not a fundamental discriminant")
    return _kronecker(int(d), int(n))


def enumerate_fundamental_discriminants(bound: int) -> list[int]:
    """All fundamental discriminants with ``|d| <= bound``, ordered by ``|d|`` then sign."""
    if bound < 3:
        raise DomainError(f"no fundamental discriminant has |d| <= {bound}; bound must be >= 3")
    if bound > DISCRIMINANT_BOUND:
        raise DomainError(f"bound limited to {DISCRIMINANT_BOUND}, got {bound}")
    out = []
    for m in range(3, bound + 1):
        for d in (-m, m):
            if is_fundamental_discriminant(d):
                out.append(d)
    return out


@dataclass(frozen=True)
class RealPrimitiveCharacter:
    """The character ``n -> (d/n)`` of modulus ``|d|``.

    ``parity_a`` is 0 for even characters (``d > 0``) and 1 for odd ones.
    """

    discriminant: int
    modulus: int = field(init=False)
    parity_a: int = field(init=False)
    table: np.ndarray = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        d = int(self.discriminant)
        if not is_fundamental_discriminant(d):
            raise DomainError(f"{d} is not a fundamental discriminant")
        if abs(d) > DISCRIMINANT_BOUND:
            raise DomainError(f"|d| limited to {DISCRIMINANT_BOUND}, got {d}")
        m = abs(d)
        table = np.array([_kronecker(d, n) for n in range(m)], dtype=np.int64)
        table.setflags(write=False)
        object.__setattr__(self, "discriminant", d)
        object.__setattr__(self, "modulus", m)
        object.__setattr__(self, "parity_a", 0 if d > 0 else 1)
        object.__setattr__(self, "table", table)

    def __call__(self, n: int) -> int:
        return int(self.table[int(n) % self.modulus])

    def values(self, n) -> np.ndarray:
        return self.table[np.asarray(n, dtype=np.int64) % self.modulus]


@lru_cache(maxsize=None)
def character(d: int) -> RealPrimitiveCharacter:
    """Cached constructor."""
    return RealPrimitiveCharacter(int(d))


def theta_shifted(chi: RealPrimitiveCharacter, x, floor: float = THETA_FLOOR):
    """Return ``(S, nterms, ratio)`` with ``theta(chi, x) = 2 exp(-pi x/m) S``.

    ``ratio`` is the first omitted term over the largest retained term.
    """
    arr = np.atleast_1d(np.asarray(x, dtype=np.float64)).ravel()
    a = math.pi * arr / chi.modulus
    return _hot.theta_shifted_sum(chi.table, chi.parity_a == 1, a, floor)


def theta(chi: RealPrimitiveCharacter, x):
    """Theta series of ``chi`` over all of Z.

    Even characters: ``sum chi(n) exp(-n^2 pi x/m)``.  Odd characters carry the
    extra factor ``n``.  Positive ``x`` only.
    """
    arr = np.asarray(x, dtype=np.float64)
    if np.any(arr <= 0):
        raise DomainError("theta needs x > 0")
    s, _, _ = theta_shifted(chi, arr)
    with np.errstate(under="ignore"):
        vals = 2.0 * np.exp(-math.pi * np.atleast_1d(arr).ravel() / chi.modulus) * s
    return float(vals[0]) if arr.ndim == 0 else vals.reshape(arr.shape)


def functional_equation_residual(chi: RealPrimitiveCharacter, x: float) -> float:
    """``|theta(x) - x^(-1/2 - a) theta(1/x)|`` with ``a`` the parity of ``chi``."""
    x = float(x)
    if x <= 0:
        raise DomainError("theta needs x > 0")
    power = -0.5 - chi.parity_a
    return abs(theta(chi, x) - x**power * theta(chi, 1.0 / x))
