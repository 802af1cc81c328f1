"""Gamma, shifted factorials, Jacobi/ultraspherical polynomials, Bessel J and I.

Polynomials are evaluated by three-term recurrence; the explicit hypergeometric
sum is kept as an exact-arithmetic oracle (:func:`jacobi_p_series`).  Bessel
functions are power series only, with an argument guard.
"""
from __future__ import annotations

import decimal
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _hot
from .errors import CapabilityError, DomainError, RangeError

BESSEL_ARG_GUARD = 60.0
SERIES_MAX_DEGREE = 60
_BESSEL_PREC = 50


@dataclass(frozen=True)
class PolyEval:
    """Validated polynomial evaluation request."""

    n: int
    x: float
    alpha: float = 0.0
    beta: float = 0.0
    lam: float = 0.5

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"degree must be a nonnegative integer, got {self.n!r}")
        if not self.alpha > -1 or not self.beta > -1:
            raise DomainError(f"Jacobi parameters must exceed -1, got alpha={self.alpha}, beta={self.beta}")
        if not self.lam > 0:
            raise DomainError(f"ultraspherical parameter must be positive, got {self.lam}")


def _check_degree(n):
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainError(f"degree must be a nonnegative integer, got {n!r}")
    return int(n)


def _check_jacobi(alpha, beta):
    if not (alpha > -1 and beta > -1):
        raise DomainError(f"Jacobi parameters must exceed -1, got alpha={alpha}, beta={beta}")


def _check_lambda(lam):
    if not lam > 0:
        raise DomainError(f"ultraspherical parameter must be positive, got {lam}")


def _as_array(x):
    arr = np.asarray(x, dtype=np.float64)
    return arr, arr.ndim == 0


def _ret(values, scalar):
    return float(values[0]) if scalar else values


# -------------------------------------------------------------- Gamma family


def _is_pole(x) -> bool:
    return x <= 0 and float(x).is_integer()


def gamma(x: float) -> float:
    """Euler Gamma for real non-pole ``x`` (libm's Lanczos/Stirling implementation)."""
    x = float(x)
    if _is_pole(x):
        raise DomainError(f"Gamma has a pole at x={x:g}")
    try:
        return math.gamma(x)
    except OverflowError as exc:
        raise RangeError(f"Gamma({x}) overflows double precision") from exc


def gamma_product(x: float, factors: int = 10**6) -> float:
    """Gamma from the truncated Weierstrass-type product, for testing only.

    Truncation after K factors leaves a relative error of roughly
    ``|x (1 - x)| / (2 K)``.
    """
    x = float(x)
    if _is_pole(x):
        raise DomainError(f"Gamma has a pole at x={x:g}")
    k = np.arange(1, factors + 1, dtype=np.float64)
    lin = 1.0 + x / k  # negative for k < -x
    log_terms = np.log(np.abs(lin)) - x * np.log1p(1.0 / k)
    sign = -1.0 if np.count_nonzero(lin < 0) % 2 else 1.0
    recip = sign * x * math.exp(math.fsum(log_terms))
    return 1.0 / recip


def log_gamma_ratio(a: float, b: float, n: float) -> float:
    """``log(Gamma(n + a) / Gamma(n + b))`` via lgamma, for large ``n``."""
    return math.lgamma(n + a) - math.lgamma(n + b)


def duplication_residual(x: float) -> float:
    """Relative residual of Legendre's duplication formula at ``x``."""
    lhs = gamma(2 * x) * gamma(0.5)
    rhs = 2.0 ** (2 * x - 1) * gamma(x) * gamma(x + 0.5)
    return abs(lhs - rhs) / abs(lhs)


def pochhammer(a: float, k: int) -> float:
    """Shifted factorial ``(a)_k = Gamma(a + k) / Gamma(a)``.

    Integer ``k >= 0`` uses the direct product (defined even when ``a`` is a
    pole of Gamma); negative ``k`` uses ``1 / ((a-1)(a-2)...(a+k))``.
    """
    if int(k) != k:
        raise DomainError(f"pochhammer needs an integer count, got {k!r}")
    k = int(k)
    a = float(a)
    if k >= 0:
        out = 1.0
        for j in range(k):
            out *= a + j
        return out
    denom = 1.0
    for j in range(1, -k + 1):
        denom *= a - j
    if denom == 0.0:
        raise DomainError(f"(a)_k undefined: Gamma(a+k) has a pole at a+k={a + k:g} while Gamma(a) is finite")
    return 1.0 / denom


# ---------------------------------------------------------------- Polynomials


def jacobi_p(n, alpha, beta, x):
    """Jacobi polynomial ``P_n^(alpha,beta)(x)`` by the standard three-term recurrence."""
    n = _check_degree(n)
    _check_jacobi(alpha, beta)
    arr, scalar = _as_array(x)
    vals = _hot.jacobi(n, float(alpha), float(beta), np.atleast_1d(arr).ravel())
    return _ret(vals, scalar) if scalar else vals.reshape(arr.shape)


def jacobi_p_series(n, alpha, beta, x) -> float:
    """Term-by-term hypergeometric sum for ``P_n^(alpha,beta)(x)``, in exact rationals.

    Inputs are converted to exact binary fractions, so the only rounding is the
    final conversion back to float.  Intended as an oracle for small degrees.
    """
    n = _check_degree(n)
    _check_jacobi(alpha, beta)
    if n > SERIES_MAX_DEGREE:
        raise CapabilityError(f"explicit series limited to n <= {SERIES_MAX_DEGREE}, got {n}")
    a = Fraction(float(alpha))
    b = Fraction(float(beta))
    half = (1 - Fraction(float(x))) / 2
    pref = Fraction(1)
    for j in range(n):
        pref *= (a + 1 + j) / (j + 1)
    total = Fraction(0)
    term = Fraction(1)  # (-n)_k (n+a+b+1)_k / ((a+1)_k k!) * half^k
    for k in range(n + 1):
        total += term
        term = term * (k - n) * (n + a + b + 1 + k) / ((a + 1 + k) * (k + 1)) * half
    return float(pref * total)


def gegenbauer_c(n, lam, x):
    """Ultraspherical polynomial ``C_n^(lam)(x)``.

    Raises :class:`RangeError` when the unnormalized value overflows; use
    :func:`gegenbauer_norm` for extreme degrees.
    """
    n = _check_degree(n)
    _check_lambda(lam)
    arr, scalar = _as_array(x)
    flat = np.atleast_1d(arr).ravel()
    with np.errstate(over="ignore", invalid="ignore"):
        vals = _hot.gegenbauer_c(n, float(lam), flat)
    if not np.all(np.isfinite(vals)):
        raise RangeError(f"C_{n}^({lam}) overflows; use gegenbauer_norm for the normalized value")
    return _ret(vals, scalar) if scalar else vals.reshape(arr.shape)


def gegenbauer_at_one(n, lam) -> float:
    """``C_n^(lam)(1) = (2 lam)_n / n!``."""
    n = _check_degree(n)
    _check_lambda(lam)
    out = 1.0
    for j in range(n):
        out *= (2 * lam + j) / (j + 1)
    return out


def gegenbauer_norm(n, lam, x):
    """Normalized ultraspherical polynomial ``C_n^(lam)(x) / C_n^(lam)(1)``.

    Runs the recurrence directly on the normalized sequence, which stays
    bounded by 1 on [-1, 1] for every degree.  ``x == 1`` returns exactly 1.
    """
    n = _check_degree(n)
    _check_lambda(lam)
    arr, scalar = _as_array(x)
    flat = np.atleast_1d(arr).ravel()
    with np.errstate(over="ignore", invalid="ignore"):
        vals = _hot.gegenbauer_norm(n, float(lam), flat)
    vals = np.where(flat == 1.0, 1.0, vals)
    if not np.all(np.isfinite(vals)):
        raise RangeError(f"c_{n}^({lam}) overflows; use gegenbauer_norm_log for arguments above 1")
    return _ret(vals, scalar) if scalar else vals.reshape(arr.shape)


def gegenbauer_norm_log(n, lam, y):
    """``log c_n^(lam)(y)`` for ``y >= 1``, free of overflow at any degree."""
    n = _check_degree(n)
    _check_lambda(lam)
    arr, scalar = _as_array(y)
    flat = np.atleast_1d(arr).ravel()
    if np.any(flat < 1.0):
        raise DomainError("gegenbauer_norm_log needs arguments >= 1")
    vals = _hot.gegenbauer_norm_log(n, float(lam), flat)
    return _ret(vals, scalar) if scalar else vals.reshape(arr.shape)


def quadratic_transform_residual(n, beta, x) -> float:
    """``|C_2n^(beta+1/2)(x) - K P_n^(-1/2,beta)(1 - 2x^2)|`` with the transform constant K."""
    n = _check_degree(n)
    if not -0.5 < beta < 1:
        raise DomainError(f"beta must lie in (-1/2, 1) so that beta + 1/2 > 0, got {beta}")
    if abs(x) > 1:
        raise DomainError(f"|x| must not exceed 1, got {x}")
    if n > 30:
        raise CapabilityError(f"quadratic transform check limited to n <= 30, got {n}")
    lhs = gegenbauer_c(2 * n, beta + 0.5, float(x))
    const = (-1.0) ** n * math.factorial(n) / pochhammer(beta + 1, n)
    const *= pochhammer(2 * beta + 1, 2 * n) / math.factorial(2 * n)
    rhs = const * jacobi_p(n, -0.5, beta, 1.0 - 2.0 * float(x) ** 2)
    return abs(lhs - rhs)


# ------------------------------------------------------------------- Bessel


def _series_core(alpha: float, w: float, sign: int) -> float:
    """``sum_k sign^k w^k / (k! (alpha+1)_k)`` accumulated in 50-digit decimal.

    The alternating case loses up to ~exp(2 sqrt(w)) in cancellation, which
    double precision cannot absorb at the top of the guarded range.
    """
    ctx = decimal.Context(prec=_BESSEL_PREC)
    D = ctx.create_decimal_from_float
    w_d = D(w)
    a1 = D(alpha) + 1
    term = ctx.create_decimal(1)
    total = ctx.create_decimal(1)
    tiny = ctx.create_decimal("1e-45")
    k = 0
    while True:
        k += 1
        term = ctx.divide(ctx.multiply(term, w_d), ctx.multiply(D(k), a1 + (k - 1)))
        if sign < 0:
            term = -term
        total = ctx.add(total, term)
        if k > w and abs(term) <= tiny * abs(total):
            break
        if k > 2000:  # pragma: no cover - guarded range converges far sooner
            break
    return float(total)


def _check_bessel(alpha, x):
    if not alpha > -1:
        raise DomainError(f"Bessel order must exceed -1, got {alpha}")
    if abs(x) > BESSEL_ARG_GUARD:
        raise CapabilityError(f"|x| <= {BESSEL_ARG_GUARD} required (power-series regime), got {x}")


def _bessel_prefactor(alpha, x, name):
    if x < 0 and not float(alpha).is_integer():
        raise DomainError(f"{name}_alpha(x) for x < 0 is complex unless alpha is an integer")
    if x == 0:
        if alpha > 0:
            return 0.0
        if alpha == 0:
            return 1.0
        raise DomainError(f"{name}_alpha has a pole at x=0 for alpha < 0")
    return (x / 2.0) ** alpha / math.gamma(alpha + 1.0) if x > 0 else (
        (-1.0) ** int(alpha) * (abs(x) / 2.0) ** alpha / math.gamma(alpha + 1.0)
    )


def bessel_j(alpha, x) -> float:
    """Bessel ``J_alpha(x)`` by its power series."""
    alpha, x = float(alpha), float(x)
    _check_bessel(alpha, x)
    pref = _bessel_prefactor(alpha, x, "J")
    if pref == 0.0 or x == 0:
        return pref
    return pref * _series_core(alpha, (x / 2.0) ** 2, -1)


def bessel_i(alpha, x) -> float:
    """Modified Bessel ``I_alpha(x)`` by its power series."""
    alpha, x = float(alpha), float(x)
    _check_bessel(alpha, x)
    pref = _bessel_prefactor(alpha, x, "I")
    if pref == 0.0 or x == 0:
        return pref
    return pref * _series_core(alpha, (x / 2.0) ** 2, 1)


def bessel_j_scaled(alpha, x) -> float:
    """Entire function ``(x/2)^(-alpha) J_alpha(x)``, finite at ``x = 0``."""
    alpha, x = float(alpha), float(x)
    _check_bessel(alpha, x)
    return _series_core(alpha, (x / 2.0) ** 2, -1) / math.gamma(alpha + 1.0)


def bessel_i_scaled(alpha, x) -> float:
    """Entire function ``(x/2)^(-alpha) I_alpha(x)``, finite at ``x = 0``."""
    alpha, x = float(alpha), float(x)
    _check_bessel(alpha, x)
    return _series_core(alpha, (x / 2.0) ** 2, 1) / math.gamma(alpha + 1.0)
