"""Ladder checks of the polynomial-to-Bessel limits and of the polynomial bounds.

Limits are judged by a residual that must strictly decrease along a degree
ladder.  Bounds with unspecified constants are judged by the measured
constant (max of the defining ratio) staying stable on the top rungs.  The
one bound with an explicit constant, ``|I_a(z)| <= e^|z| (|z|/2)^a / Gamma(a+1)``,
is checked as a strict inequality.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .specfun import (
    bessel_i_scaled,
    bessel_j_scaled,
    gamma,
    gegenbauer_c,
    gegenbauer_norm,
    jacobi_p,
)

MAX_DEGREE = 4096
STABILITY = 0.10
LEMMA_STABILITY = 0.05


@dataclass
class AsymptoticsReport:
    """Outcome of one ladder check.

    ``sup_residual`` is filled for limit checks, ``rung_constants`` for bound
    checks; ``empirical_constant`` is the max over the tested ladder.
    """

    check_id: str
    statement: str
    n_ladder: list[int]
    contract: str
    passed: bool
    sup_residual: list[float] = field(default_factory=list)
    rung_constants: list[float] = field(default_factory=list)
    empirical_constant: float = math.nan
    extra: dict = field(default_factory=dict)


def _ladder(n_ladder, cap=MAX_DEGREE):
    ladder = [int(n) for n in n_ladder]
    if not ladder:
        raise DomainError("empty degree ladder")
    if any(b <= a for a, b in zip(ladder, ladder[1:])):
        raise DomainError("degree ladder must be strictly increasing")
    if ladder[0] < 1 or ladder[-1] > cap:
        raise DomainError(f"ladder degrees must lie in [1, {cap}]")
    return ladder


def _decreasing(values) -> bool:
    return all(b < a for a, b in zip(values, values[1:]))


def spread(values, top: int) -> float:
    """``max |v / v_last - 1|`` over the last ``top`` values."""
    tail = np.asarray(values[-top:], dtype=np.float64)
    if tail.size < 2:
        return 0.0
    return float(np.max(np.abs(tail / tail[-1] - 1.0)))


def _stabilized_from(ladder, values, band):
    """Smallest rung from which every later constant stays within ``band`` of the top one."""
    first = ladder[-1]
    for n, v in zip(reversed(ladder), reversed(values)):
        if abs(v / values[-1] - 1.0) <= band:
            first = n
        else:
            break
    return first


# ----------------------------------------------------------------- limits


def bessel_limit_check(alpha: float, beta: float, z_set=None, n_ladder=(64, 128, 256, 512, 1024, 2048, 4096)) -> AsymptoticsReport:
    """``n^-a P_n^(a,b)(1 - z^2/2n^2)`` against ``(z/2)^-a J_a(z)`` over ``z_set``.

    For ``alpha = -1/2`` the report also carries the ``sqrt(n pi) P_n`` vs
    ``cos z`` residuals under ``extra['cosine_residual']``.
    """
    if not alpha > -1 or not beta > -1:
        raise DomainError("Jacobi parameters must exceed -1")
    z = np.linspace(0.0, 10.0, 101) if z_set is None else np.asarray(list(z_set), dtype=np.float64)
    if np.any(np.abs(z) > 10):
        raise DomainError("z_set must lie in |z| <= 10")
    ladder = _ladder(n_ladder)
    target = np.array([bessel_j_scaled(alpha, float(v)) for v in z])
    residual, cosine = [], []
    for n in ladder:
        p = jacobi_p(n, alpha, beta, 1.0 - z**2 / (2.0 * n * n))
        residual.append(float(np.max(np.abs(n ** (-alpha) * p - target))))
        if alpha == -0.5:
            cosine.append(float(np.max(np.abs(math.sqrt(n * math.pi) * p - np.cos(z)))))
    extra = {"alpha": alpha, "beta": beta, "z_max": float(np.max(np.abs(z)))}
    if cosine:
        extra["cosine_residual"] = cosine
    return AsymptoticsReport(
        "bessel-limit", "n^-a P_n^(a,b)(1 - z^2/2n^2) -> (z/2)^-a J_a(z)", ladder,
        "sup residual strictly decreases along the ladder", _decreasing(residual),
        sup_residual=residual, extra=extra,
    )


def _check_beta(beta):
    if not -0.5 < beta < 0.5:
        raise DomainError(f"beta must lie in (-1/2, 1/2), got {beta}")


def cosine_limit_check(beta: float, z_set=None, n_ladder=(64, 128, 256, 512)):
    """Scaled ultraspherical limit to ``cos z`` and its ``D cosh(2|z|)`` envelope.

    Returns ``(limit_report, bound_report)``.  The limit report's residual is
    ``sup |(2n)^(1/2-b) Gamma(b+1/2) C_4n^(b+1/2)(z/4n) - cos z|``; the bound
    report's rung constant is ``max_z |n^(1/2-b) C_4n(z/4n)| / cosh(2|z|)``.
    """
    _check_beta(beta)
    z = np.linspace(0.0, 5.0, 201) if z_set is None else np.asarray(list(z_set), dtype=np.float64)
    if np.any(np.abs(z) > 5):
        raise DomainError("z_set must lie in |z| <= 5")
    ladder = _ladder(n_ladder, MAX_DEGREE // 4)
    lam = beta + 0.5
    g = gamma(lam)
    residual, D = [], []
    for n in ladder:
        c = gegenbauer_c(4 * n, lam, z / (4.0 * n))
        residual.append(float(np.max(np.abs((2.0 * n) ** (0.5 - beta) * g * c - np.cos(z)))))
        D.append(float(np.max(np.abs(n ** (0.5 - beta) * c) / np.cosh(2.0 * np.abs(z)))))
    limit = AsymptoticsReport(
        "cosine-limit", "(2n)^(1/2-b) Gamma(b+1/2) C_4n^(b+1/2)(z/4n) -> cos z", ladder,
        "sup residual over |z| <= 5 strictly decreases along the ladder", _decreasing(residual),
        sup_residual=residual, extra={"beta": beta},
    )
    sp = spread(D, 2)
    bound = AsymptoticsReport(
        "lemma-bound", "|n^(1/2-b) C_4n^(b+1/2)(z/4n)| <= D cosh(2|z|)", ladder,
        f"rung constants of the top two rungs within {LEMMA_STABILITY:.0%}", sp <= LEMMA_STABILITY,
        rung_constants=D, empirical_constant=max(D),
        extra={"beta": beta, "spread": sp, "stabilized_from": _stabilized_from(ladder, D, LEMMA_STABILITY)},
    )
    return limit, bound


# ----------------------------------------------------------------- bounds


def growth_bound_check(lam: float, n_ladder=(64, 128, 256, 512, 1024), c: float = 1.0, normalized: bool = False, top: int = 3) -> AsymptoticsReport:
    """Empirical constants of the ultraspherical growth bound.

    Unnormalized: ``K1 = max |C_n(cos t)| t^lam n^(1-lam)`` on ``[c/n, pi/2]``
    and ``K2 = max |C_n(cos t)| n^(1-2 lam)`` on ``[0, c/n]``.  With
    ``normalized`` the polynomial is divided by ``C_n(1)`` and the weights
    become ``t^lam n^lam`` and 1.  ``K1`` goes in ``rung_constants``, ``K2``
    in ``extra``.  A rung whose oscillatory range is empty contributes NaN
    and passes vacuously.
    """
    if not lam > 0 or not c > 0:
        raise DomainError("growth bound needs lam > 0 and c > 0")
    ladder = _ladder(n_ladder)
    K1, K2 = [], []
    for n in ladder:
        edge = c / n
        near = np.linspace(0.0, min(edge, 0.5 * math.pi), 65)
        if normalized:
            K2.append(float(np.max(np.abs(gegenbauer_norm(n, lam, np.cos(near))))))
        else:
            K2.append(float(np.max(np.abs(gegenbauer_c(n, lam, np.cos(near))))) * n ** (1 - 2 * lam))
        if edge >= 0.5 * math.pi:
            K1.append(math.nan)
            continue
        step = math.pi / (32 * n)
        theta = np.linspace(edge, 0.5 * math.pi, int(math.ceil((0.5 * math.pi - edge) / step)) + 1)
        if normalized:
            vals = np.abs(gegenbauer_norm(n, lam, np.cos(theta))) * theta**lam * n**lam
        else:
            vals = np.abs(gegenbauer_c(n, lam, np.cos(theta))) * theta**lam * n ** (1 - lam)
        K1.append(float(np.max(vals)))
    finite = [k for k in K1 if np.isfinite(k)]
    s1 = spread(finite, top) if finite else 0.0
    s2 = spread(K2, top)
    name = "growth-bound-normalized" if normalized else "growth-bound"
    stmt = "c_n(cos t) = t^-lam O(n^-lam) | O(1)" if normalized else "C_n(cos t) = t^-lam O(n^(lam-1)) | O(n^(2lam-1))"
    return AsymptoticsReport(
        name, stmt, ladder, f"K1 and K2 within {STABILITY:.0%} on the top {top} rungs",
        s1 <= STABILITY and s2 <= STABILITY,
        rung_constants=K1, empirical_constant=max(finite) if finite else math.nan,
        extra={"lam": lam, "c": c, "K2": K2, "K2_max": max(K2), "spread_K1": s1, "spread_K2": s2},
    )


def coefficient_ratio(alpha: float, beta: float, n: int) -> np.ndarray:
    """Series coefficient of ``n^-a P_n(1 - z^2/2n^2)`` times ``k! Gamma(a+k+1)``, for ``k = 0..n``.

    Computed through log-gamma so that every factor of the coefficient appears
    as written, without cancellation by hand.
    """
    lg = math.lgamma
    s = n + alpha + beta + 1
    out = np.empty(n + 1)
    for k in range(n + 1):
        log_coef = (
            -alpha * math.log(n) - lg(k + 1) - lg(n - k + 1)
            + lg(s + k) - lg(s)
            + lg(alpha + 1 + n) - lg(alpha + 1)
            - 2 * k * math.log(2.0 * n)
            - (lg(alpha + 1 + k) - lg(alpha + 1))
        )
        out[k] = math.exp(log_coef + lg(k + 1) + lg(alpha + k + 1))
    return out


def coefficient_bound_check(alpha: float, beta: float, n_set=(10, 20, 40, 80, 160), top: int = 2) -> AsymptoticsReport:
    """``C = max_k`` of the coefficient ratio, per degree; stable on the top rungs."""
    if not alpha > -1 or not beta > -1:
        raise DomainError("Jacobi parameters must exceed -1")
    ladder = _ladder(n_set)
    if ladder[0] < (alpha + beta) / 2:
        raise DomainError("degrees must satisfy n >= (alpha + beta) / 2")
    consts = [float(np.max(coefficient_ratio(alpha, beta, n))) for n in ladder]
    sp = spread(consts, top)
    return AsymptoticsReport(
        "coefficient-bound", "|coefficient_k| <= C / (k! Gamma(a+k+1)), 0 <= k <= n", ladder,
        f"rung constants within {STABILITY:.0%} on the top {top} rungs", sp <= STABILITY,
        rung_constants=consts, empirical_constant=max(consts),
        extra={"alpha": alpha, "beta": beta, "spread": sp},
    )


def polynomial_bound_check(alpha: float, beta: float, z_set=None, n_ladder=(64, 128, 256, 512, 1024), top: int = 2) -> AsymptoticsReport:
    """``C = max_z |n^-a P_n(1 - z^2/2n^2)| / (|z|^-a I_a(2|z|))`` per degree."""
    if not alpha > -1 or not beta > -1:
        raise DomainError("Jacobi parameters must exceed -1")
    z = np.linspace(0.0, 10.0, 101) if z_set is None else np.asarray(list(z_set), dtype=np.float64)
    if np.any(np.abs(z) > 10):
        raise DomainError("z_set must lie in |z| <= 10")
    ladder = _ladder(n_ladder)
    # |z|^-a I_a(2|z|) is the scaled I at argument 2|z|
    envelope = np.array([bessel_i_scaled(alpha, 2.0 * abs(float(v))) for v in z])
    consts = []
    for n in ladder:
        p = jacobi_p(n, alpha, beta, 1.0 - z**2 / (2.0 * n * n))
        consts.append(float(np.max(np.abs(n ** (-alpha) * p) / envelope)))
    sp = spread(consts, top)
    return AsymptoticsReport(
        "polynomial-bound", "|n^-a P_n(1 - z^2/2n^2)| <= C |z|^-a I_a(2|z|)", ladder,
        f"rung constants within {STABILITY:.0%} on the top {top} rungs", sp <= STABILITY,
        rung_constants=consts, empirical_constant=max(consts),
        extra={"alpha": alpha, "beta": beta, "spread": sp},
    )


def i_bound_check(alpha: float, z_set=None, tol: float = 1e-12) -> AsymptoticsReport:
    """``|I_a(z)| <= e^|z| (|z|/2)^a / Gamma(a+1)`` pointwise, as a strict inequality.

    Both sides are divided by ``(|z|/2)^a``; the constant reported is the
    largest ratio of left to right side.  ``tol`` only guards the ratio
    comparison against rounding when the two sides nearly touch.

    The inequality holds for ``alpha >= -1/2``.  Below that the ratio grows
    like ``z^(-alpha-1/2)`` and the check reports the violations it finds.
    """
    if not alpha > -1:
        raise DomainError(f"alpha must exceed -1, got {alpha}")
    z = np.linspace(0.05, 20.0, 400) if z_set is None else np.asarray(list(z_set), dtype=np.float64)
    if np.any(z <= 0) or np.any(z > 20):
        raise DomainError("z_set must lie in (0, 20]")
    lhs = np.array([bessel_i_scaled(alpha, float(v)) for v in z])
    rhs = np.exp(z) / gamma(alpha + 1.0)
    ratio = lhs / rhs
    violations = z[ratio >= 1.0 - tol].tolist()
    return AsymptoticsReport(
        "i-bound", "|I_a(z)| <= e^|z| (|z|/2)^a / Gamma(a+1)", [],
        "strict inequality at every z, constant 1", not violations,
        rung_constants=[], empirical_constant=float(np.max(ratio)),
        extra={"alpha": alpha, "n_points": int(z.size), "violations": violations},
    )


__all__ = [
    "AsymptoticsReport", "bessel_limit_check", "coefficient_bound_check", "coefficient_ratio",
    "growth_bound_check", "i_bound_check", "cosine_limit_check", "polynomial_bound_check", "spread",
]
