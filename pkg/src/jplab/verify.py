"""Self-contained verification suites, one per module.

Each check yields a flat row ``{suite, check_id, statement, value, contract, pass}``.
Reference numbers below were fixed beforehand by independent high-precision
computation (mpmath summation of the kernel series, Euler-Maclaurin zeta on
the critical line) and are not produced by this package.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import asymptotics, jensen, kernels, specfun, transform
from .characters import character, enumerate_fundamental_discriminants, functional_equation_residual

PHI_0 = 1.78688
PHI_1 = 5.51e-7
XI_0 = 0.4971208
XI_ZEROS = (14.134725, 21.022040, 25.010858)


@dataclass
class Check:
    suite: str
    check_id: str
    statement: str
    value: float
    contract: str
    passed: bool

    def row(self) -> dict:
        return {
            "suite": self.suite, "check_id": self.check_id, "statement": self.statement,
            "value": self.value, "contract": self.contract, "pass": bool(self.passed),
        }


def _le(suite, cid, stmt, value, bound):
    return Check(suite, cid, stmt, float(value), f"<= {bound:g}", bool(value <= bound))


def suite_specfun() -> list[Check]:
    s = "specfun"
    pts = [0.3, 0.75, 1.5, 3.25, 7.0]
    dup = max(specfun.duplication_residual(x) for x in pts)
    quad = max(
        specfun.quadratic_transform_residual(n, b, x)
        for n in range(31) for b in (-0.25, 0.0, 0.25, 0.75) for x in np.linspace(-1, 1, 21)
    )
    z = np.linspace(0.05, 20.0, 400)
    cos_rel = max(abs(math.cos(v) - math.sqrt(math.pi * v / 2) * specfun.bessel_j(-0.5, v)) for v in z)
    x = np.round(np.arange(1.0, 3.0 + 1e-9, 0.05), 12)
    violations = sum(
        int(np.sum(specfun.gegenbauer_norm(n, lam, x) < 1.0))
        for n in range(201) for lam in (0.3, 0.5, 1.0)
    )
    return [
        _le(s, "duplication", "Gamma(2z) Gamma(1/2) = 2^(2z-1) Gamma(z) Gamma(z+1/2), relative", dup, 1e-11),
        _le(s, "gamma-half", "Gamma(1/2) = sqrt(pi)", abs(specfun.gamma(0.5) - math.sqrt(math.pi)), 1e-14),
        _le(s, "quadratic-transform", "C_2n^(b+1/2)(x) = K P_n^(-1/2,b)(1-2x^2), n <= 30", quad, 1e-9),
        _le(s, "cos-relation", "cos z = sqrt(pi z/2) J_(-1/2)(z) on (0, 20]", cos_rel, 1e-10),
        Check(s, "normalized-at-least-one", "c_n^(lam)(x) >= 1 for x in [1, 3], n <= 200",
              float(violations), "== 0 violations", violations == 0),
    ]


def suite_characters() -> list[Check]:
    worst = max(
        functional_equation_residual(character(d), x)
        for d in enumerate_fundamental_discriminants(24) for x in (0.3, 0.5, 1.0, 2.0, 3.0)
    )
    return [_le("characters", "theta-inversion", "theta(chi, x) = x^(-1/2-a) theta(chi, 1/x), |d| <= 24", worst, 1e-10)]


def suite_kernels() -> list[Check]:
    s = "kernels"
    R = kernels.RIEMANN
    t = np.linspace(0.0, 2.0, 201)
    scan = kernels.positivity_scan(R, 3.0, 0.01)
    even_chars = max(
        float(np.max(kernels.evenness_residual(kernels.character_kernel(d), t)))
        for d in enumerate_fundamental_discriminants(24)
    )
    return [
        _le(s, "phi-at-0", "Phi(0) against reference 1.78688", abs(kernels.phi(R, 0.0) - PHI_0), 1e-4),
        _le(s, "phi-at-1", "Phi(1) against reference 5.51e-7", abs(kernels.phi(R, 1.0) - PHI_1), 1e-9),
        _le(s, "evenness", "|Phi(t) - Phi(-t)| on [0, 2]", float(np.max(kernels.evenness_residual(R, t))), 1e-12),
        Check(s, "positivity", "min of Phi on [0, 3] step 0.01 is positive (sign in log space)",
              float(scan.min_sign), "sign == +1", scan.positive),
        _le(s, "character-evenness", "|Phi(t,chi) - Phi(-t,chi)| on [0, 2], |d| <= 24", even_chars, 1e-10),
    ]


def suite_transform() -> list[Check]:
    s = "transform"
    xi0 = transform.xi_riemann(0.0)
    even = max(abs(transform.cosine_transform(kernels.RIEMANN, z) - transform.cosine_transform(kernels.RIEMANN, -z))
               for z in (0.5, 3.0, 14.0))
    roots = [b.refined_root for b in transform.find_real_zeros(kernels.RIEMANN, 30.0)]
    root_err = max(abs(a - b) for a, b in zip(roots, XI_ZEROS)) if len(roots) == 3 else math.inf
    return [
        _le(s, "xi-at-0", "Xi(0) against reference 0.4971208", abs(xi0 - XI_0), 1e-6),
        _le(s, "xi-evenness", "|Xi(z) - Xi(-z)|", even, 1e-12),
        Check(s, "zero-count", "real zeros of Xi on [0, 30]", float(len(roots)), "== 3", len(roots) == 3),
        _le(s, "zero-location", "max distance to reference zeros", root_err, 1e-6),
    ]


def suite_jensen() -> list[Check]:
    s = "jensen"
    R = kernels.RIEMANN
    d_dr = d_ro = 0.0
    for n in (0, 1, 2):
        for x in (0.0, 1.0, 5.0, 14.13):
            rep = jensen.jensen_routes(R, x, n)
            d_dr = max(d_dr, abs(rep.f_direct - rep.f_reduced))
            d_ro = max(d_ro, abs(rep.f_reduced - rep.f_oracle))
    f00 = jensen.f_n_reduced(R, 0.0, 0)
    sweep = jensen.positivity_certificate(R, 3, np.arange(0.0, 30.0 + 1e-9, 0.5))
    fmin = min(r.min_over_grid for r in sweep)
    ladder = jensen.surrogate_ladder(R, 1.0, 1, 0.0, (16, 32, 64, 128))
    split = max(r.split_residual for r in ladder)
    i2_gap = min(float(r.I2 - r.I2_lower_bound) for r in ladder)
    slope = ladder[0].fitted_slope
    mslope = ladder[0].majorant_slope
    n0 = ladder[0].N0_empirical
    return [
        _le(s, "direct-vs-reduced", "|f_direct - f_reduced|, n <= 2", d_dr, 1e-6),
        _le(s, "reduced-vs-oracle", "|f_reduced - f_oracle|, n <= 2", d_ro, 1e-5),
        _le(s, "f0-at-0", "f_0(0) against 4 Xi(0)^2 = 0.98852", abs(f00 - 0.98852), 1e-5),
        Check(s, "positivity-sweep", "min f_n(x), n <= 3, x in [0, 30] step 0.5", fmin, ">= -1e-08", fmin >= -1e-8),
        _le(s, "surrogate-split", "g_N = I1 + I2 (relative), N in 16..128", split, 1e-8),
        Check(s, "surrogate-i2-bound", "I2 minus its lower bound int h_n over u > 1/x", i2_gap, ">= -1e-08", i2_gap >= -1e-8),
        Check(s, "surrogate-i1-slope", "log-log slope of |I1| over N in 16..128 (NaN if unresolved)",
              slope, "in [-0.65, -0.35]", bool(abs(slope + 0.5) <= 0.15)),
        Check(s, "surrogate-majorant-slope", "log-log slope of the |I1| majorant", mslope,
              "in [-0.65, -0.35]", bool(abs(mslope + 0.5) <= 0.15)),
        Check(s, "surrogate-n0", "smallest N with g_N > 0 for all larger tested N",
              math.nan if n0 is None else float(n0), "exists", n0 is not None),
    ]


def suite_asymptotics() -> list[Check]:
    s = "asymptotics"
    limit, bound = asymptotics.cosine_limit_check(0.0)
    checks = [
        Check(s, "cosine-limit", limit.statement, limit.sup_residual[2],
              "decreasing along 64..512 and < 0.02 at n=256",
              limit.passed and limit.sup_residual[2] < 0.02),
        Check(s, bound.check_id, bound.statement, bound.empirical_constant, bound.contract, bound.passed),
    ]
    for rep in (
        asymptotics.bessel_limit_check(-0.5, 0.0),
        asymptotics.growth_bound_check(0.5),
        asymptotics.growth_bound_check(0.5, normalized=True),
        asymptotics.coefficient_bound_check(-0.5, 0.0),
        asymptotics.polynomial_bound_check(-0.5, 0.0),
    ):
        value = rep.sup_residual[-1] if rep.sup_residual else rep.empirical_constant
        checks.append(Check(s, rep.check_id, rep.statement, value, rep.contract, rep.passed))
    worst = 0.0
    ok = True
    for a in (-0.4, 0.0, 0.5, 2.0):
        rep = asymptotics.i_bound_check(a)
        worst = max(worst, rep.empirical_constant)
        ok = ok and rep.passed
    checks.append(Check(s, "i-bound", "|I_a(z)| <= e^|z| (|z|/2)^a / Gamma(a+1), largest ratio", worst, "< 1", ok))
    return checks


SUITES = {
    "specfun": suite_specfun,
    "characters": suite_characters,
    "kernels": suite_kernels,
    "transform": suite_transform,
    "jensen": suite_jensen,
    "asymptotics": suite_asymptotics,
}


def run_all(names=None) -> list[Check]:
    out: list[Check] = []
    for name in names or SUITES:
        out.extend(SUITES[name]())
    return out
