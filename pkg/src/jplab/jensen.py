"""Jensen's positivity functionals and the ultraspherical surrogate.

For an even kernel ``Psi`` with ``F(x) = 2 int_0^inf Psi(t) cos(x t) dt``

    f_n(x) = int int Psi(s) Psi(t) cos((s+t) x) (s-t)^{2n} ds dt

is computed three ways:

* ``f_n_direct``  -- tensor Gauss quadrature of the double integral;
* ``f_n_reduced`` -- after ``u = s+t, v = s-t``: ``2 int_0^inf cos(u x) h_n(u) du``
  with ``h_n(u) = int_0^inf Psi((u+v)/2) Psi((u-v)/2) v^{2n} dv``;
* ``f_n_oracle``  -- binomial expansion in derivatives of ``F``.

The surrogate replaces ``cos(u x)`` by ``c_{4N}^{(beta+1/2)}(u x)`` and splits
the ``u`` range at ``1/x`` into ``I1`` (oscillatory part, integrated in
``theta`` with ``u x = cos theta``) and ``I2`` (growing part, integrated in
``phi`` with ``u x = cosh phi``).  ``I2`` easily exceeds the double range, so
it is accumulated in log space and returned as an ``mpmath.mpf``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath
import numpy as np

from . import _hot
from .errors import AccuracyError, CapabilityError, DomainError
from .kernels import KernelDescriptor, log_abs_phi, phi
from .quadrature import composite, gauss_legendre, graded_breaks, panel_rule, uniform_breaks
from .specfun import gamma, gegenbauer_c, gegenbauer_norm, gegenbauer_norm_log
from .transform import QuadratureSpec, default_truncation, moment_transform

JENSEN_SPEC = QuadratureSpec(tolerance=1e-9)
INNER_PANELS = 64
_COARSE = 257
_CUTOFF_DROP = 80.0
_CHUNK = 1 << 21


# ---------------------------------------------------------------- h_n(u)


@lru_cache(maxsize=8)
def _reference_rule(panels: int, order: int):
    return panel_rule(np.linspace(0.0, 1.0, panels + 1), order)


def _log_integrand(desc, u, v, n):
    la, sa = log_abs_phi(desc, 0.5 * (u + v))
    lb, sb = log_abs_phi(desc, 0.5 * (u - v))
    ell = la + lb
    if n:
        with np.errstate(divide="ignore"):
            ell = ell + 2 * n * np.log(v)
    return ell, sa * sb


def log_h(desc: KernelDescriptor, u, n: int, panels: int = INNER_PANELS, order: int = 16):
    """``(log|h_n(u)|, sign h_n(u))`` for an array of ``u >= 0``.

    For each ``u`` the ``v`` range is cut where the integrand has dropped 80
    e-folds below its peak on a coarse probe of ``[0, u + 2T]``; the cut
    range then gets ``panels`` Gauss panels.
    """
    u = np.atleast_1d(np.asarray(u, dtype=np.float64))
    T = default_truncation(desc)
    ref_x, ref_w = _reference_rule(panels, order)
    probe = np.linspace(0.0, 1.0, _COARSE)
    out_l = np.empty(u.size)
    out_s = np.empty(u.size)
    rows = max(1, _CHUNK // (ref_x.size + _COARSE))
    for lo in range(0, u.size, rows):
        uc = u[lo:lo + rows, None]
        span = uc + 2.0 * T
        vc = span * probe[None, :]
        ell_c, _ = _log_integrand(desc, uc, vc, n)
        peak = np.max(ell_c, axis=1, keepdims=True)
        alive = ell_c >= peak - _CUTOFF_DROP
        last = _COARSE - 1 - np.argmax(alive[:, ::-1], axis=1)
        V = span[:, 0] * probe[np.minimum(last + 1, _COARSE - 1)]
        v = V[:, None] * ref_x[None, :]
        ell, sgn = _log_integrand(desc, uc, v, n)
        top = np.max(ell, axis=1, keepdims=True)
        acc = np.sum(ref_w[None, :] * sgn * np.exp(ell - top), axis=1) * V
        with np.errstate(divide="ignore"):
            out_l[lo:lo + rows] = top[:, 0] + np.log(np.abs(acc))
        out_s[lo:lo + rows] = np.sign(acc)
    return out_l, out_s


def h_values(desc: KernelDescriptor, u, n: int, panels: int = INNER_PANELS) -> np.ndarray:
    logabs, sign = log_h(desc, u, n, panels)
    with np.errstate(under="ignore"):
        return sign * np.exp(logabs)


def _check_n(n, limit):
    if int(n) != n or n < 0:
        raise DomainError(f"moment order must be a nonnegative integer, got {n}")
    if n > limit:
        raise CapabilityError(f"moment order limited to n <= {limit}, got {n}")
    return int(n)


def convolution_moment(desc: KernelDescriptor, u: float, n: int, spec: QuadratureSpec = JENSEN_SPEC) -> float:
    """``h_n(u)`` with inner panel doubling until successive values agree to ``tolerance/4``."""
    n = _check_n(n, 6)
    if u < 0:
        raise DomainError("convolution_moment needs u >= 0")
    panels = 32
    prev = float(h_values(desc, [u], n, panels)[0])
    diff = math.inf
    for _ in range(spec.max_halvings):
        panels *= 2
        cur = float(h_values(desc, [u], n, panels)[0])
        diff = abs(cur - prev)
        if diff < spec.tolerance / 4:
            return cur
        prev = cur
    raise AccuracyError(f"h_{n}({u}) did not converge", prev, diff)


# ------------------------------------------------------------ f_n routes


@lru_cache(maxsize=64)
def _h_table(desc: KernelDescriptor, n: int, width: float, order: int):
    U = 2.0 * default_truncation(desc)
    nodes, weights = composite(0.0, U, width, order)
    return nodes, weights, h_values(desc, nodes, n)


def _reduced_sum(desc, xs, n, width, order):
    nodes, weights, h = _h_table(desc, n, width, order)
    wh = weights * h
    return 2.0 * np.cos(np.outer(xs, nodes)) @ wh


def f_n_reduced_grid(desc: KernelDescriptor, xs, n: int, spec: QuadratureSpec = JENSEN_SPEC):
    """``f_n`` on a grid of ``x`` via the reduced single integral.

    Returns ``(values, err_estimate)`` from one panel halving.
    """
    n = _check_n(n, 6)
    xs = np.abs(np.atleast_1d(np.asarray(xs, dtype=np.float64)))
    if xs.size == 0:
        return np.empty(0), 0.0
    width = spec.panel_width(float(np.max(xs)))
    coarse = _reduced_sum(desc, xs, n, width, spec.gauss_order)
    fine = _reduced_sum(desc, xs, n, width / 2, spec.gauss_order)
    err = float(np.max(np.abs(fine - coarse)))
    if err >= spec.tolerance / 4:
        raise AccuracyError(f"f_{n} reduced route did not converge", float(fine[0]), err)
    return fine, err


def f_n_reduced(desc: KernelDescriptor, x: float, n: int, spec: QuadratureSpec = JENSEN_SPEC) -> float:
    """``2 int_0^inf cos(u x) h_n(u) du``; even in ``x`` by construction."""
    vals, _ = f_n_reduced_grid(desc, [abs(float(x))], n, spec)
    return float(vals[0])


def _direct_sum(desc, x, n, width, order):
    T = default_truncation(desc)
    nodes, weights = composite(-T, T, width, order)
    W = weights * phi(desc, nodes)
    return _hot.double_cos_moment(nodes, W, float(x), int(n))


def f_n_direct(desc: KernelDescriptor, x: float, n: int, spec: QuadratureSpec = JENSEN_SPEC, psi=None) -> float:
    """Tensor-product Gauss quadrature of the double integral over ``[-T, T]^2``.

    ``psi`` may replace the kernel by any callable on arrays (used for stubs).
    """
    n = _check_n(n, 4)
    width = spec.panel_width(float(x))
    if psi is not None:
        T = default_truncation(desc)

        def run(w):
            nodes, weights = composite(-T, T, w, spec.gauss_order)
            return _hot.double_cos_moment(nodes, weights * psi(nodes), float(x), n)
    else:
        def run(w):
            return _direct_sum(desc, x, n, w, spec.gauss_order)

    coarse, fine = run(width), run(width / 2)
    if abs(fine - coarse) >= spec.tolerance / 4:
        raise AccuracyError(f"f_{n} direct route did not converge at x={x}", fine, abs(fine - coarse))
    return float(fine)


def f_n_oracle(desc: KernelDescriptor, x: float, n: int, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """``(-1)^n sum_k (-1)^k C(2n, k) F^(k)(x) F^(2n-k)(x)``."""
    n = _check_n(n, 4)
    derivs = [moment_transform(desc, x, k, spec) for k in range(2 * n + 1)]
    total = math.fsum((-1) ** k * math.comb(2 * n, k) * derivs[k] * derivs[2 * n - k] for k in range(2 * n + 1))
    return (-1) ** n * total


@dataclass
class JensenReport:
    kernel: str
    n: int
    x: float | None = None
    f_direct: float | None = None
    f_reduced: float | None = None
    f_oracle: float | None = None
    min_over_grid: float | None = None
    argmin: float | None = None
    grid: list[float] = field(default_factory=list)
    values: list[float] = field(default_factory=list)
    flagged: list[float] = field(default_factory=list)


def jensen_routes(desc: KernelDescriptor, x: float, n: int, spec: QuadratureSpec = JENSEN_SPEC) -> JensenReport:
    """All three routes at one ``(n, x)``."""
    return JensenReport(
        desc.label, int(n), float(x),
        f_direct=f_n_direct(desc, x, n, spec),
        f_reduced=f_n_reduced(desc, x, n, spec),
        f_oracle=f_n_oracle(desc, x, n),
    )


def positivity_certificate(desc: KernelDescriptor, n_max: int, x_grid, spec: QuadratureSpec = JENSEN_SPEC):
    """Per ``n <= n_max``: ``f_n`` over the grid, its minimum, and points below ``-10 tol``."""
    n_max = _check_n(n_max, 4)
    xs = np.asarray(list(x_grid), dtype=np.float64)
    if xs.size == 0:
        return []
    reports = []
    for n in range(n_max + 1):
        vals, _ = f_n_reduced_grid(desc, xs, n, spec)
        i = int(np.argmin(vals))
        flagged = xs[vals < -10 * spec.tolerance].tolist()
        reports.append(JensenReport(
            desc.label, n, min_over_grid=float(vals[i]), argmin=float(xs[i]),
            grid=xs.tolist(), values=vals.tolist(), flagged=flagged,
        ))
    return reports


# ------------------------------------------------------------ surrogate


@dataclass
class SurrogateReport:
    """One rung of the surrogate ladder.

    ``I2`` and ``g_N`` are ``mpmath.mpf`` since they overflow doubles for
    large ``N``.  ``g_N`` comes from a single ``u`` integral on a graded mesh,
    independent of the ``theta``/``phi`` substitutions behind ``I1``/``I2``.
    ``I1_noise_floor`` is ``eps sqrt(K) sum |terms|`` over the ``K`` nodes of
    the ``I1`` sum; below it the computed ``I1`` is rounding noise, which
    itself scales like the majorant.  ``fitted_slope`` is the log-log slope
    of ``|I1|`` over the ladder, left NaN unless every rung is resolved
    (above both the halving error estimate and the noise floor).  ``raw_slope`` is the fit regardless;
    ``majorant_slope`` the same for the ``a(x)/x int |c sin|`` majorant.
    """

    kernel: str
    beta: float
    N: int
    x: float
    n: int
    I1: float
    I1_err: float
    I1_noise_floor: float
    I2: object
    g_N: object
    I2_lower_bound: float
    split_residual: float
    a_sup: float
    I1_majorant: float
    fitted_slope: float = math.nan
    raw_slope: float = math.nan
    majorant_slope: float = math.nan
    N0_empirical: int | None = None
    ladder: list[int] = field(default_factory=list)

    @property
    def I1_resolved(self) -> bool:
        return abs(self.I1) > max(self.I1_err, self.I1_noise_floor)

    @property
    def I2_bound_holds(self) -> bool:
        return self.I2 >= self.I2_lower_bound


def _mpf_from_log(logscale: float, scaled: float):
    return mpmath.mpf(scaled) * mpmath.exp(logscale)


def _log_sum(ell, sgn, weights):
    top = float(np.max(ell))
    if not np.isfinite(top):
        return 0.0, 0.0
    return top, float(np.sum(weights * sgn * np.exp(ell - top)))


def _theta_nodes(width, order):
    return composite(0.0, 0.5 * math.pi, width, order)


def _surrogate_I1(desc, x, n, lam, degrees, width, order):
    theta, w = _theta_nodes(width, order)
    H = h_values(desc, np.cos(theta) / x, n)
    sinw = w * np.sin(theta) / x
    vals, majors, floors = [], [], []
    noise = np.finfo(np.float64).eps * math.sqrt(theta.size)
    for m in degrees:
        c = gegenbauer_norm(m, lam, np.cos(theta))
        terms = sinw * c * H
        vals.append(math.fsum(terms))
        majors.append(float(np.dot(sinw, np.abs(c))))
        floors.append(noise * float(np.sum(np.abs(terms))))
    return np.array(vals), np.array(majors), float(np.max(np.abs(H))), np.array(floors)


def _u_extent(desc, x, n, lam, m_top):
    """Upper ``u`` beyond which the largest-degree growing integrand is negligible."""
    u = 1.0 / x + np.arange(0.0, 12.0, 0.05)
    lh, _ = log_h(desc, u, n)
    ell = gegenbauer_norm_log(m_top, lam, u * x) + lh
    top = int(np.argmax(ell))
    beyond = np.nonzero(ell[top:] < ell[top] - 60.0)[0]
    return float(u[top + beyond[0]]) if beyond.size else float(u[-1])


def _surrogate_I2(desc, x, n, lam, degrees, u_max, width, order):
    phi_max = math.acosh(u_max * x)
    ph, w = composite(0.0, phi_max, width, order)
    y = np.cosh(ph)
    lh, sh = log_h(desc, y / x, n)
    with np.errstate(divide="ignore"):
        base = lh + np.log(np.sinh(ph)) - math.log(x)
    out = []
    for m in degrees:
        ell = base + gegenbauer_norm_log(m, lam, y)
        out.append(_log_sum(ell, sh, w))
    return out


def _lower_bound(desc, x, n, u_max, order):
    nodes, w = composite(1.0 / x, u_max, 0.05, order)
    return float(np.dot(w, h_values(desc, nodes, n)))


def _direct_g(desc, x, n, lam, m, u_max, pphp, order):
    edge = 1.0 / x
    inner = uniform_breaks(0.0, edge, min(0.02, math.pi / (pphp * m)) / x)
    outer = uniform_breaks(edge, u_max, 0.02)
    grade = graded_breaks(edge - 0.02, edge + 0.02, 0.02, edge, 0.25 / (x * m * m))
    breaks = np.unique(np.concatenate([inner, outer, grade]))
    nodes, w = panel_rule(breaks, order)
    lh, sh = log_h(desc, nodes, n)
    y = nodes * x
    below = y < 1.0
    lc = np.empty_like(y)
    sc = np.ones_like(y)
    c_in = gegenbauer_norm(m, lam, y[below])
    with np.errstate(divide="ignore"):
        lc[below] = np.log(np.abs(c_in))
    sc[below] = np.sign(c_in)
    lc[~below] = gegenbauer_norm_log(m, lam, y[~below])
    return _log_sum(lc + lh, sc * sh, w)


def _slope(N, values):
    vals = np.abs(np.asarray(values, dtype=np.float64))
    if np.any(vals == 0) or not np.all(np.isfinite(vals)):
        return math.nan
    return float(np.polyfit(np.log(np.asarray(N, dtype=np.float64)), np.log(vals), 1)[0])


def surrogate_ladder(
    desc: KernelDescriptor,
    x: float,
    n: int,
    beta: float = 0.0,
    ladder=(16, 32, 64, 128),
    spec: QuadratureSpec = JENSEN_SPEC,
) -> list[SurrogateReport]:
    """Surrogate reports for each ``N`` of the ladder, sharing slope and ``N0`` diagnostics."""
    n = _check_n(n, 6)
    if not x > 0:
        raise DomainError("surrogate needs x > 0")
    if not -0.5 < beta < 0.5:
        raise DomainError(f"beta must lie in (-1/2, 1/2), got {beta}")
    ladder = sorted({int(N) for N in ladder})
    if not ladder or ladder[0] < 1 or ladder[-1] > 512:
        raise DomainError("ladder entries must lie in [1, 512]")
    lam = beta + 0.5
    degrees = [4 * N for N in ladder]
    pphp, order = spec.panels_per_halfperiod, spec.gauss_order

    width = min(0.05, math.pi / (pphp * degrees[-1]))
    I1_c, _, _, _ = _surrogate_I1(desc, x, n, lam, degrees, width, order)
    I1, major, a_sup, floor = _surrogate_I1(desc, x, n, lam, degrees, width / 2, order)
    I1_err = np.abs(I1 - I1_c)

    u_max = _u_extent(desc, x, n, lam, degrees[-1])
    I2_parts = _surrogate_I2(desc, x, n, lam, degrees, u_max, 0.01, order)
    lower = _lower_bound(desc, x, n, u_max, order)

    reports = []
    for i, (N, m) in enumerate(zip(ladder, degrees)):
        I2 = _mpf_from_log(*I2_parts[i])
        g = _mpf_from_log(*_direct_g(desc, x, n, lam, m, u_max, pphp, order))
        split = abs(g - (I1[i] + I2)) / max(mpmath.mpf(1), abs(g))
        reports.append(SurrogateReport(
            desc.label, float(beta), N, float(x), n,
            I1=float(I1[i]), I1_err=float(I1_err[i]), I1_noise_floor=float(floor[i]), I2=I2, g_N=g,
            I2_lower_bound=lower, split_residual=float(split),
            a_sup=a_sup, I1_majorant=a_sup * float(major[i]), ladder=list(ladder),
        ))
    raw = _slope(ladder, [r.I1 for r in reports])
    resolved = all(r.I1_resolved for r in reports)
    fitted = raw if resolved else math.nan
    major_slope = _slope(ladder, [r.I1_majorant for r in reports])
    N0 = None
    for i in range(len(reports) - 1, -1, -1):
        r = reports[i]
        if abs(r.I1) <= 0.5 * r.I2_lower_bound and r.g_N > 0:
            N0 = r.N
        else:
            break
    for r in reports:
        r.fitted_slope, r.raw_slope, r.majorant_slope, r.N0_empirical = fitted, raw, major_slope, N0
    return reports


def surrogate_gN(
    desc: KernelDescriptor,
    x: float,
    n: int,
    beta: float = 0.0,
    N: int = 64,
    spec: QuadratureSpec = JENSEN_SPEC,
    ladder=(16, 32, 64, 128),
) -> SurrogateReport:
    """The report for one ``N``; slope and ``N0`` come from ``ladder`` plus ``N``."""
    rungs = sorted(set(ladder) | {int(N)})
    for r in surrogate_ladder(desc, x, n, beta, rungs, spec):
        if r.N == N:
            return r
    raise AssertionError("unreachable")  # pragma: no cover


def surrogate_scaled(
    desc: KernelDescriptor,
    x: float,
    n: int,
    beta: float = 0.0,
    N: int = 64,
    spec: QuadratureSpec = JENSEN_SPEC,
) -> float:
    """Scaled-argument variant ``Gamma(beta+1/2) (2N)^(1/2-beta) int C_{4N}(u x/(4N)) h_n(u) du``.

    As ``N`` grows this tends to ``int_0^inf cos(u x) h_n(u) du = f_n(x) / 2``.
    """
    n = _check_n(n, 6)
    if not -0.5 < beta < 0.5:
        raise DomainError(f"beta must lie in (-1/2, 1/2), got {beta}")
    lam = beta + 0.5
    m = 4 * int(N)
    nodes, weights, h = _h_table(desc, n, spec.panel_width(x) / 2, spec.gauss_order)
    c = gegenbauer_c(m, lam, nodes * x / m)
    return gamma(lam) * (2.0 * N) ** (0.5 - beta) * float(np.dot(weights * h, c))


__all__ = [
    "JensenReport", "SurrogateReport", "convolution_moment", "f_n_direct", "f_n_oracle",
    "f_n_reduced", "f_n_reduced_grid", "h_values", "jensen_routes", "log_h",
    "positivity_certificate", "surrogate_gN", "surrogate_ladder", "surrogate_scaled",
]
