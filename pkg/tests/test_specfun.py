from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from jplab import specfun as sf
from jplab.errors import CapabilityError, DomainError, RangeError

# mpmath at 30 digits, frozen
J0_1 = 0.765197686557966551449717526103
J15_725 = -0.134649685681168756805738982391
Jm03_12 = 0.145437493368033327786398283331
I0_3 = 4.88079258586502408561123554602
I25_10 = 2028.51275739193566908355235941
Im04_07 = 1.23869018022079626892829442183
P7 = 0.0258358159879031878182066253273  # P_7^(0.3,-0.4)(0.35)
C12 = 0.449543985453496431853732486788  # C_12^(0.7)(0.45)
C40 = 143850139543776.067976829092019  # C_40^(1.5)(1.3)


def test_gamma_half_is_sqrt_pi():
    assert abs(sf.gamma(0.5) - math.sqrt(math.pi)) <= 1e-14


def test_gamma_poles_and_overflow():
    for x in (0.0, -1.0, -7.0):
        with pytest.raises(DomainError):
            sf.gamma(x)
    with pytest.raises(RangeError):
        sf.gamma(200.0)


@pytest.mark.parametrize("x", [0.3, 0.75, 1.5, 3.25, 7.0])
def test_duplication_points(x):
    assert sf.duplication_residual(x) <= 1e-11


@given(st.floats(0.05, 60.0))
def test_duplication_property(x):
    assert sf.duplication_residual(x) <= 1e-11


@pytest.mark.parametrize("x", [0.5, 1.7, -0.5, -2.3])
def test_gamma_product_matches_gamma(x):
    # product truncation error is about |x(1-x)|/(2K)
    K = 10**6
    rel = abs(sf.gamma_product(x, K) / sf.gamma(x) - 1)
    assert rel <= 1.01 * abs(x * (1 - x)) / (2 * K) + 1e-12


def test_gamma_ratio_limit():
    # log(Gamma(n+a)/Gamma(n+b)) + (b-a) log n -> 0
    errs = [abs(sf.log_gamma_ratio(0.3, 1.1, n) + (1.1 - 0.3) * math.log(n)) for n in (1e2, 1e4, 1e6)]
    assert errs[0] > errs[1] > errs[2] and errs[2] < 1e-6


def test_pochhammer():
    assert sf.pochhammer(2.5, 6) == pytest.approx(10557.421875, rel=1e-15)
    assert sf.pochhammer(0.5, -3) == pytest.approx(-0.533333333333333333, rel=1e-15)
    assert sf.pochhammer(-3.0, 5) == 0.0
    with pytest.raises(DomainError):
        sf.pochhammer(2.0, -3)
    with pytest.raises(DomainError):
        sf.pochhammer(1.0, 0.5)


@given(st.floats(0.1, 5.0), st.integers(0, 12))
def test_pochhammer_gamma_ratio(a, k):
    assert sf.pochhammer(a, k) == pytest.approx(sf.gamma(a + k) / sf.gamma(a), rel=1e-12)


def test_jacobi_frozen():
    assert sf.jacobi_p(7, 0.3, -0.4, 0.35) == pytest.approx(P7, rel=1e-13)
    assert sf.jacobi_p_series(7, 0.3, -0.4, 0.35) == pytest.approx(P7, rel=1e-14)


@given(st.integers(0, 40), st.floats(-0.9, 3.0), st.floats(-0.9, 3.0), st.floats(-1.0, 1.0))
def test_jacobi_recurrence_matches_series(n, a, b, x):
    exact = sf.jacobi_p_series(n, a, b, x)
    scale = max(1.0, abs(exact), abs(sf.jacobi_p(n, a, b, 1.0)))
    assert abs(sf.jacobi_p(n, a, b, x) - exact) <= 1e-11 * scale


def test_jacobi_errors():
    with pytest.raises(DomainError):
        sf.jacobi_p(3, -1.0, 0.0, 0.2)
    with pytest.raises(DomainError):
        sf.jacobi_p(-1, 0.0, 0.0, 0.2)
    with pytest.raises(CapabilityError):
        sf.jacobi_p_series(61, 0.0, 0.0, 0.2)


def test_gegenbauer_frozen():
    assert sf.gegenbauer_c(12, 0.7, 0.45) == pytest.approx(C12, rel=1e-13)
    assert sf.gegenbauer_c(40, 1.5, 1.3) == pytest.approx(C40, rel=1e-13)


@given(st.integers(0, 30), st.floats(0.05, 3.0), st.floats(-1.0, 1.0))
def test_gegenbauer_jacobi_relation(n, lam, x):
    # C_n^lam = (2 lam)_n / (lam + 1/2)_n P_n^(lam-1/2, lam-1/2)
    ref = sf.pochhammer(2 * lam, n) / sf.pochhammer(lam + 0.5, n) * sf.jacobi_p(n, lam - 0.5, lam - 0.5, x)
    assert abs(sf.gegenbauer_c(n, lam, x) - ref) <= 1e-11 * max(1.0, sf.gegenbauer_at_one(n, lam))


@given(st.integers(0, 300), st.floats(0.05, 3.0), st.floats(-1.0, 1.0))
def test_normalized_bounded_on_interval(n, lam, x):
    assert abs(sf.gegenbauer_norm(n, lam, x)) <= 1.0 + 1e-12


@given(st.integers(0, 300), st.floats(0.05, 3.0), st.floats(1.0, 3.0))
def test_normalized_at_least_one_beyond_one(n, lam, x):
    assert sf.gegenbauer_norm(n, lam, x) >= 1.0


def test_normalized_endpoint_exact():
    assert sf.gegenbauer_norm(500, 0.3, 1.0) == 1.0
    assert sf.gegenbauer_at_one(5, 0.5) == 1.0


@given(st.integers(1, 200), st.floats(0.1, 2.0), st.floats(1.0, 2.0))
def test_norm_log_matches_log_norm(n, lam, y):
    direct = sf.gegenbauer_norm(n, lam, y)
    assert sf.gegenbauer_norm_log(n, lam, y) == pytest.approx(math.log(direct), abs=1e-12 * max(1.0, math.log(direct)))


def test_norm_log_extreme_degree():
    vals = sf.gegenbauer_norm_log(512, 0.5, np.array([1.0, 1.5, 7.0]))
    assert vals[0] == 0.0
    assert np.all(np.diff(vals) > 0) and np.all(np.isfinite(vals))
    with pytest.raises(RangeError):
        sf.gegenbauer_norm(2048, 0.5, 7.0)
    with pytest.raises(DomainError):
        sf.gegenbauer_norm_log(4, 0.5, 0.5)


@pytest.mark.parametrize("beta", [-0.25, 0.0, 0.25, 0.75])
def test_quadratic_transform(beta):
    for n in range(31):
        for x in np.linspace(-1, 1, 11):
            assert sf.quadratic_transform_residual(n, beta, x) <= 1e-9


def test_quadratic_transform_domain():
    with pytest.raises(DomainError):
        sf.quadratic_transform_residual(3, -0.5, 0.2)
    with pytest.raises(DomainError):
        sf.quadratic_transform_residual(3, 0.0, 1.5)
    with pytest.raises(CapabilityError):
        sf.quadratic_transform_residual(31, 0.0, 0.2)


def test_bessel_frozen():
    assert sf.bessel_j(0, 1.0) == pytest.approx(J0_1, rel=1e-14)
    assert sf.bessel_j(1.5, 7.25) == pytest.approx(J15_725, rel=1e-12)
    assert sf.bessel_j(-0.3, 12.0) == pytest.approx(Jm03_12, rel=1e-12)
    assert sf.bessel_i(0, 3.0) == pytest.approx(I0_3, rel=1e-14)
    assert sf.bessel_i(2.5, 10.0) == pytest.approx(I25_10, rel=1e-14)
    assert sf.bessel_i(-0.4, 0.7) == pytest.approx(Im04_07, rel=1e-14)


def test_cos_relation_to_twenty():
    z = np.linspace(0.05, 20.0, 400)
    err = max(abs(math.cos(v) - math.sqrt(math.pi * v / 2) * sf.bessel_j(-0.5, v)) for v in z)
    assert err <= 1e-10


@given(st.floats(-0.9, 4.0), st.floats(0.0, 30.0))
def test_scaled_forms_consistent(alpha, x):
    if x > 0:
        assert sf.bessel_j_scaled(alpha, x) * (x / 2) ** alpha == pytest.approx(sf.bessel_j(alpha, x), rel=1e-9, abs=1e-14)
        assert sf.bessel_i_scaled(alpha, x) * (x / 2) ** alpha == pytest.approx(sf.bessel_i(alpha, x), rel=1e-12)
    else:
        assert sf.bessel_j_scaled(alpha, 0.0) == pytest.approx(1 / sf.gamma(alpha + 1))


def test_bessel_guards():
    with pytest.raises(CapabilityError):
        sf.bessel_j(0, 61.0)
    with pytest.raises(DomainError):
        sf.bessel_i(-1.0, 1.0)
    with pytest.raises(DomainError):
        sf.bessel_j(0.5, -1.0)
    assert sf.bessel_j(2, -1.0) == pytest.approx(sf.bessel_j(2, 1.0))
    assert sf.bessel_j(0.5, 0.0) == 0.0


def test_poly_eval_validation():
    with pytest.raises(DomainError):
        sf.PolyEval(n=-1, x=0.0)
    with pytest.raises(DomainError):
        sf.PolyEval(n=2, x=0.0, lam=0.0)
