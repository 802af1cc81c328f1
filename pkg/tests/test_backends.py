"""The numba loops and the numpy fallbacks must agree."""
from __future__ import annotations

import json
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from jplab import _hot
from jplab._accel import BACKEND, HAVE_NUMBA

arrays = st.lists(st.floats(-1.0, 1.0), min_size=1, max_size=30).map(np.array)


@given(st.integers(0, 300), st.floats(0.05, 3.0), arrays)
def test_gegenbauer_parity(n, lam, x):
    np.testing.assert_array_equal(_hot.gegenbauer_norm_loop(n, lam, x), _hot.gegenbauer_norm_vec(n, lam, x))
    np.testing.assert_array_equal(_hot.gegenbauer_c_loop(n, lam, x), _hot.gegenbauer_c_vec(n, lam, x))


@given(st.integers(0, 600), st.floats(0.05, 3.0), st.lists(st.floats(1.0, 8.0), min_size=1, max_size=20).map(np.array))
def test_gegenbauer_log_parity(n, lam, y):
    np.testing.assert_allclose(_hot.gegenbauer_norm_log_loop(n, lam, y), _hot.gegenbauer_norm_log_vec(n, lam, y), rtol=1e-14)


@given(st.integers(0, 300), st.floats(-0.9, 3.0), st.floats(-0.9, 3.0), arrays)
def test_jacobi_parity(n, a, b, x):
    np.testing.assert_array_equal(_hot.jacobi_loop(n, a, b, x), _hot.jacobi_vec(n, a, b, x))


@given(st.lists(st.floats(-1.0, 4.0), min_size=1, max_size=40).map(np.array))
def test_riemann_sum_parity(t):
    s1, n1, r1 = _hot.riemann_shifted_sum_loop(t, 1e-18)
    s2, n2, r2 = _hot.riemann_shifted_sum_vec(t, 1e-18)
    # at negative t the terms cancel and the two summation orders differ in the last digits
    np.testing.assert_allclose(s1, s2, rtol=1e-14 if np.all(t >= 0) else 1e-10)


@pytest.mark.parametrize("d", [-4, 5, -19, 24])
def test_theta_sum_parity(d):
    from jplab.characters import character

    chi = character(d)
    a = np.pi * np.exp(2 * np.linspace(-1.5, 2.0, 60)) / chi.modulus
    s1, _, _ = _hot.theta_shifted_sum_loop(chi.table, chi.parity_a == 1, a, 1e-18)
    s2, _, _ = _hot.theta_shifted_sum_vec(chi.table, chi.parity_a == 1, a, 1e-18)
    # small a means many cancelling terms; summation order shows in the last digits
    np.testing.assert_allclose(s1, s2, rtol=1e-10, atol=1e-300)


@pytest.mark.parametrize("n", [0, 2, 4])
def test_double_sum_parity(n):
    s = np.linspace(-2.5, 2.5, 700)
    w = np.exp(-s * s) * (1 + 0.1 * np.sin(7 * s))
    a = _hot.double_cos_moment_loop(s, w, 3.3, n)
    b = _hot.double_cos_moment_vec(s, w, 3.3, n)
    assert a == pytest.approx(b, rel=1e-12)


def test_backend_reflects_environment():
    assert BACKEND == ("numba" if HAVE_NUMBA and os.environ.get("JPL_BACKEND", "") != "numpy"
                       and not os.environ.get("JPL_DISABLE_NUMBA") else "numpy")


@pytest.mark.parametrize("env", [{"JPL_BACKEND": "numpy"}, {"JPL_DISABLE_NUMBA": "1"}])
def test_numpy_backend_subprocess(env):
    code = (
        "import json; from jplab import BACKEND; from jplab.kernels import RIEMANN, phi;"
        "from jplab.transform import xi_riemann;"
        "print(json.dumps([BACKEND, phi(RIEMANN, 0.0), xi_riemann(0.0)]))"
    )
    out = subprocess.run([sys.executable, "-c", code], env={**os.environ, **env}, capture_output=True, text=True, check=True)
    backend, phi0, xi0 = json.loads(out.stdout)
    assert backend == "numpy"
    assert phi0 == pytest.approx(1.7867876018684937763, rel=1e-14)
    assert xi0 == pytest.approx(0.49712077818831410991, abs=1e-15)
