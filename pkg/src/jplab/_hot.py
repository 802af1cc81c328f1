"""Hot inner loops, each in two flavours.

``*_loop`` functions are explicit loops compiled with numba when available;
``*_vec`` functions are pure numpy.  The unsuffixed public names are bound to
one flavour according to :data:`jplab._accel.USE_NUMBA`.  Callers always pass
1-D float64 arrays.
"""
from __future__ import annotations

import math

import numpy as np

from ._accel import USE_NUMBA, njit

_TWO_PI = 2.0 * math.pi
_NMAX_CAP = 100_000


# --------------------------------------------------------------------------
# Riemann kernel series.  Returns S with Phi(t) = 4 pi exp(5t/2 - a) S(t),
# a = pi exp(2t), so the dominant Gaussian factor can be kept in log form.
# --------------------------------------------------------------------------


@njit
def riemann_shifted_sum_loop(t, floor):
    size = t.shape[0]
    out = np.empty(size)
    nterms = np.empty(size, dtype=np.int64)
    ratio = np.empty(size)
    for i in range(size):
        e2 = math.exp(2.0 * t[i])
        a = math.pi * e2
        s = 0.0
        comp = 0.0
        big = 0.0
        n = 1
        nxt = 0.0
        while True:
            n2 = float(n * n)
            term = (_TWO_PI * n2 * n2 * e2 - 3.0 * n2) * math.exp(-(n2 - 1.0) * a)
            tmp = s + term
            if abs(s) >= abs(term):
                comp += (s - tmp) + term
            else:
                comp += (term - tmp) + s
            s = tmp
            if abs(term) > big:
                big = abs(term)
            n += 1
            n2 = float(n * n)
            nxt = (_TWO_PI * n2 * n2 * e2 + 3.0 * n2) * math.exp(-(n2 - 1.0) * a)
            if (n2 * a > 2.0 and nxt <= floor * big) or n > _NMAX_CAP:
                break
        out[i] = s + comp
        nterms[i] = n - 1
        ratio[i] = nxt / big if big > 0.0 else 0.0
    return out, nterms, ratio


def _riemann_nmax(a_min, e2_min, floor):
    # term magnitude is decreasing in n beyond n^2 a = 2; scan for the cutoff
    big = abs(_TWO_PI * e2_min - 3.0)
    n = 1
    while True:
        n2 = float(n * n)
        big = max(big, (_TWO_PI * n2 * n2 * e2_min + 3.0 * n2) * math.exp(-(n2 - 1.0) * a_min))
        n += 1
        n2 = float(n * n)
        nxt = (_TWO_PI * n2 * n2 * e2_min + 3.0 * n2) * math.exp(-(n2 - 1.0) * a_min)
        if (n2 * a_min > 2.0 and nxt <= floor * big) or n > _NMAX_CAP:
            return n - 1


def riemann_shifted_sum_vec(t, floor):
    t = np.asarray(t, dtype=np.float64)
    if t.size == 0:
        return np.empty(0), np.empty(0, dtype=np.int64), np.empty(0)
    e2 = np.exp(2.0 * t)
    a = math.pi * e2
    i_min = int(np.argmin(t))
    nmax = _riemann_nmax(float(a[i_min]), float(e2[i_min]), floor)
    n2 = np.arange(1, nmax + 2, dtype=np.float64) ** 2
    with np.errstate(under="ignore"):
        gauss = np.exp(-np.outer(a, n2 - 1.0))
        terms = (_TWO_PI * np.outer(e2, n2 * n2) - 3.0 * n2) * gauss
        bound = (_TWO_PI * np.outer(e2, n2 * n2) + 3.0 * n2) * gauss
    s = np.sum(terms[:, :nmax], axis=1)
    big = np.max(np.abs(terms[:, :nmax]), axis=1)
    ratio = np.divide(bound[:, nmax], big, out=np.zeros_like(big), where=big > 0)
    return s, np.full(t.size, nmax, dtype=np.int64), ratio


# --------------------------------------------------------------------------
# Character theta series.  S = sum_{n>=1} w_n chi(n) exp(-(n^2-1) a) with
# w_n = n (odd characters) or 1 (even characters).
# --------------------------------------------------------------------------


@njit
def theta_shifted_sum_loop(table, odd, a_arr, floor):
    m = table.shape[0]
    size = a_arr.shape[0]
    out = np.empty(size)
    nterms = np.empty(size, dtype=np.int64)
    ratio = np.empty(size)
    for i in range(size):
        a = a_arr[i]
        s = 0.0
        comp = 0.0
        big = 0.0
        n = 1
        nxt = 0.0
        while True:
            n2 = float(n * n)
            w = float(n) if odd else 1.0
            mag = w * math.exp(-(n2 - 1.0) * a)
            chi = table[n % m]
            if chi != 0:
                term = chi * mag
                tmp = s + term
                if abs(s) >= abs(term):
                    comp += (s - tmp) + term
                else:
                    comp += (term - tmp) + s
                s = tmp
                if mag > big:
                    big = mag
            n += 1
            n2 = float(n * n)
            w = float(n) if odd else 1.0
            nxt = w * math.exp(-(n2 - 1.0) * a)
            if (n2 * a > 0.5 and (n2 - 1.0) * a > 45.0 and nxt <= floor * big) or n > _NMAX_CAP:
                break
        out[i] = s + comp
        nterms[i] = n - 1
        ratio[i] = nxt / big if big > 0.0 else 0.0
    return out, nterms, ratio


def _theta_nmax(a_min, odd, floor):
    n = 1
    big = 1.0
    while True:
        n += 1
        n2 = float(n * n)
        nxt = (n if odd else 1.0) * math.exp(-(n2 - 1.0) * a_min)
        if (n2 * a_min > 0.5 and (n2 - 1.0) * a_min > 45.0 and nxt <= floor * big) or n > _NMAX_CAP:
            return n - 1
        big = max(big, nxt)


def theta_shifted_sum_vec(table, odd, a_arr, floor):
    a_arr = np.asarray(a_arr, dtype=np.float64)
    if a_arr.size == 0:
        return np.empty(0), np.empty(0, dtype=np.int64), np.empty(0)
    m = table.shape[0]
    nmax = _theta_nmax(float(np.min(a_arr)), bool(odd), floor)
    n = np.arange(1, nmax + 2, dtype=np.float64)
    w = n if odd else np.ones_like(n)
    chi = table[np.arange(1, nmax + 2) % m].astype(np.float64)
    with np.errstate(under="ignore"):
        mag = w * np.exp(-np.outer(a_arr, n * n - 1.0))
    terms = mag[:, :nmax] * chi[:nmax]
    s = np.sum(terms, axis=1)
    big = np.max(np.where(chi[:nmax] != 0, mag[:, :nmax], 0.0), axis=1)
    ratio = np.divide(mag[:, nmax], big, out=np.zeros_like(big), where=big > 0)
    return s, np.full(a_arr.size, nmax, dtype=np.int64), ratio


# --------------------------------------------------------------------------
# Polynomial recurrences
# --------------------------------------------------------------------------


@njit
def gegenbauer_norm_loop(n, lam, x):
    # c_{k+1} = (2(k+lam) x c_k - k c_{k-1}) / (k + 2 lam),  c_0 = 1, c_1 = x
    # degree loop outside so the inner loop over x vectorizes
    m = x.shape[0]
    if n == 0:
        return np.ones(m)
    prev = np.ones(m)
    cur = x.copy()
    for k in range(1, n):
        for i in range(m):
            nxt = (2.0 * (k + lam) * x[i] * cur[i] - k * prev[i]) / (k + 2.0 * lam)
            prev[i] = cur[i]
            cur[i] = nxt
    return cur


def gegenbauer_norm_vec(n, lam, x):
    x = np.asarray(x, dtype=np.float64)
    if n == 0:
        return np.ones_like(x)
    prev = np.ones_like(x)
    cur = x.copy()
    for k in range(1, n):
        prev, cur = cur, (2.0 * (k + lam) * x * cur - k * prev) / (k + 2.0 * lam)
    return cur


_RESCALE = 1e150
_LOG_RESCALE = math.log(_RESCALE)


@njit
def gegenbauer_norm_log_loop(n, lam, y):
    # y >= 1: every c_k(y) >= 1, so the recurrence is run on rescaled values
    m = y.shape[0]
    if n == 0:
        return np.zeros(m)
    prev = np.ones(m)
    cur = y.copy()
    scale = np.zeros(m)
    for k in range(1, n):
        for i in range(m):
            nxt = (2.0 * (k + lam) * y[i] * cur[i] - k * prev[i]) / (k + 2.0 * lam)
            prev[i] = cur[i]
            cur[i] = nxt
            if nxt > _RESCALE:
                cur[i] = nxt / _RESCALE
                prev[i] = prev[i] / _RESCALE
                scale[i] += _LOG_RESCALE
    return np.log(cur) + scale


def gegenbauer_norm_log_vec(n, lam, y):
    y = np.asarray(y, dtype=np.float64)
    if n == 0:
        return np.zeros_like(y)
    prev = np.ones_like(y)
    cur = y.copy()
    scale = np.zeros_like(y)
    for k in range(1, n):
        prev, cur = cur, (2.0 * (k + lam) * y * cur - k * prev) / (k + 2.0 * lam)
        big = cur > _RESCALE
        if big.any():
            cur = np.where(big, cur / _RESCALE, cur)
            prev = np.where(big, prev / _RESCALE, prev)
            scale = scale + np.where(big, _LOG_RESCALE, 0.0)
    return np.log(cur) + scale


@njit
def gegenbauer_c_loop(n, lam, x):
    # (k+1) C_{k+1} = 2(k+lam) x C_k - (k+2lam-1) C_{k-1}
    m = x.shape[0]
    if n == 0:
        return np.ones(m)
    prev = np.ones(m)
    cur = 2.0 * lam * x
    for k in range(1, n):
        for i in range(m):
            nxt = (2.0 * (k + lam) * x[i] * cur[i] - (k + 2.0 * lam - 1.0) * prev[i]) / (k + 1.0)
            prev[i] = cur[i]
            cur[i] = nxt
    return cur


def gegenbauer_c_vec(n, lam, x):
    x = np.asarray(x, dtype=np.float64)
    if n == 0:
        return np.ones_like(x)
    prev = np.ones_like(x)
    cur = 2.0 * lam * x
    for k in range(1, n):
        prev, cur = cur, (2.0 * (k + lam) * x * cur - (k + 2.0 * lam - 1.0) * prev) / (k + 1.0)
    return cur


@njit
def jacobi_loop(n, alpha, beta, x):
    m = x.shape[0]
    if n == 0:
        return np.ones(m)
    ab = alpha + beta
    prev = np.ones(m)
    cur = (alpha + 1.0) + (ab + 2.0) * (x - 1.0) / 2.0
    for k in range(2, n + 1):
        c2k = 2.0 * k + ab
        a1 = 2.0 * k * (k + ab) * (c2k - 2.0)
        a3 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * c2k
        for i in range(m):
            a2 = (c2k - 1.0) * (c2k * (c2k - 2.0) * x[i] + alpha * alpha - beta * beta)
            nxt = (a2 * cur[i] - a3 * prev[i]) / a1
            prev[i] = cur[i]
            cur[i] = nxt
    return cur


def jacobi_vec(n, alpha, beta, x):
    x = np.asarray(x, dtype=np.float64)
    if n == 0:
        return np.ones_like(x)
    ab = alpha + beta
    prev = np.ones_like(x)
    cur = (alpha + 1.0) + (ab + 2.0) * (x - 1.0) / 2.0
    for k in range(2, n + 1):
        c2k = 2.0 * k + ab
        a1 = 2.0 * k * (k + ab) * (c2k - 2.0)
        a2 = (c2k - 1.0) * (c2k * (c2k - 2.0) * x + alpha * alpha - beta * beta)
        a3 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * c2k
        prev, cur = cur, (a2 * cur - a3 * prev) / a1
    return cur


# --------------------------------------------------------------------------
# Tensor double sum  sum_ij W_i W_j cos((s_i + s_j) x) (s_i - s_j)^(2n)
# --------------------------------------------------------------------------


@njit
def double_cos_moment_loop(s, weights, x, n):
    size = s.shape[0]
    total = 0.0
    for i in range(size):
        si = s[i]
        row = 0.0
        for j in range(size):
            d = si - s[j]
            row += weights[j] * math.cos((si + s[j]) * x) * d ** (2 * n)
        total += weights[i] * row
    return total


def double_cos_moment_vec(s, weights, x, n, block=512):
    s = np.asarray(s, dtype=np.float64)
    total = 0.0
    for lo in range(0, s.size, block):
        si = s[lo:lo + block, None]
        blk = np.cos((si + s[None, :]) * x) * (si - s[None, :]) ** (2 * n)
        total += float(weights[lo:lo + block] @ (blk @ weights))
    return total


if USE_NUMBA:
    riemann_shifted_sum = riemann_shifted_sum_loop
    theta_shifted_sum = theta_shifted_sum_loop
    gegenbauer_norm = gegenbauer_norm_loop
    gegenbauer_norm_log = gegenbauer_norm_log_loop
    gegenbauer_c = gegenbauer_c_loop
    jacobi = jacobi_loop
    double_cos_moment = double_cos_moment_loop
else:
    riemann_shifted_sum = riemann_shifted_sum_vec
    theta_shifted_sum = theta_shifted_sum_vec
    gegenbauer_norm = gegenbauer_norm_vec
    gegenbauer_norm_log = gegenbauer_norm_log_vec
    gegenbauer_c = gegenbauer_c_vec
    jacobi = jacobi_vec
    double_cos_moment = double_cos_moment_vec
