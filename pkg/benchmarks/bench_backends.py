"""Time the numba loop kernels against their pure-numpy twins.

Both variants live side by side in ``jplab._hot`` (``*_loop`` and ``*_vec``),
so one process can time them on identical inputs regardless of which one
the package selected through ``JPL_BACKEND`` / ``JPL_DISABLE_NUMBA``.

    python3 benchmarks/bench_backends.py [--repeat 5]
"""
from __future__ import annotations

import argparse
import math
import time

import numpy as np

from jplab import _hot
from jplab._accel import HAVE_NUMBA


def _best(func, args, repeat):
    func(*args)  # warm-up, includes JIT compilation for the loop variant
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        func(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def cases():
    t = np.linspace(0.0, 3.0, 20_000)
    x = np.linspace(-1.0, 1.0, 20_000)
    y = np.linspace(1.0, 4.0, 20_000)
    table = np.array([0, 1, 0, -1], dtype=np.int64)
    a = np.pi * np.exp(2 * np.linspace(0.0, 2.0, 20_000)) / 4
    s = np.linspace(-2.5, 2.5, 1_200)
    w = np.exp(-s**2)
    return [
        ("riemann_shifted_sum", (t, 1e-18)),
        ("theta_shifted_sum", (table, True, a, 1e-18)),
        ("gegenbauer_norm", (512, 0.5, x)),
        ("gegenbauer_norm_log", (512, 0.5, y)),
        ("jacobi", (512, -0.5, 0.0, x)),
        ("double_cos_moment", (s, w, 5.0, 2)),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if not HAVE_NUMBA:
        print("numba not importable; the loop variants run as plain python")
    print(f"{'kernel':<22}{'numba [ms]':>12}{'numpy [ms]':>12}{'speedup':>10}{'max |diff|':>14}")
    for name, inputs in cases():
        loop = getattr(_hot, f"{name}_loop")
        vec = getattr(_hot, f"{name}_vec")
        t_loop = _best(loop, inputs, args.repeat)
        t_vec = _best(vec, inputs, args.repeat)
        a, b = loop(*inputs), vec(*inputs)
        a0 = np.asarray(a[0] if isinstance(a, tuple) else a, dtype=np.float64)
        b0 = np.asarray(b[0] if isinstance(b, tuple) else b, dtype=np.float64)
        diff = float(np.max(np.abs(a0 - b0)))
        print(f"{name:<22}{1e3 * t_loop:>12.3f}{1e3 * t_vec:>12.3f}{t_vec / t_loop:>10.1f}{diff:>14.3g}")


if __name__ == "__main__":
    main()
