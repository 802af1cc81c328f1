"""Backend selection for the hot numeric kernels.

Set ``JPL_DISABLE_NUMBA=1`` (or ``JPL_BACKEND=numpy``) before import to force
the pure-numpy code paths.  Both paths are always importable so tests can
compare them directly.
"""
from __future__ import annotations

import os


def _flag_set(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() in {"1", "true", "yes", "on"}


def _want_numba() -> bool:
    if _flag_set("JPL_DISABLE_NUMBA"):
        return False
    if os.environ.get("JPL_BACKEND", "").strip().lower() == "numpy":
        return False
    return True


try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None

HAVE_NUMBA = _numba is not None
USE_NUMBA = HAVE_NUMBA and _want_numba()
BACKEND = "numba" if USE_NUMBA else "numpy"


def njit(func):
    """``numba.njit(cache=True, nogil=True)`` when numba is importable, else identity.

    The decorated function stays importable without numba so the loop
    implementation can still be exercised (slowly) as plain Python.
    """
    if _numba is None:
        return func
    return _numba.njit(cache=True, nogil=True)(func)
