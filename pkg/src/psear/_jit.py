"""Numba switch.

Set ``PSEAR_NO_JIT=1`` before import to run every kernel as plain Python /
numpy. Handy under a debugger and used by the benchmark to time both paths.
"""

import os

JIT_ENABLED = os.environ.get("PSEAR_NO_JIT", "0").lower() not in ("1", "true", "yes")

if JIT_ENABLED:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        JIT_ENABLED = False

if not JIT_ENABLED:

    def njit(func=None, **kwargs):
        if func is not None:
            return func

        def wrapper(f):
            return f

        return wrapper
