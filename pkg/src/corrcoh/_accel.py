"""Backend selection for the numeric kernels.

Every hot kernel in :mod:`corrcoh._kernels` exists twice: a loop version
compiled with numba and a vectorized numpy version.  The public functions
dispatch on :data:`USE_NUMBA`, which is false when numba is missing or when
``CORRCOH_DISABLE_NUMBA`` is set to a truthy value before import.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is optional
    numba = None

HAVE_NUMBA = numba is not None

_DISABLED = os.environ.get("CORRCOH_DISABLE_NUMBA", "").strip().lower() in {
    "1", "true", "yes", "on",
}

USE_NUMBA = HAVE_NUMBA and not _DISABLED


def njit(func):
    # compiled lazily on first call; plain Python when numba is absent
    if HAVE_NUMBA:
        return numba.njit(cache=True)(func)
    return func


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
