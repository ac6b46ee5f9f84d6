"""Backend switch for the numeric kernels.

Set ``AGW_DISABLE_NUMBA=1`` before import to force the pure-numpy path
(useful when numba is missing or when debugging a kernel).
"""

import os

_FLAG = os.environ.get("AGW_DISABLE_NUMBA", "").strip().lower()
DISABLED = _FLAG not in ("", "0", "false", "no")

try:  # pragma: no cover - depends on environment
    if DISABLED:
        raise ImportError
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _njit = None
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


def njit(f):
    """Compile ``f`` with numba, or hand it back untouched."""
    if _njit is None:
        return f
    return _njit(cache=True, nogil=True)(f)
