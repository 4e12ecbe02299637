"""Select the enumeration kernel at import time.

The compiled Cython kernel is preferred; the numpy implementation is
the fallback when the extension was not built.  Setting the environment
variable SIMPLEX_BALL_PURE=1 forces the fallback.
"""

import os

from ._signmax_py import sign_value_table

if os.environ.get("SIMPLEX_BALL_PURE"):
    from . import _signmax_py as _impl

    BACKEND = "pure"
else:
    try:
        from . import _signmax as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _signmax_py as _impl

        BACKEND = "pure"

max_sign_value = _impl.max_sign_value


def backend_name() -> str:
    """Either "compiled" or "pure"."""
    return BACKEND


__all__ = ["max_sign_value", "sign_value_table", "backend_name", "BACKEND"]
