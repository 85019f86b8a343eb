"""Backend selection for the stepping kernels.

The compiled Cython module is preferred when it imported cleanly; the
pure-Python module is the fallback. Setting the environment variable
``CURVEREC_PURE`` to a non-empty value before import forces the pure
backend (handy for benchmarking and differential testing).
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

if os.environ.get("CURVEREC_PURE"):
    _impl = _kernels_py
else:
    _impl = _compiled if _compiled is not None else _kernels_py

BACKEND: str = _impl.BACKEND
frame_rk4 = _impl.frame_rk4
fundamental_rk4 = _impl.fundamental_rk4


def available_backends() -> dict:
    """Importable kernel modules keyed by backend name."""
    backends = {"pure": _kernels_py}
    if _compiled is not None:
        backends["compiled"] = _compiled
    return backends
