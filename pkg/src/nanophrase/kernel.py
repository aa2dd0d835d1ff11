"""Selects the state-sum backend at import time.

The compiled ``_ckernel`` extension is used when it has been built; set
``NANOWORD_PURE_PYTHON=1`` to force the pure-Python fallback.
"""

from __future__ import annotations

import os

from . import _pykernel

__all__ = ["BACKEND", "reduce_loops", "state_counts", "delete_letter", "backend_module"]

_native = None
if os.environ.get("NANOWORD_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernel as _native
    except ImportError:
        _native = None

BACKEND = "cython" if _native is not None else "python"
_impl = _native if _native is not None else _pykernel

reduce_loops = _impl.reduce_loops
state_counts = _impl.state_counts
delete_letter = _pykernel.delete_letter


def backend_module(name: str):
    """Return the kernel module ``"python"`` or ``"cython"`` (for benchmarks and tests)."""
    if name == "python":
        return _pykernel
    if name == "cython":
        if _native is None:
            raise ImportError("compiled kernel not built")
        return _native
    raise ValueError(name)
