"""Determinant kernels with a compiled backend and a pure-Python fallback.

The compiled module is used when it imports.  Set ``EXTCONTENT_PURE=1`` to
force the fallback (the benchmark and the test suite do this to compare).
"""
from __future__ import annotations

import os

from . import _pykernels

try:
    if os.environ.get("EXTCONTENT_PURE", "") not in ("", "0"):
        raise ImportError("pure-Python kernels requested")
    from . import _ckernels as _impl
    BACKEND = "cython"
except ImportError:
    _impl = _pykernels
    BACKEND = "python"

det_int = _impl.det_int
det_float = _impl.det_float
minor_dets_int = _impl.minor_dets_int
minor_dets_float = _impl.minor_dets_float


def backends():
    """Map of backend name -> kernel module, for side-by-side comparison."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        found["cython"] = _ckernels
    return found


__all__ = ["BACKEND", "backends", "det_int", "det_float", "minor_dets_int", "minor_dets_float"]
