"""Selects the counting backend at import time.

The compiled extension is preferred; the numpy implementation is the
drop-in fallback.  Set QMCPAIRS_BACKEND=python to force the fallback
(used by the benchmark and by cross-backend tests).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("QMCPAIRS_BACKEND", "").lower() == "python":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND
count_leq_naive = _impl.count_leq_naive
count_leq_naive_block = _impl.count_leq_naive_block
count_leq_grid = _impl.count_leq_grid
