"""Cross-checks between the compiled and pure counting kernels."""

import numpy as np
import pytest

from qmcpairs import _backend, _kernels_py
from qmcpairs.paircorr import _float_grid_g

compiled = pytest.importorskip("qmcpairs._kernels")


def test_backend_selection_prefers_compiled():
    import os

    if os.environ.get("QMCPAIRS_BACKEND", "").lower() == "python":
        assert _backend.BACKEND == "python"
    else:
        assert _backend.BACKEND == "cython"


def test_compiled_matches_python_exactly():
    rng = np.random.default_rng(314159)
    for _ in range(40):
        n = int(rng.integers(2, 600))
        d = int(rng.integers(1, 4))
        pts = rng.random((n, d))
        radius = float(rng.random() ** 2 * 1.5 * n ** (-1.0 / d))
        g = _float_grid_g(n, d, radius)
        want = _kernels_py.count_leq_naive(pts, radius)
        assert compiled.count_leq_naive(pts, radius) == want
        assert compiled.count_leq_grid(pts, radius, g) == want
        assert _kernels_py.count_leq_grid(pts, radius, g) == want


def test_compiled_handles_tiny_grids():
    rng = np.random.default_rng(6)
    pts = rng.random((50, 2))
    for g in (1, 2, 3):
        assert compiled.count_leq_grid(pts, 0.3, g) == _kernels_py.count_leq_naive(
            pts, 0.3
        )


def test_compiled_clustered_points():
    # many coincident points stress a single cell
    pts = np.zeros((200, 2))
    pts[100:] = 0.25
    for backend in (compiled, _kernels_py):
        assert backend.count_leq_naive(pts, 0.0) == 2 * (100 * 99)
        assert backend.count_leq_grid(pts, 0.0, 14) == 2 * (100 * 99)


def test_compiled_dimension_limit():
    pts = np.random.default_rng(1).random((4, 17))
    with pytest.raises(ValueError):
        compiled.count_leq_grid(pts, 0.1, 1)
