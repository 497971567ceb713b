"""Backend selection for the hot kernels.

The compiled extension is used when it imports and the field has dense
tables; otherwise the numpy implementation runs. ``use_backend`` pins a
backend explicitly (tests and the benchmark compare both).
"""

from __future__ import annotations

import numpy as np

from . import _kernels_py

try:
    from . import _kernels as _kernels_c
except ImportError:  # extension not built
    _kernels_c = None

HAVE_EXTENSION = _kernels_c is not None
_forced = None


def available_backends() -> list[str]:
    return ["python", "cython"] if HAVE_EXTENSION else ["python"]


def use_backend(name: str | None) -> None:
    """Force ``"python"`` or ``"cython"``; ``None`` restores automatic choice."""
    global _forced
    if name not in (None, "python", "cython"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "cython" and not HAVE_EXTENSION:
        raise RuntimeError("compiled extension is not available")
    _forced = name


def backend_name(F=None) -> str:
    if _forced is not None:
        return _forced
    if HAVE_EXTENSION and (F is None or F.has_tables):
        return "cython"
    return "python"


def _impl(F):
    if backend_name(F) == "cython" and F.has_tables:
        return _kernels_c
    return _kernels_py


def rref(M, F):
    M = np.asarray(M, dtype=np.int64)
    if M.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    if M.size == 0:
        return M.copy(), []
    return _impl(F).rref(M, F)


def rank(M, F) -> int:
    return len(rref(M, F)[1])


def batch_rank(G, subsets, F) -> np.ndarray:
    subsets = np.asarray(subsets, dtype=np.int64)
    if len(subsets) == 0:
        return np.zeros(0, dtype=np.int64)
    return _impl(F).batch_rank(np.asarray(G), subsets.reshape(len(subsets), -1), F)


def batch_in_span(G, target, subsets, F) -> np.ndarray:
    subsets = np.asarray(subsets, dtype=np.int64)
    if len(subsets) == 0:
        return np.zeros(0, dtype=bool)
    return _impl(F).batch_in_span(
        np.asarray(G), np.asarray(target), subsets.reshape(len(subsets), -1), F
    )


def weight_histogram(G, F) -> np.ndarray:
    G = np.asarray(G, dtype=np.int64)
    if G.shape[0] == 0:
        return np.zeros(G.shape[1] + 1, dtype=np.int64)
    return _impl(F).weight_histogram(G, F)
