# quiver_branes/linalg.py

from __future__ import annotations

import numpy as np
import scipy.linalg

from .config import rank_rtol


def numerical_rank(m: np.ndarray, rtol: float | None = None) -> int:
    """Singular values above rtol * largest count; the zero matrix has rank 0."""
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    if s[0] == 0.0:
        return 0
    rtol = rank_rtol() if rtol is None else rtol
    return int(np.sum(s > rtol * s[0]))


def span(m: np.ndarray, rtol: float | None = None) -> np.ndarray:
    """Orthonormal basis of the column space (rows x rank)."""
    rows = m.shape[0]
    if m.size == 0 or not np.any(m):
        return np.zeros((rows, 0), dtype=m.dtype if m.dtype.kind == "c" else float)
    rtol = rank_rtol() if rtol is None else rtol
    return scipy.linalg.orth(m, rcond=rtol)


def kernel(m: np.ndarray, rtol: float | None = None) -> np.ndarray:
    """Orthonormal basis of the null space, tolerant of empty matrices."""
    cols = m.shape[1]
    if m.shape[0] == 0 or not np.any(m):
        return np.eye(cols, dtype=m.dtype if m.dtype.kind == "c" else float)
    rtol = rank_rtol() if rtol is None else rtol
    return scipy.linalg.null_space(m, rcond=rtol)


def frobenius(blocks) -> float:
    return float(np.sqrt(sum(np.sum(np.abs(m) ** 2) for m in blocks)))


def inflate(m: np.ndarray, k: int) -> np.ndarray:
    """Every entry becomes that multiple of the k x k identity."""
    return np.kron(np.asarray(m, dtype=complex), np.eye(k))
