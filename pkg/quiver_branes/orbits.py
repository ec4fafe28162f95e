# quiver_branes/orbits.py

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .config import witness_tolerance
from .errors import NotStableError, ShapeMismatchError
from .involutions import apply
from .linalg import kernel
from .stability import is_stable
from .types import GaugeElement, InvolutionSpec, Representation

logger = logging.getLogger(__name__)


@dataclass
class IntertwinerBasis:
    basis: List[Dict[str, np.ndarray]]
    dimension: int

    def to_dict(self):
        return {"dimension": self.dimension}


def _offsets(X: Representation) -> Tuple[Dict[str, int], int]:
    offsets, total = {}, 0
    for v in X.quiver.vertices:
        offsets[v] = total
        total += int(X.dims.V[v]) ** 2
    return offsets, total


def _left(M: np.ndarray, n: int) -> np.ndarray:
    """Row-major vec(M K) = (M kron 1) vec(K)."""
    return np.kron(M, np.eye(n))


def _right(N: np.ndarray, n: int) -> np.ndarray:
    """Row-major vec(K N) = (1 kron N^t) vec(K)."""
    return np.kron(np.eye(n), N.T)


def _conjugacy_rows(X: Representation, Y: Representation) -> np.ndarray:
    offsets, total = _offsets(X)
    V = X.dims.V
    rows = []
    for a in X.quiver.arrows:
        nh, nt = int(V[a.head]), int(V[a.tail])
        # k_head A^X - A^Y k_tail = 0
        block = np.zeros((nh * nt, total), dtype=complex)
        block[:, offsets[a.head]:offsets[a.head] + nh * nh] += _right(X.A[a.id], nh)
        block[:, offsets[a.tail]:offsets[a.tail] + nt * nt] -= _left(Y.A[a.id], nt)
        rows.append(block)
        # k_tail B^X - B^Y k_head = 0
        block = np.zeros((nt * nh, total), dtype=complex)
        block[:, offsets[a.tail]:offsets[a.tail] + nt * nt] += _right(X.B[a.id], nt)
        block[:, offsets[a.head]:offsets[a.head] + nh * nh] -= _left(Y.B[a.id], nh)
        rows.append(block)
    if not rows:
        return np.zeros((0, total), dtype=complex)
    return np.vstack(rows)


def _framing_system(X: Representation, Y: Representation) -> Tuple[np.ndarray, np.ndarray]:
    offsets, total = _offsets(X)
    rows, rhs = [], []
    for v in X.quiver.vertices:
        n, r = int(X.dims.V[v]), int(X.dims.W[v])
        # k I^X = I^Y
        block = np.zeros((n * r, total), dtype=complex)
        block[:, offsets[v]:offsets[v] + n * n] = _right(X.I[v], n)
        rows.append(block)
        rhs.append(Y.I[v].ravel())
        # J^Y k = J^X
        block = np.zeros((r * n, total), dtype=complex)
        block[:, offsets[v]:offsets[v] + n * n] = _left(Y.J[v], n)
        rows.append(block)
        rhs.append(X.J[v].ravel())
    return np.vstack(rows), np.concatenate(rhs)


def _unpack(vec: np.ndarray, X: Representation) -> Dict[str, np.ndarray]:
    offsets, _ = _offsets(X)
    out = {}
    for v in X.quiver.vertices:
        n = int(X.dims.V[v])
        out[v] = vec[offsets[v]:offsets[v] + n * n].reshape(n, n)
    return out


def _check_compatible(X: Representation, Y: Representation) -> None:
    if dict(X.dims.V) != dict(Y.dims.V) or dict(X.dims.W) != dict(Y.dims.W):
        raise ShapeMismatchError("representations have different dimension data")


def intertwiner_space(X: Representation, Y: Representation) -> IntertwinerBasis:
    """Solutions k of k_head A^X = A^Y k_tail and k_tail B^X = B^Y k_head."""
    _check_compatible(X, Y)
    M = _conjugacy_rows(X, Y)
    null = kernel(M)
    basis = [_unpack(null[:, j], X) for j in range(null.shape[1])]
    return IntertwinerBasis(basis=basis, dimension=len(basis))


def _invertible(k: Dict[str, np.ndarray]) -> bool:
    return all(m.size == 0 or np.linalg.cond(m) < 1e12 for m in k.values())


def orbit_witness(X: Representation, Y: Representation, seed: int = 0) -> Optional[GaugeElement]:
    """Invertible k with (k, 1) . X = Y, or None."""
    _check_compatible(X, Y)
    _, total = _offsets(X)
    conj = _conjugacy_rows(X, Y)
    frame, rhs = _framing_system(X, Y)
    M = np.vstack([conj, frame])
    b = np.concatenate([np.zeros(conj.shape[0], dtype=complex), rhs])

    sol, *_ = np.linalg.lstsq(M, b, rcond=None)
    scale = max(1.0, X.norm() + Y.norm())
    if np.linalg.norm(M @ sol - b) > witness_tolerance() * scale:
        return None

    candidates = [sol]
    null = kernel(M)
    if null.shape[1]:
        rng = np.random.default_rng(seed)
        for _ in range(8):
            coeff = rng.standard_normal(null.shape[1]) + 1j * rng.standard_normal(null.shape[1])
            candidates.append(sol + null @ coeff)

    for vec in candidates:
        k = _unpack(vec, X)
        if _invertible(k):
            return GaugeElement.from_blocks(k)
    logger.info("orbit witness solves the linear system but is not invertible")
    return None


def is_identity_witness(k: Optional[GaugeElement], tol: float = 1e-8) -> bool:
    if k is None:
        return False
    return all(m.size == 0 or np.max(np.abs(m - np.eye(m.shape[0]))) <= tol for m in k.g.values())


def is_moduli_fixed(spec: InvolutionSpec, X: Representation) -> Optional[GaugeElement]:
    if not is_stable(X):
        raise NotStableError("moduli fixed-point test needs a stable representation")
    return orbit_witness(X, apply(spec, X))
