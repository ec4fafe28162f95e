# quiver_branes/quiver_core.py
"""
Representation storage, validation and the joint (g, h) action

    (g, h) . X = (g_head A g_tail^-1, g_tail B g_head^-1, g I h, h^-1 J g^-1)

The B component of arrow a is stored under a's id (tail <- head map).
"""

from __future__ import annotations

from typing import Dict, List, Optional

import numpy as np

from .errors import InvalidGroupElementError, ShapeMismatchError
from .types import DimensionData, FrameElement, GaugeElement, Quiver, Representation


def expected_shapes(q: Quiver, d: DimensionData) -> Dict[str, Dict[str, tuple]]:
    V, W = d.V, d.W
    return {
        "A": {a.id: (int(V[a.head]), int(V[a.tail])) for a in q.arrows},
        "B": {a.id: (int(V[a.tail]), int(V[a.head])) for a in q.arrows},
        "I": {v: (int(V[v]), int(W[v])) for v in q.vertices},
        "J": {v: (int(W[v]), int(V[v])) for v in q.vertices},
    }


def validate_representation(q: Quiver, d: DimensionData, X: Representation) -> List[Dict[str, object]]:
    """Shape and finiteness violations as data; an empty list means X is well formed."""
    violations: List[Dict[str, object]] = []
    parts = {"A": X.A, "B": X.B, "I": X.I, "J": X.J}

    for kind, shapes in expected_shapes(q, d).items():
        for key, shape in shapes.items():
            block = parts[kind].get(key)
            if block is None:
                violations.append({"kind": "missing", "block": kind, "key": key, "expected": list(shape)})
                continue
            block = np.asarray(block)
            if block.shape != shape:
                violations.append({
                    "kind": "shape",
                    "block": kind,
                    "key": key,
                    "expected": list(shape),
                    "found": list(block.shape),
                })
                continue
            if not np.all(np.isfinite(block)):
                violations.append({"kind": "finiteness", "block": kind, "key": key})
    return violations


def require_valid(X: Representation) -> None:
    violations = validate_representation(X.quiver, X.dims, X)
    if violations:
        raise ShapeMismatchError("representation does not match its dimension data", {"violations": violations})


def zero_representation(q: Quiver, d: DimensionData) -> Representation:
    shapes = expected_shapes(q, d)
    parts = {kind: {key: np.zeros(s, dtype=complex) for key, s in items.items()} for kind, items in shapes.items()}
    return Representation(quiver=q, dims=d, **parts)


def representation_from_blocks(q: Quiver, d: DimensionData, A, B, I, J) -> Representation:
    X = Representation(
        quiver=q,
        dims=d,
        A={k: np.asarray(v, dtype=complex) for k, v in A.items()},
        B={k: np.asarray(v, dtype=complex) for k, v in B.items()},
        I={k: np.asarray(v, dtype=complex) for k, v in I.items()},
        J={k: np.asarray(v, dtype=complex) for k, v in J.items()},
    )
    require_valid(X)
    return X


def jordan_representation(A, B, I, J, vertex: str = "0", arrow: str = "a") -> Representation:
    A = np.atleast_2d(np.asarray(A, dtype=complex))
    I = np.atleast_2d(np.asarray(I, dtype=complex))
    n, r = I.shape
    q = Quiver.jordan(vertex, arrow)
    d = DimensionData.jordan(n, r, vertex)
    return representation_from_blocks(
        q, d,
        A={arrow: A},
        B={arrow: np.atleast_2d(np.asarray(B, dtype=complex))},
        I={vertex: I},
        J={vertex: np.asarray(J, dtype=complex).reshape(r, n)},
    )


def random_representation(q: Quiver, d: DimensionData, seed: int) -> Representation:
    """Independent standard complex Gaussian entries, deterministic by seed."""
    rng = np.random.default_rng(seed)
    parts: Dict[str, Dict[str, np.ndarray]] = {}
    for kind, items in expected_shapes(q, d).items():
        parts[kind] = {
            key: (rng.standard_normal(s) + 1j * rng.standard_normal(s)) / np.sqrt(2.0)
            for key, s in items.items()
        }
    return Representation(quiver=q, dims=d, **parts)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    qm, rm = np.linalg.qr(z)
    return qm * (np.diag(rm) / np.abs(np.diag(rm)))


def random_unitary_pair(d: DimensionData, seed: int) -> tuple[GaugeElement, FrameElement]:
    rng = np.random.default_rng(seed)
    g = GaugeElement.from_blocks({v: random_unitary(int(n), rng) for v, n in d.V.items()})
    h = FrameElement.from_blocks({v: random_unitary(int(r), rng) for v, r in d.W.items()})
    return g, h


def _checked_inverse(m: np.ndarray, label: str, key: str) -> np.ndarray:
    if m.size == 0:
        return m
    if not np.isfinite(np.linalg.cond(m)):
        raise InvalidGroupElementError(f"{label} block at {key} is not invertible", {"vertex": key})
    return np.linalg.inv(m)


def act(g: Optional[GaugeElement], h: Optional[FrameElement], X: Representation) -> Representation:
    """Joint gauge/frame action; None stands for the identity."""
    q = X.quiver
    gb = g.g if g is not None else {v: np.eye(int(n)) for v, n in X.dims.V.items()}
    hb = h.h if h is not None else {v: np.eye(int(r)) for v, r in X.dims.W.items()}
    ginv = {v: _checked_inverse(gb[v], "g", v) for v in q.vertices}
    hinv = {v: _checked_inverse(hb[v], "h", v) for v in q.vertices}

    A = {a.id: gb[a.head] @ X.A[a.id] @ ginv[a.tail] for a in q.arrows}
    B = {a.id: gb[a.tail] @ X.B[a.id] @ ginv[a.head] for a in q.arrows}
    I = {v: gb[v] @ X.I[v] @ hb[v] for v in q.vertices}
    J = {v: hinv[v] @ X.J[v] @ ginv[v] for v in q.vertices}
    return X.replace(A=A, B=B, I=I, J=J)


def compose(g2: GaugeElement, h2: FrameElement, g1: GaugeElement, h1: FrameElement) -> tuple[GaugeElement, FrameElement]:
    """(g2,h2).((g1,h1).X) = (g2 g1, h1 h2).X  (h acts from the right on I)."""
    g = g2 @ g1
    h = FrameElement({k: h1.h[k] @ h2.h[k] for k in h1.h}, h1.unitary_flag and h2.unitary_flag)
    return g, h
