# quiver_branes/stability.py
"""
Stability via invariant-subspace closure.

stable   : the smallest A,B-closed collection containing im I is all of V
costable : the largest A,B-invariant collection inside ker J is zero, i.e. the
           smallest (A*,B*)-closed collection containing im J* is all of V
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

from .linalg import span
from .types import Representation


@dataclass
class SubspaceCollection:
    basis: Dict[str, np.ndarray]
    rank_history: List[Dict[str, int]] = field(default_factory=list)

    def dims(self) -> Dict[str, int]:
        return {v: int(m.shape[1]) for v, m in self.basis.items()}

    def is_full(self, dimV: Dict[str, int]) -> bool:
        return all(self.dims()[v] == int(n) for v, n in dimV.items())


def _closure(
    X: Representation,
    generators: Dict[str, np.ndarray],
    maps: List[Tuple[str, str, np.ndarray]],
) -> SubspaceCollection:
    """Iterated span-and-orthonormalize; maps are (source, target, matrix)."""
    basis = {v: span(generators[v]) for v in X.quiver.vertices}
    history = [{v: int(b.shape[1]) for v, b in basis.items()}]

    for _ in range(X.dims.total_V() + 1):
        grown = {}
        for v in X.quiver.vertices:
            pieces = [basis[v]]
            pieces += [m @ basis[src] for src, dst, m in maps if dst == v and basis[src].shape[1]]
            stacked = np.hstack([np.asarray(p, dtype=complex) for p in pieces])
            grown[v] = span(stacked)
        ranks = {v: int(b.shape[1]) for v, b in grown.items()}
        basis = grown
        if ranks == history[-1]:
            break
        history.append(ranks)
    return SubspaceCollection(basis=basis, rank_history=history)


def stable_closure(X: Representation) -> SubspaceCollection:
    maps = []
    for a in X.quiver.arrows:
        maps.append((a.tail, a.head, X.A[a.id]))
        maps.append((a.head, a.tail, X.B[a.id]))
    return _closure(X, dict(X.I), maps)


def costable_coclosure(X: Representation) -> SubspaceCollection:
    maps = []
    for a in X.quiver.arrows:
        maps.append((a.head, a.tail, X.A[a.id].conj().T))
        maps.append((a.tail, a.head, X.B[a.id].conj().T))
    return _closure(X, {v: X.J[v].conj().T for v in X.quiver.vertices}, maps)


def is_stable(X: Representation) -> bool:
    return stable_closure(X).is_full(X.dims.V)


def is_costable(X: Representation) -> bool:
    return costable_coclosure(X).is_full(X.dims.V)


def is_regular(X: Representation) -> bool:
    return is_stable(X) and is_costable(X)


def stability_report(X: Representation) -> Dict[str, object]:
    closure = stable_closure(X)
    coclosure = costable_coclosure(X)
    stable = closure.is_full(X.dims.V)
    costable = coclosure.is_full(X.dims.V)
    return {
        "stable": stable,
        "costable": costable,
        "regular": stable and costable,
        "closure_dims": closure.dims(),
        "coclosure_dims": coclosure.dims(),
    }
