# quiver_branes/types.py

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Tuple

import numpy as np

from .errors import InvalidQuiverError, InvalidGroupElementError


BlockMap = Dict[str, np.ndarray]


def _matrix_to_json(m: np.ndarray) -> List[List[List[float]]]:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m, dtype=complex)]


def blocks_to_json(blocks: BlockMap) -> Dict[str, list]:
    return {key: _matrix_to_json(value) for key, value in blocks.items()}


# ============================================================
# Quiver — vertices plus arrows (tail -> head), loops allowed
# ============================================================

@dataclass(frozen=True)
class Arrow:
    id: str
    tail: str
    head: str

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head

    def to_dict(self):
        return {"id": self.id, "tail": self.tail, "head": self.head}


@dataclass(frozen=True)
class Quiver:
    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidQuiverError("vertex ids must be unique", {"vertices": list(self.vertices)})
        ids = [a.id for a in self.arrows]
        if len(set(ids)) != len(ids):
            raise InvalidQuiverError("arrow ids must be unique", {"arrows": ids})
        known = set(self.vertices)
        for a in self.arrows:
            if a.tail not in known or a.head not in known:
                raise InvalidQuiverError(
                    f"arrow {a.id} has an undeclared endpoint",
                    {"arrow": a.id, "tail": a.tail, "head": a.head},
                )

    @classmethod
    def jordan(cls, vertex: str = "0", arrow: str = "a") -> "Quiver":
        return cls(vertices=(vertex,), arrows=(Arrow(arrow, vertex, vertex),))

    @property
    def is_jordan(self) -> bool:
        return len(self.vertices) == 1 and len(self.arrows) == 1 and self.arrows[0].is_loop

    def loops(self) -> List[Arrow]:
        return [a for a in self.arrows if a.is_loop]

    def non_loops(self) -> List[Arrow]:
        return [a for a in self.arrows if not a.is_loop]

    def arrow(self, arrow_id: str) -> Arrow:
        for a in self.arrows:
            if a.id == arrow_id:
                return a
        raise InvalidQuiverError(f"unknown arrow {arrow_id}")

    def to_dict(self):
        return {
            "vertices": list(self.vertices),
            "arrows": [a.to_dict() for a in self.arrows],
        }


# ============================================================
# DimensionData — dim V_i and dim W_i per vertex
# ============================================================

@dataclass(frozen=True, eq=False)
class DimensionData:
    V: Dict[str, int]
    W: Dict[str, int]

    def check_against(self, q: Quiver) -> None:
        for name, dims in (("V", self.V), ("W", self.W)):
            missing = [v for v in q.vertices if v not in dims]
            if missing:
                raise InvalidQuiverError(f"dim{name} is not total over the vertices", {"missing": missing})
            negative = [v for v in q.vertices if int(dims[v]) < 0]
            if negative:
                raise InvalidQuiverError(f"dim{name} must be nonnegative", {"vertices": negative})
        if not any(int(self.V[v]) > 0 for v in q.vertices):
            raise InvalidQuiverError("at least one vertex needs dimV > 0")

    @classmethod
    def jordan(cls, n: int, r: int, vertex: str = "0") -> "DimensionData":
        return cls(V={vertex: n}, W={vertex: r})

    def total_V(self) -> int:
        return sum(int(x) for x in self.V.values())

    def to_dict(self):
        return {"V": dict(self.V), "W": dict(self.W)}


# ============================================================
# Representation — X = (A, B, I, J)
# ============================================================

@dataclass(frozen=True, eq=False)
class Representation:
    quiver: Quiver
    dims: DimensionData
    A: BlockMap
    B: BlockMap
    I: BlockMap
    J: BlockMap

    def blocks(self) -> Iterator[Tuple[str, str, np.ndarray]]:
        """Blocks in flattening order: A by arrow order, then B, then I, then J."""
        for a in self.quiver.arrows:
            yield "A", a.id, self.A[a.id]
        for a in self.quiver.arrows:
            yield "B", a.id, self.B[a.id]
        for v in self.quiver.vertices:
            yield "I", v, self.I[v]
        for v in self.quiver.vertices:
            yield "J", v, self.J[v]

    def map_blocks(self, fn: Callable[[str, str, np.ndarray], np.ndarray]) -> "Representation":
        parts: Dict[str, BlockMap] = {"A": {}, "B": {}, "I": {}, "J": {}}
        for kind, key, m in self.blocks():
            parts[kind][key] = np.asarray(fn(kind, key, m), dtype=complex)
        return self.replace(**parts)

    def replace(self, **parts: BlockMap) -> "Representation":
        return Representation(
            quiver=self.quiver,
            dims=self.dims,
            A=parts.get("A", self.A),
            B=parts.get("B", self.B),
            I=parts.get("I", self.I),
            J=parts.get("J", self.J),
        )

    def scaled(self, factor: complex) -> "Representation":
        return self.map_blocks(lambda _k, _key, m: factor * m)

    def __add__(self, other: "Representation") -> "Representation":
        parts = {"A": other.A, "B": other.B, "I": other.I, "J": other.J}
        return self.map_blocks(lambda kind, key, m: m + parts[kind][key])

    def __sub__(self, other: "Representation") -> "Representation":
        return self + other.scaled(-1.0)

    def conj(self) -> "Representation":
        return self.map_blocks(lambda _k, _key, m: np.conj(m))

    def norm(self) -> float:
        return float(np.sqrt(sum(np.sum(np.abs(m) ** 2) for _, _, m in self.blocks())))

    def is_real(self, tol: float = 1e-12) -> bool:
        return all(np.max(np.abs(m.imag), initial=0.0) <= tol for _, _, m in self.blocks())

    def to_dict(self):
        return {
            "A": blocks_to_json(self.A),
            "B": blocks_to_json(self.B),
            "I": blocks_to_json(self.I),
            "J": blocks_to_json(self.J),
        }


# ============================================================
# Group elements — g in GL(V), h in GL(W)
# ============================================================

def _blocks_unitary(blocks: BlockMap, tol: float) -> bool:
    for m in blocks.values():
        if m.size and np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))) > tol:
            return False
    return True


def _check_invertible(blocks: BlockMap, label: str) -> None:
    for key, m in blocks.items():
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidGroupElementError(f"{label} block at {key} is not square", {"shape": list(m.shape)})
        if m.size and not np.isfinite(np.linalg.cond(m)):
            raise InvalidGroupElementError(f"{label} block at {key} is not invertible", {"vertex": key})


@dataclass(frozen=True, eq=False)
class GaugeElement:
    g: BlockMap
    unitary_flag: bool = False

    @classmethod
    def from_blocks(cls, blocks: BlockMap, tol: float = 1e-10) -> "GaugeElement":
        blocks = {k: np.asarray(v, dtype=complex) for k, v in blocks.items()}
        _check_invertible(blocks, "g")
        return cls(g=blocks, unitary_flag=_blocks_unitary(blocks, tol))

    @classmethod
    def identity(cls, dims: DimensionData) -> "GaugeElement":
        return cls(g={v: np.eye(int(n), dtype=complex) for v, n in dims.V.items()}, unitary_flag=True)

    def inverse(self) -> "GaugeElement":
        return GaugeElement({k: np.linalg.inv(m) for k, m in self.g.items()}, self.unitary_flag)

    def __matmul__(self, other: "GaugeElement") -> "GaugeElement":
        return GaugeElement(
            {k: self.g[k] @ other.g[k] for k in self.g},
            self.unitary_flag and other.unitary_flag,
        )

    def to_dict(self):
        return {"g": blocks_to_json(self.g), "unitary": self.unitary_flag}


@dataclass(frozen=True, eq=False)
class FrameElement:
    h: BlockMap
    unitary_flag: bool = False

    @classmethod
    def from_blocks(cls, blocks: BlockMap, tol: float = 1e-10) -> "FrameElement":
        blocks = {k: np.asarray(v, dtype=complex) for k, v in blocks.items()}
        _check_invertible(blocks, "h")
        return cls(h=blocks, unitary_flag=_blocks_unitary(blocks, tol))

    @classmethod
    def identity(cls, dims: DimensionData) -> "FrameElement":
        return cls(h={v: np.eye(int(r), dtype=complex) for v, r in dims.W.items()}, unitary_flag=True)

    def inverse(self) -> "FrameElement":
        return FrameElement({k: np.linalg.inv(m) for k, m in self.h.items()}, self.unitary_flag)

    def to_dict(self):
        return {"h": blocks_to_json(self.h), "unitary": self.unitary_flag}


# ============================================================
# MomentValues / LevelSpec
# ============================================================

@dataclass(frozen=True, eq=False)
class MomentValues:
    mu1: BlockMap
    mu2: BlockMap
    mu3: BlockMap
    muC: BlockMap

    def to_dict(self):
        return {
            "mu1": blocks_to_json(self.mu1),
            "mu2": blocks_to_json(self.mu2),
            "mu3": blocks_to_json(self.mu3),
            "muC": blocks_to_json(self.muC),
        }


@dataclass(frozen=True)
class LevelSpec:
    c: float = 0.5

    def target(self, dims: DimensionData) -> BlockMap:
        """Per-vertex target i*c*1 for mu3."""
        return {v: 1j * self.c * np.eye(int(n)) for v, n in dims.V.items()}


# ============================================================
# Involution letters and specs
# ============================================================

@dataclass(frozen=True, eq=False)
class GammaAssignment:
    arrows: Dict[str, int]
    vertices: Dict[str, int]

    @classmethod
    def constant(cls, q: Quiver, sign: int = -1) -> "GammaAssignment":
        return cls(
            arrows={a.id: sign for a in q.arrows},
            vertices={v: sign for v in q.vertices},
        )

    def to_dict(self):
        return {"arrows": dict(self.arrows), "vertices": dict(self.vertices)}


@dataclass(frozen=True, eq=False)
class DeltaAssignment:
    loop_params: Dict[str, Tuple[float, complex]]
    offloop_t: Dict[str, float] = field(default_factory=dict)
    vertex_t: Dict[str, float] = field(default_factory=dict)

    @classmethod
    def uniform(cls, q: Quiver, t: float = 1.0, z: complex = 0.0, vertex_t: float = 1.0) -> "DeltaAssignment":
        return cls(
            loop_params={a.id: (float(t), complex(z)) for a in q.loops()},
            offloop_t={a.id: 1.0 for a in q.non_loops()},
            vertex_t={v: float(vertex_t) for v in q.vertices},
        )

    def to_dict(self):
        return {
            "loops": {k: {"t": t, "z": [z.real, z.imag]} for k, (t, z) in self.loop_params.items()},
            "offloop_t": dict(self.offloop_t),
            "vertex_t": dict(self.vertex_t),
        }


LETTERS = ("b", "c", "d", "e")


@dataclass(frozen=True, eq=False)
class Letter:
    kind: str
    gamma: Optional[GammaAssignment] = None
    delta: Optional[DeltaAssignment] = None

    def to_dict(self):
        out = {"letter": self.kind}
        if self.gamma is not None:
            out["gamma"] = self.gamma.to_dict()
        if self.delta is not None:
            out["delta"] = self.delta.to_dict()
        return out


@dataclass(frozen=True, eq=False)
class InvolutionSpec:
    word: Tuple[Letter, ...]
    g: Optional[GaugeElement] = None   # None: identity twist
    h: Optional[FrameElement] = None

    @property
    def letters(self) -> str:
        return "".join(letter.kind for letter in self.word)

    @property
    def is_twisted(self) -> bool:
        return self.g is not None or self.h is not None

    def letter(self, kind: str) -> Optional[Letter]:
        for letter in self.word:
            if letter.kind == kind:
                return letter
        return None

    def to_dict(self):
        out = {"word": [letter.to_dict() for letter in self.word]}
        if self.g is not None:
            out["g"] = blocks_to_json(self.g.g)
        if self.h is not None:
            out["h"] = blocks_to_json(self.h.h)
        return out


# ============================================================
# Signature — commutation signs with Gamma_1, Gamma_2, Gamma_3
# ============================================================

@dataclass(frozen=True)
class Signature:
    delta1: int
    delta2: int
    delta3: int

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.delta1, self.delta2, self.delta3)

    def __mul__(self, other: "Signature") -> "Signature":
        return Signature(
            self.delta1 * other.delta1,
            self.delta2 * other.delta2,
            self.delta3 * other.delta3,
        )

    def brane_type(self) -> str:
        return "(" + ",".join("B" if s > 0 else "A" for s in self.as_tuple()) + ")"

    def to_dict(self):
        return {"delta1": self.delta1, "delta2": self.delta2, "delta3": self.delta3}
