# quiver_branes/schemas.py
"""
JSON codec for representations, group elements and involution specs.

A complex entry is [re, im] (a bare number is read as real); a matrix is a
list of rows. Empty matrices take their shape from the dimension data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ValidationError

from .errors import PayloadError, ShapeMismatchError
from .quiver_core import expected_shapes, require_valid
from .types import (
    Arrow,
    DeltaAssignment,
    DimensionData,
    FrameElement,
    GammaAssignment,
    GaugeElement,
    InvolutionSpec,
    Letter,
    Quiver,
    Representation,
)

Entry = Union[float, List[float]]
Matrix = List[List[Entry]]


class ArrowModel(BaseModel):
    id: str
    tail: str
    head: str


class QuiverModel(BaseModel):
    vertices: List[str]
    arrows: List[ArrowModel] = []


class DimsModel(BaseModel):
    V: Dict[str, int]
    W: Dict[str, int]


class RepModel(BaseModel):
    A: Dict[str, Matrix] = {}
    B: Dict[str, Matrix] = {}
    I: Dict[str, Matrix] = {}
    J: Dict[str, Matrix] = {}


class RepresentationPayload(BaseModel):
    quiver: QuiverModel
    dims: DimsModel
    rep: RepModel
    g: Optional[Dict[str, Matrix]] = None
    h: Optional[Dict[str, Matrix]] = None


class GammaModel(BaseModel):
    arrows: Dict[str, int] = {}
    vertices: Dict[str, int] = {}


class LoopModel(BaseModel):
    t: float
    z: Entry = 0.0


class DeltaModel(BaseModel):
    loops: Dict[str, LoopModel] = {}
    offloop_t: Dict[str, float] = {}
    vertex_t: Dict[str, float] = {}


class LetterModel(BaseModel):
    letter: Literal["b", "c", "d", "e"]
    gamma: Optional[GammaModel] = None
    delta: Optional[DeltaModel] = None


class SpecPayload(BaseModel):
    word: List[LetterModel]
    g: Optional[Dict[str, Matrix]] = None
    h: Optional[Dict[str, Matrix]] = None


# ============================================================
# Entries and matrices
# ============================================================

def decode_entry(value: Entry) -> complex:
    if isinstance(value, list):
        if len(value) != 2:
            raise PayloadError("a complex entry must be [re, im]", {"entry": value})
        return complex(value[0], value[1])
    return complex(value)


def decode_matrix(raw: Matrix, shape: Optional[Tuple[int, int]] = None) -> np.ndarray:
    rows = [[decode_entry(x) for x in row] for row in raw]
    widths = {len(row) for row in rows}
    if len(widths) > 1:
        raise PayloadError("matrix rows have different lengths", {"widths": sorted(widths)})
    m = np.array(rows, dtype=complex)
    if m.size == 0:
        return np.zeros(shape if shape is not None else (len(rows), 0), dtype=complex)
    if m.ndim != 2:
        m = m.reshape(len(rows), -1)
    return m


def _decode_blocks(raw: Dict[str, Matrix], shapes: Dict[str, tuple], kind: str) -> Dict[str, np.ndarray]:
    out = {}
    for key, shape in shapes.items():
        if key not in raw:
            if 0 in shape:
                out[key] = np.zeros(shape, dtype=complex)
                continue
            raise ShapeMismatchError(f"missing {kind} block for {key}", {"kind": kind, "key": key})
        out[key] = decode_matrix(raw[key], shape)
    return out


def _validate(model, payload: Any):
    try:
        return model.model_validate(payload)
    except ValidationError as exc:
        raise PayloadError("payload does not match the schema", {"errors": json.loads(exc.json(include_url=False))}) from exc


# ============================================================
# Decoding
# ============================================================

def decode_quiver(model: QuiverModel) -> Quiver:
    return Quiver(
        vertices=tuple(model.vertices),
        arrows=tuple(Arrow(a.id, a.tail, a.head) for a in model.arrows),
    )


def decode_representation(payload: Any) -> Representation:
    model = _validate(RepresentationPayload, payload)
    q = decode_quiver(model.quiver)
    d = DimensionData(V=dict(model.dims.V), W=dict(model.dims.W))
    d.check_against(q)
    shapes = expected_shapes(q, d)
    X = Representation(
        quiver=q,
        dims=d,
        A=_decode_blocks(model.rep.A, shapes["A"], "A"),
        B=_decode_blocks(model.rep.B, shapes["B"], "B"),
        I=_decode_blocks(model.rep.I, shapes["I"], "I"),
        J=_decode_blocks(model.rep.J, shapes["J"], "J"),
    )
    require_valid(X)
    return X


def decode_gauge(raw: Optional[Dict[str, Matrix]]) -> Optional[GaugeElement]:
    if raw is None:
        return None
    return GaugeElement.from_blocks({k: decode_matrix(m) for k, m in raw.items()})


def decode_frame(raw: Optional[Dict[str, Matrix]]) -> Optional[FrameElement]:
    if raw is None:
        return None
    return FrameElement.from_blocks({k: decode_matrix(m) for k, m in raw.items()})


def _decode_letter(model: LetterModel) -> Letter:
    gamma = None
    if model.gamma is not None:
        gamma = GammaAssignment(arrows=dict(model.gamma.arrows), vertices=dict(model.gamma.vertices))
    delta = None
    if model.delta is not None:
        delta = DeltaAssignment(
            loop_params={k: (p.t, decode_entry(p.z)) for k, p in model.delta.loops.items()},
            offloop_t=dict(model.delta.offloop_t),
            vertex_t=dict(model.delta.vertex_t),
        )
    return Letter(kind=model.letter, gamma=gamma, delta=delta)


def decode_spec(payload: Any) -> InvolutionSpec:
    model = _validate(SpecPayload, payload)
    return InvolutionSpec(
        word=tuple(_decode_letter(letter) for letter in model.word),
        g=decode_gauge(model.g),
        h=decode_frame(model.h),
    )


def load_json(path: Union[str, Path]) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise PayloadError(f"cannot read {path}", {"reason": str(exc)}) from exc
    except json.JSONDecodeError as exc:
        raise PayloadError(f"{path} is not valid JSON", {"line": exc.lineno, "column": exc.colno}) from exc


# ============================================================
# Encoding
# ============================================================

def encode_representation(X: Representation) -> Dict[str, Any]:
    return {"quiver": X.quiver.to_dict(), "dims": X.dims.to_dict(), "rep": X.to_dict()}


def dumps(payload: Any, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=True)
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


@dataclass
class Bundle:
    """A representation file, optionally carrying a spec and expected claims (catalog bundles)."""

    X: Representation
    spec: Optional[InvolutionSpec] = None
    expected: Dict[str, Any] = field(default_factory=dict)
    variants: Dict[str, InvolutionSpec] = field(default_factory=dict)
    variant_expected: Dict[str, Dict[str, Any]] = field(default_factory=dict)


def decode_bundle(payload: Any) -> Bundle:
    if not isinstance(payload, dict):
        raise PayloadError("top-level JSON must be an object")
    X = decode_representation(payload)
    spec = decode_spec(payload["spec"]) if payload.get("spec") is not None else None
    variants = {name: decode_spec(raw) for name, raw in (payload.get("variants") or {}).items()}
    return Bundle(
        X=X,
        spec=spec,
        expected=dict(payload.get("expected") or {}),
        variants=variants,
        variant_expected=dict(payload.get("variant_expected") or {}),
    )
