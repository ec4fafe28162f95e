# quiver_branes/__init__.py
"""Nakajima quiver varieties, ADHM data, their involutions and branes."""

from .catalog import CatalogEntry, build_bd_example, build_c_example, build_orthogonal, build_symplectic
from .engine import QuiverBranesEngine
from .errors import QuiverBranesError
from .types import (
    Arrow,
    DimensionData,
    FrameElement,
    GaugeElement,
    InvolutionSpec,
    LevelSpec,
    Letter,
    Quiver,
    Representation,
    Signature,
)

__all__ = [
    "Arrow",
    "CatalogEntry",
    "DimensionData",
    "FrameElement",
    "GaugeElement",
    "InvolutionSpec",
    "LevelSpec",
    "Letter",
    "Quiver",
    "QuiverBranesEngine",
    "QuiverBranesError",
    "Representation",
    "Signature",
    "build_bd_example",
    "build_c_example",
    "build_orthogonal",
    "build_symplectic",
]
