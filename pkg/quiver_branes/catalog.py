# quiver_branes/catalog.py
"""
Explicit fixed points of composed involutions on the ADHM quiver, with
k-block inflation, plus builders for symplectic and orthogonal autodual data.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np
import scipy.optimize

from .errors import PreconditionError
from .hk_geometry import complex_moment
from .linalg import inflate, kernel
from .quiver_core import jordan_representation
from .stability import is_regular
from .types import (
    DeltaAssignment,
    FrameElement,
    GammaAssignment,
    GaugeElement,
    InvolutionSpec,
    Letter,
    Representation,
)

logger = logging.getLogger(__name__)

VERTEX = "0"
ARROW = "a"

_ROT = np.array([[0.0, -1.0], [1.0, 0.0]])
_STD_FORM = np.array([[0.0, 1.0], [-1.0, 0.0]])


@dataclass
class CatalogEntry:
    name: str
    X: Representation
    spec: InvolutionSpec
    expected: Dict[str, Any]
    variants: Dict[str, InvolutionSpec] = field(default_factory=dict)
    variant_expected: Dict[str, Dict[str, Any]] = field(default_factory=dict)

    @property
    def quiver(self):
        return self.X.quiver

    @property
    def dims(self):
        return self.X.dims

    def to_dict(self):
        return {
            "name": self.name,
            "quiver": self.X.quiver.to_dict(),
            "dims": self.X.dims.to_dict(),
            "rep": self.X.to_dict(),
            "spec": self.spec.to_dict(),
            "expected": self.expected,
            "variants": {k: s.to_dict() for k, s in self.variants.items()},
            "variant_expected": self.variant_expected,
        }


def standard_form(size: int) -> np.ndarray:
    """Block-diagonal [[0,1],[-1,0]] form on an even-dimensional space."""
    return np.kron(np.eye(size // 2), _STD_FORM)


def _twist(g: np.ndarray, h: np.ndarray) -> Dict[str, Any]:
    return {
        "g": GaugeElement.from_blocks({VERTEX: g}),
        "h": FrameElement.from_blocks({VERTEX: h}),
    }


# ============================================================
# c-example (r = n = 2k)
# ============================================================

def build_c_example(k: int = 1) -> CatalogEntry:
    if k < 1:
        raise PreconditionError("k must be >= 1", {"k": k})
    A = inflate([[1, 2], [2, -1]], k)
    B = inflate([[1, 1], [1, -1]], k)
    I = inflate(np.eye(2), k)
    J = inflate([[0, 2], [-2, 0]], k)
    X = jordan_representation(A, B, I, J, VERTEX, ARROW)

    gamma = GammaAssignment.constant(X.quiver, -1)
    twist = _twist(inflate(_ROT, k), inflate(_ROT, k))
    spec = InvolutionSpec(word=(Letter("c", gamma=gamma),), **twist)
    real_variant = InvolutionSpec(word=(Letter("e"), Letter("c", gamma=gamma)), **twist)

    n = r = 2 * k
    return CatalogEntry(
        name="c-example",
        X=X,
        spec=spec,
        expected={"adhm_zero": True, "regular": True, "brane_type": "(B,B,B)", "fixed": True, "dims": None},
        variants={"ec": real_variant},
        variant_expected={
            "ec": {"brane_type": "(A,B,A)", "fixed": True, "dims": {"fixed_real_dim": 2 * r * n}},
        },
    )


# ============================================================
# bd-example (r = n = 4k)
# ============================================================

BD_G = np.array([[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]], dtype=float)
BD_H = -BD_G


def bd_matrices(a: float = 1.0, b1: float = 1.0, b2: float = 1.0, b3: float = 1.0, b4: float = 1.0):
    A = np.array([[a, 0, 0, 1], [0, a, -1, 0], [0, 1, a, 0], [-1, 0, 0, a]], dtype=complex)
    B = np.array([[b1, b2, b3, 1], [0, -b1, 1, b4], [b4, 1, -b1, 0], [1, b3, -b2, b1]], dtype=complex)
    I = np.array([[0, 0, 2, 0], [0, 0, 0, -2], [1, 0, 0, 0], [0, 1, 0, 0]], dtype=complex)
    # J = -I: with vertex sign t = -1 on the d-letter this is both ADHM and fixed
    return A, B, I, -I


def build_bd_example(
    k: int = 1,
    a: float = 1.0,
    b1: float = 1.0,
    b2: float = 1.0,
    b3: float = 1.0,
    b4: float = 1.0,
) -> CatalogEntry:
    if k < 1:
        raise PreconditionError("k must be >= 1", {"k": k})
    A, B, I, J = (inflate(m, k) for m in bd_matrices(a, b1, b2, b3, b4))
    X = jordan_representation(A, B, I, J, VERTEX, ARROW)

    delta = DeltaAssignment.uniform(X.quiver, t=1.0, z=0.0, vertex_t=-1.0)
    twist = _twist(inflate(BD_G, k), inflate(BD_H, k))
    spec = InvolutionSpec(word=(Letter("b"), Letter("d", delta=delta)), **twist)
    real_variant = InvolutionSpec(word=(Letter("e"), Letter("b"), Letter("d", delta=delta)), **twist)

    return CatalogEntry(
        name="bd-example",
        X=X,
        spec=spec,
        expected={
            "adhm_zero": True,
            "regular": True,
            "brane_type": "(B,A,A)",
            "fixed": True,
            "dims": {"fixed_real_dim": 32 * k * k},
        },
        variants={"ebd": real_variant},
        variant_expected={"ebd": {"brane_type": "(A,A,B)", "fixed": True, "dims": None}},
    )


# ============================================================
# Autodual data: X = (A, B, I, -h^-1 I^t g^-1)
# ============================================================

def _b_spec(g: np.ndarray, h: np.ndarray) -> InvolutionSpec:
    return InvolutionSpec(word=(Letter("b"),), **_twist(g, h))


def _solve_symmetric_partner(A: np.ndarray, target: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Symmetric B with [A, B] = target (target antisymmetric), plus a random kernel part."""
    n = A.shape[0]
    basis = []
    for i in range(n):
        for j in range(i, n):
            E = np.zeros((n, n), dtype=complex)
            E[i, j] = E[j, i] = 1.0
            basis.append(E)
    L = np.column_stack([(A @ E - E @ A).ravel() for E in basis])
    coeff, *_ = np.linalg.lstsq(L, target.ravel(), rcond=None)
    null = kernel(L)
    if null.shape[1]:
        coeff = coeff + null @ (rng.standard_normal(null.shape[1]) + 1j * rng.standard_normal(null.shape[1]))
    return sum(c * E for c, E in zip(coeff, basis))


def build_symplectic(n: int = 1, r: int = 2, seed: int = 0, max_tries: int = 50) -> Optional[CatalogEntry]:
    if r % 2:
        raise PreconditionError("symplectic data needs an even framing rank", {"r": r})
    if n < 1:
        raise PreconditionError("n must be >= 1", {"n": n})
    h = standard_form(r)
    g = np.eye(n)
    hinv = np.linalg.inv(h)

    for attempt in range(max_tries):
        rng = np.random.default_rng(seed + attempt)
        if n == 1:
            A = np.array([[rng.standard_normal()]], dtype=complex)
            B = np.array([[rng.standard_normal()]], dtype=complex)
            I = np.zeros((1, r), dtype=complex)
            I[0, 0] = 1.0
        else:
            S = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            A = S + S.T
            I = rng.standard_normal((n, r)) + 1j * rng.standard_normal((n, r))
        J = -hinv @ I.T @ np.linalg.inv(g)
        if n > 1:
            B = _solve_symmetric_partner(A, -(I @ J), rng)
        X = jordan_representation(A, B, I, J, VERTEX, ARROW)
        if np.linalg.norm(complex_moment(X)[VERTEX]) <= 1e-10 * max(1.0, X.norm() ** 2) and is_regular(X):
            return CatalogEntry(
                name="symplectic",
                X=X,
                spec=_b_spec(g, h),
                expected={
                    "adhm_zero": True,
                    "regular": True,
                    "brane_type": "(B,B,B)",
                    "fixed": True,
                    "dims": {"fixed_real_dim": 2 * n * (r + 2)},
                },
            )
    logger.warning(json.dumps({"event": "catalog_search_exhausted", "name": "symplectic", "n": n, "r": r}, ensure_ascii=True))
    return None


def _antisymmetric(params: np.ndarray, n: int) -> np.ndarray:
    S = np.zeros((n, n), dtype=complex)
    iu = np.triu_indices(n, 1)
    S[iu] = params
    return S - S.T


def build_orthogonal(n: int = 4, r: int = 4, seed: int = 0, budget: int = 10_000) -> Optional[CatalogEntry]:
    """Least-squares search for regular ADHM data in the b-fixed slice with g = Omega_V, h = 1."""
    if n % 2 or n < 4:
        raise PreconditionError("orthogonal data needs n even and larger than 2", {"n": n})
    omega = standard_form(n)
    omega_inv = np.linalg.inv(omega)
    h = np.eye(r)
    m = n * (n - 1) // 2
    sizes = (m, m, n * r)

    def unpack(x: np.ndarray):
        z = x[: x.size // 2] + 1j * x[x.size // 2:]
        sa, sb, iv = np.split(z, np.cumsum(sizes)[:-1])
        A = _antisymmetric(sa, n) @ omega_inv
        B = _antisymmetric(sb, n) @ omega_inv
        I = iv.reshape(n, r)
        J = -np.linalg.inv(h) @ I.T @ omega_inv
        return A, B, I, J

    def residual(x: np.ndarray) -> np.ndarray:
        A, B, I, J = unpack(x)
        M = A @ B - B @ A + I @ J
        return np.concatenate([M.real.ravel(), M.imag.ravel()])

    rng = np.random.default_rng(seed)
    remaining = budget
    while remaining > 0:
        x0 = rng.standard_normal(2 * sum(sizes))
        nfev = min(remaining, 2000)
        fit = scipy.optimize.least_squares(residual, x0, method="trf", xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=nfev)
        remaining -= max(int(fit.nfev), 1)
        A, B, I, J = unpack(fit.x)
        X = jordan_representation(A, B, I, J, VERTEX, ARROW)
        if np.linalg.norm(complex_moment(X)[VERTEX]) <= 1e-12 * max(1.0, X.norm() ** 2) and is_regular(X):
            return CatalogEntry(
                name="orthogonal",
                X=X,
                spec=_b_spec(omega, h),
                expected={
                    "adhm_zero": True,
                    "regular": True,
                    "brane_type": "(B,B,B)",
                    "fixed": True,
                    # Omega [A, B] is symmetric, so ADHM cuts n(n+1)/2 equations from n(n-1) + nr parameters
                    "dims": {"fixed_real_dim": 2 * n * (r - 2)},
                },
            )
    logger.warning(json.dumps({"event": "catalog_search_exhausted", "name": "orthogonal", "n": n, "r": r, "budget": budget}, ensure_ascii=True))
    return None


CATALOG_NAMES = ("c-example", "bd-example", "symplectic", "orthogonal")


def build(name: str, k: int = 1, seed: int = 0) -> Optional[CatalogEntry]:
    if name == "c-example":
        return build_c_example(k)
    if name == "bd-example":
        return build_bd_example(k)
    if name == "symplectic":
        return build_symplectic(n=k, r=2, seed=seed)
    if name == "orthogonal":
        return build_orthogonal(n=4 * k, r=4, seed=seed)
    raise PreconditionError(f"unknown catalog entry {name}", {"known": list(CATALOG_NAMES)})
