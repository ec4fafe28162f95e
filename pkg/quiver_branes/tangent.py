# quiver_branes/tangent.py

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np
import scipy.linalg

from .errors import LevelPreconditionError, NotExactFixedPointError, NotRegularError
from .hk_geometry import (
    ambient_real_dim,
    complex_moment,
    gamma,
    infinitesimal_action,
    moment_jacobian,
    moment_residual,
    real_matrix,
    real_moment,
    to_real_vector,
)
from .involutions import apply, brane_type, flips_levels, word_signature
from .kempf_flow import FlowResult, _hermitian_basis, flow_to_level, flowed_point
from .linalg import kernel, span
from .orbits import orbit_witness
from .quiver_core import act
from .stability import is_regular
from .types import GaugeElement, InvolutionSpec, LevelSpec, Representation

logger = logging.getLogger(__name__)


@dataclass
class TangentFrame:
    ambient_dim: int
    horizontal_basis: np.ndarray   # ambient_dim x quotient_dim, orthonormal columns
    quotient_dim: int

    def to_dict(self):
        return {"ambient_real_dim": self.ambient_dim, "quotient_real_dim": self.quotient_dim}


@dataclass
class FixedSubspace:
    real_dim: int
    type_tag: str
    basis: np.ndarray
    invariance_defect: float

    def to_dict(self):
        return {
            "fixed_real_dim": self.real_dim,
            "brane_type": self.type_tag,
            "invariance_defect": self.invariance_defect,
        }


# ============================================================
# Orbit directions and the horizontal space
# ============================================================

def orbit_directions(X: Representation) -> np.ndarray:
    """Orthonormal real basis of {xi . X : xi anti-Hermitian}."""
    cols = []
    for v in X.quiver.vertices:
        n = int(X.dims.V[v])
        for b in _hermitian_basis(n):
            xi = {w: np.zeros((int(m), int(m)), dtype=complex) for w, m in X.dims.V.items()}
            xi[v] = 1j * b
            cols.append(to_real_vector(infinitesimal_action(xi, X)))
    N = ambient_real_dim(X)
    if not cols:
        return np.zeros((N, 0))
    return span(np.column_stack(cols))


def quotient_tangent(X: Representation, level: LevelSpec = LevelSpec(), level_tol: float = 1e-6) -> TangentFrame:
    if not is_regular(X):
        raise NotRegularError("tangent space of the quotient needs a regular point")
    muC = moment_residual(complex_moment(X))
    if muC > 1e-8:
        raise LevelPreconditionError("mu_C(X) is not zero", {"muC_residual": muC})
    mu3 = moment_residual(real_moment(X), level.target(X.dims))
    if mu3 > level_tol:
        raise LevelPreconditionError(
            "mu3(X) is not on the requested level; flow first",
            {"mu3_residual": mu3, "level": level.c},
        )

    D = moment_jacobian(X)
    O = orbit_directions(X)
    horizontal = kernel(np.vstack([D, O.T]))
    return TangentFrame(
        ambient_dim=ambient_real_dim(X),
        horizontal_basis=horizontal,
        quotient_dim=int(horizontal.shape[1]),
    )


# ============================================================
# Fixed subspace of a linear involution
# ============================================================

def _is_exact_fixed(spec: InvolutionSpec, X: Representation, tol: float) -> bool:
    return (apply(spec, X) - X).norm() <= tol * max(1.0, X.norm())


def _unitary_regauge(spec: InvolutionSpec, X: Representation, k: GaugeElement, tol: float, seed: int) -> Optional[GaugeElement]:
    """Unitary u with sigma(u . X) = u . X, given sigma(X) = k . X.

    On unitary m the letters induce m -> g psi(m) g^-1 with psi the identity or
    complex conjugation (odd number of b, e letters), so u solves
    g psi(m) g^-1 k = m. The polar factor of an invertible solution solves it too.
    """
    vertices = [v for v in X.quiver.vertices if int(X.dims.V[v])]
    sizes = {v: int(X.dims.V[v]) for v in vertices}
    twist = {v: spec.g.g[v] if spec.g is not None else np.eye(n) for v, n in sizes.items()}
    twist_inv = {v: np.linalg.inv(m) for v, m in twist.items()}
    antilinear = sum(ch in "be" for ch in spec.letters) % 2 == 1

    def unpack(x: np.ndarray) -> Dict[str, np.ndarray]:
        z = x[: x.size // 2] + 1j * x[x.size // 2:]
        out, start = {}, 0
        for v in vertices:
            n = sizes[v]
            out[v] = z[start:start + n * n].reshape(n, n)
            start += n * n
        return out

    def residual(x: np.ndarray) -> np.ndarray:
        m = unpack(x)
        z = np.concatenate([
            (twist[v] @ (np.conj(m[v]) if antilinear else m[v]) @ twist_inv[v] @ k.g[v] - m[v]).ravel()
            for v in vertices
        ])
        return np.concatenate([z.real, z.imag])

    N = 2 * sum(n * n for n in sizes.values())
    if N == 0:
        return None
    solutions = kernel(np.column_stack([residual(e) for e in np.eye(N)]))
    if not solutions.shape[1]:
        return None

    rng = np.random.default_rng(seed)
    for _ in range(8):
        m = unpack(solutions @ rng.standard_normal(solutions.shape[1]))
        if any(np.linalg.cond(b) > 1e12 for b in m.values()):
            continue
        blocks = {v: scipy.linalg.polar(b)[0] for v, b in m.items()}
        blocks.update({v: np.eye(0, dtype=complex) for v in X.quiver.vertices if v not in blocks})
        u = GaugeElement.from_blocks(blocks)
        if _is_exact_fixed(spec, act(u, None, X), tol):
            return u
    return None


def exact_fixed_point(spec: InvolutionSpec, X: Representation, tol: float = 1e-8, seed: int = 0) -> Tuple[Representation, Optional[GaugeElement]]:
    """X itself when sigma(X) = X, else u . X for a unitary u that makes it exact."""
    if _is_exact_fixed(spec, X, tol):
        return X, None
    defect = (apply(spec, X) - X).norm()
    witness = orbit_witness(X, apply(spec, X))
    u = _unitary_regauge(spec, X, witness, tol, seed) if witness is not None else None
    if u is not None:
        logger.info(json.dumps({"event": "fixed_point_regauged", "word": spec.letters, "defect": float(defect)}, ensure_ascii=True))
        return act(u, None, X), u

    payload = {
        "event": "fixed_point_rejected",
        "word": spec.letters,
        "defect": float(defect),
        "orbit_fixed": witness is not None,
        "witness_unitary": bool(witness is not None and witness.unitary_flag),
    }
    logger.warning(json.dumps(payload, ensure_ascii=True))
    raise NotExactFixedPointError("representation is not an exact fixed point of the involution", payload)


def fixed_subspace(spec: InvolutionSpec, X: Representation, frame: TangentFrame, tol: float = 1e-8) -> FixedSubspace:
    moved, u = exact_fixed_point(spec, X, tol)
    H = frame.horizontal_basis
    if u is not None:
        # unitary gauge maps the horizontal space at X onto the one at u . X
        H = real_matrix(lambda T: act(u, None, T), X) @ H
        X = moved
    S = real_matrix(lambda Y: apply(spec, Y), X)
    restricted = H.T @ S @ H
    defect = float(np.linalg.norm(S @ H - H @ restricted)) if H.size else 0.0

    # +1 eigenspace of the symmetrized restriction: projector (1 + sigma)/2 above 0.5
    sym = 0.5 * (restricted + restricted.T)
    if sym.size:
        evals, evecs = np.linalg.eigh(0.5 * (np.eye(sym.shape[0]) + sym))
        keep = evals > 0.5
        basis = H @ evecs[:, keep]
    else:
        basis = np.zeros((H.shape[0], 0))
    return FixedSubspace(
        real_dim=int(basis.shape[1]),
        type_tag=brane_type(spec),
        basis=basis,
        invariance_defect=defect,
    )


def fixed_subspace_dim(spec: InvolutionSpec, X: Representation, frame: TangentFrame) -> Dict[str, Any]:
    fs = fixed_subspace(spec, X, frame)
    return {"real_dim": fs.real_dim, "type_tag": fs.type_tag}


def lagrangian_report(spec: InvolutionSpec, X: Representation, fixed: FixedSubspace) -> Dict[str, Any]:
    """max |omega_k| on the fixed subspace and its Gamma_k-invariance defect, per k."""
    F = fixed.basis
    sig = word_signature(spec).as_tuple()
    report: Dict[str, Any] = {"components": {}}
    restricted = {}
    ok = True
    for k in (1, 2, 3):
        G = real_matrix(lambda Y, k=k: gamma(k, Y), X)
        restricted[k] = F.T @ G @ F
        omega_max = float(np.max(np.abs(restricted[k]), initial=0.0))
        invariance = float(np.linalg.norm(G @ F - F @ (F.T @ G @ F))) if F.size else 0.0
        expected = "B" if sig[k - 1] > 0 else "A"
        holds = invariance <= 1e-8 if expected == "B" else omega_max <= 1e-8
        ok = ok and holds
        report["components"][str(k)] = {
            "expected": expected,
            "omega_max": omega_max,
            "gamma_invariance_defect": invariance,
            "holds": holds,
        }
    holo = restricted[2] + 1j * restricted[3]
    report["holomorphic_pairing_max"] = float(np.max(np.abs(holo), initial=0.0))
    report["ok"] = ok
    return report


# ============================================================
# Level selection for fixed-point computations
# ============================================================

def fixed_point_level(spec: InvolutionSpec) -> LevelSpec:
    """b reflects mu3 levels, so its fixed points live over level 0."""
    return LevelSpec(0.0) if flips_levels(spec) else LevelSpec(0.5)


def prepare_fixed_point(spec: InvolutionSpec, X: Representation, tol: float = 1e-10) -> Tuple[Representation, FlowResult, LevelSpec]:
    level = fixed_point_level(spec)
    result = flow_to_level(X, level, tol=tol)
    return flowed_point(X, result), result, level


def brane_dimensions(spec: InvolutionSpec, X: Representation) -> Dict[str, Any]:
    Y, flow, level = prepare_fixed_point(spec, X)
    Y, regauge = exact_fixed_point(spec, Y)
    frame = quotient_tangent(Y, level)
    fixed = fixed_subspace(spec, Y, frame)
    return {
        "ambient_real_dim": frame.ambient_dim,
        "quotient_real_dim": frame.quotient_dim,
        "fixed_real_dim": fixed.real_dim,
        "brane_type": fixed.type_tag,
        "level": level.c,
        "flow_converged": flow.converged,
        "regauged": regauge is not None,
        "lagrangian": lagrangian_report(spec, Y, fixed),
    }
