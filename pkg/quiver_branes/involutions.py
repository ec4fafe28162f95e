# quiver_branes/involutions.py
"""
The involution letters b, c^gamma, d^delta, e, their (g, h)-twists and
the brane classification of composed words.

    b(X)       = (A^t, B^t, J^t, -I^t)
    c^gamma(X) = gamma-signed blocks (arrow sign on A, B; vertex sign on I, J)
    d^delta(X) = loops (tA + zB, conj(z)A - tB), non-loops (tA, -tB), vertices (tI, -tJ)
    e(X)       = entrywise conjugate

A spec applies its letters right-to-left and then the twist (g, h).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .config import default_tolerance
from .errors import InconsistentSignatureError, InvalidSpecError, ShapeMismatchError
from .hk_geometry import gamma, moment_maps
from .quiver_core import act, random_representation
from .types import (
    BlockMap,
    DimensionData,
    InvolutionSpec,
    Letter,
    LETTERS,
    Quiver,
    Representation,
    Signature,
)

logger = logging.getLogger(__name__)

LETTER_SIGNATURES: Dict[str, Signature] = {
    "b": Signature(1, 1, 1),
    "c": Signature(1, 1, 1),
    "d": Signature(1, -1, -1),
    "e": Signature(-1, 1, -1),
}

# Rows of the composed-word classification table
TABLE_WORDS = ("b", "c", "d", "e", "eb", "ec", "ebc", "ed", "ebd")

LEVEL_PRESERVING_LAWS = ("identity", "transpose", "negative_conjugate")


# ============================================================
# Validation
# ============================================================

def validate_spec(spec: InvolutionSpec, q: Quiver, d: Optional[DimensionData] = None) -> None:
    kinds = [letter.kind for letter in spec.word]
    unknown = [k for k in kinds if k not in LETTERS]
    if unknown:
        raise InvalidSpecError("unknown letters in word", {"letters": unknown})
    if len(set(kinds)) != len(kinds):
        raise InvalidSpecError("each letter may occur at most once", {"word": kinds})

    c = spec.letter("c")
    if c is not None:
        if c.gamma is None:
            raise InvalidSpecError("letter c needs a gamma assignment")
        signs = {**{f"arrow:{k}": s for k, s in c.gamma.arrows.items()},
                 **{f"vertex:{k}": s for k, s in c.gamma.vertices.items()}}
        missing = [a.id for a in q.arrows if a.id not in c.gamma.arrows]
        missing += [v for v in q.vertices if v not in c.gamma.vertices]
        if missing:
            raise InvalidSpecError("gamma is not total over arrows and vertices", {"missing": missing})
        if any(s not in (1, -1) for s in signs.values()):
            raise InvalidSpecError("gamma values must be +1 or -1", {"gamma": signs})
        if all(s == 1 for s in signs.values()):
            raise InvalidSpecError("gamma must not be identically +1")

    dl = spec.letter("d")
    if dl is not None:
        if dl.delta is None:
            raise InvalidSpecError("letter d needs a delta assignment")
        delta = dl.delta
        for a in q.loops():
            if a.id not in delta.loop_params:
                raise InvalidSpecError(f"missing loop parameters for {a.id}")
            t, z = delta.loop_params[a.id]
            if abs(t * t + abs(z) ** 2 - 1.0) > 1e-12:
                raise InvalidSpecError(f"loop {a.id} needs t^2 + |z|^2 = 1", {"t": t, "z": [z.real, z.imag]})
            if ("b" in kinds or "e" in kinds) and abs(complex(z).imag) > 1e-12:
                raise InvalidSpecError(f"loop {a.id}: z must be real when d is combined with b or e")
        for a in q.non_loops():
            if delta.offloop_t.get(a.id, 1.0) not in (1.0, -1.0):
                raise InvalidSpecError(f"non-loop arrow {a.id} needs t = +1 or -1")
        for v in q.vertices:
            if delta.vertex_t.get(v, 1.0) not in (1.0, -1.0):
                raise InvalidSpecError(f"vertex {v} needs t = +1 or -1")

    if d is None:
        return
    if "b" in kinds:
        bad = [a.id for a in q.non_loops() if int(d.V[a.tail]) != int(d.V[a.head])]
        if bad:
            raise InvalidSpecError("b needs equal endpoint dimensions on non-loop arrows", {"arrows": bad})
    violations = _twist_violations(spec, q, d)
    if violations:
        raise ShapeMismatchError("twist blocks do not match the dimension data", {"violations": violations})


def _twist_violations(spec: InvolutionSpec, q: Quiver, d: DimensionData) -> List[Dict[str, Any]]:
    violations: List[Dict[str, Any]] = []
    for label, blocks, sizes in (
        ("g", spec.g.g if spec.g is not None else None, d.V),
        ("h", spec.h.h if spec.h is not None else None, d.W),
    ):
        if blocks is None:
            continue
        for key in sorted(set(blocks) - set(q.vertices)):
            violations.append({"kind": "unknown", "block": label, "key": key})
        for v in q.vertices:
            shape = (int(sizes[v]), int(sizes[v]))
            if v not in blocks:
                violations.append({"kind": "missing", "block": label, "key": v, "expected": list(shape)})
            elif np.shape(blocks[v]) != shape:
                violations.append({
                    "kind": "shape",
                    "block": label,
                    "key": v,
                    "expected": list(shape),
                    "found": list(np.shape(blocks[v])),
                })
    return violations


# ============================================================
# Letter maps (untwisted)
# ============================================================

def apply_b(X: Representation) -> Representation:
    q = X.quiver
    for a in q.non_loops():
        if X.A[a.id].shape[0] != X.A[a.id].shape[1]:
            raise InvalidSpecError("b needs equal endpoint dimensions on non-loop arrows", {"arrow": a.id})
    return X.replace(
        A={a.id: X.A[a.id].T.copy() for a in q.arrows},
        B={a.id: X.B[a.id].T.copy() for a in q.arrows},
        I={v: X.J[v].T.copy() for v in q.vertices},
        J={v: -X.I[v].T for v in q.vertices},
    )


def apply_c(letter: Letter, X: Representation) -> Representation:
    gm = letter.gamma
    q = X.quiver
    return X.replace(
        A={a.id: gm.arrows[a.id] * X.A[a.id] for a in q.arrows},
        B={a.id: gm.arrows[a.id] * X.B[a.id] for a in q.arrows},
        I={v: gm.vertices[v] * X.I[v] for v in q.vertices},
        J={v: gm.vertices[v] * X.J[v] for v in q.vertices},
    )


def apply_d(letter: Letter, X: Representation) -> Representation:
    delta = letter.delta
    q = X.quiver
    A, B = {}, {}
    for a in q.arrows:
        if a.is_loop:
            t, z = delta.loop_params[a.id]
            A[a.id] = t * X.A[a.id] + z * X.B[a.id]
            B[a.id] = np.conj(z) * X.A[a.id] - t * X.B[a.id]
        else:
            t = delta.offloop_t.get(a.id, 1.0)
            A[a.id] = t * X.A[a.id]
            B[a.id] = -t * X.B[a.id]
    I = {v: delta.vertex_t.get(v, 1.0) * X.I[v] for v in q.vertices}
    J = {v: -delta.vertex_t.get(v, 1.0) * X.J[v] for v in q.vertices}
    return X.replace(A=A, B=B, I=I, J=J)


def apply_e(X: Representation) -> Representation:
    return X.conj()


def apply_letter(letter: Letter, X: Representation) -> Representation:
    if letter.kind == "b":
        return apply_b(X)
    if letter.kind == "c":
        return apply_c(letter, X)
    if letter.kind == "d":
        return apply_d(letter, X)
    if letter.kind == "e":
        return apply_e(X)
    raise InvalidSpecError(f"unknown letter {letter.kind}")


def apply_untwisted(spec: InvolutionSpec, X: Representation) -> Representation:
    Y = X
    for letter in reversed(spec.word):
        Y = apply_letter(letter, Y)
    return Y


def apply(spec: InvolutionSpec, X: Representation) -> Representation:
    validate_spec(spec, X.quiver, X.dims)
    return act(spec.g, spec.h, apply_untwisted(spec, X))


def cstar_action(lam: complex, X: Representation) -> Representation:
    """lambda . (A, B, I, J) = (A, lambda B, I, lambda J)."""
    return X.replace(
        B={k: lam * m for k, m in X.B.items()},
        J={k: lam * m for k, m in X.J.items()},
    )


# ============================================================
# Involutivity with structural diagnostics
# ============================================================

def _scalar_of(m: np.ndarray, tol: float) -> Optional[complex]:
    if m.size == 0:
        return 1.0 + 0.0j
    lam = m[0, 0]
    if np.max(np.abs(m - lam * np.eye(m.shape[0]))) <= tol * max(1.0, abs(lam)):
        return complex(lam)
    return None


def _json_scalar(z: Optional[complex]):
    return None if z is None else [float(np.real(z)), float(np.imag(z))]


def twist_diagnostics(spec: InvolutionSpec, q: Quiver, d: DimensionData, tol: float = 1e-8) -> Dict[str, Any]:
    """Per-vertex scalars of the twist square and the framing condition they must meet."""
    kinds = spec.letters
    conj = "e" in kinds
    has_b = "b" in kinds
    # sign of the untwisted word squared on I, J
    eps = -1.0 if has_b and "d" not in kinds else 1.0

    gb = spec.g.g if spec.g is not None else {v: np.eye(int(n)) for v, n in d.V.items()}
    hb = spec.h.h if spec.h is not None else {v: np.eye(int(r)) for v, r in d.W.items()}
    kappa = np.conj if conj else (lambda m: m)

    vertices: Dict[str, Any] = {}
    ok = True
    for v in q.vertices:
        g, h = gb[v], hb[v]
        if has_b:
            g2 = g @ np.linalg.inv(kappa(g)).T if g.size else g
            h2 = np.linalg.inv(kappa(h)).T @ h if h.size else h
        else:
            g2 = g @ kappa(g)
            h2 = kappa(h) @ h
        lam, mu = _scalar_of(g2, tol), _scalar_of(h2, tol)
        framing_ok = (
            lam is not None and mu is not None
            and (int(d.W[v]) == 0 or abs(eps * lam * mu - 1.0) <= tol)
        )
        ok = ok and framing_ok
        vertices[v] = {"g_square": _json_scalar(lam), "h_square": _json_scalar(mu), "framing_ok": framing_ok}

    arrows: Dict[str, Any] = {}
    for a in q.arrows:
        lt = vertices[a.tail]["g_square"]
        lh = vertices[a.head]["g_square"]
        if lt is None or lh is None:
            arrows[a.id] = False
            ok = False
            continue
        zt, zh = complex(*lt), complex(*lh)
        if has_b:
            # xi_tail = -xi_head; on a loop this forces the phase to be real (+1 or -1)
            cond = abs(zt * zh - 1.0) <= tol if not a.is_loop else abs(zt * zt - 1.0) <= tol
        else:
            # xi_tail = xi_head
            cond = abs(zt - zh) <= tol
        arrows[a.id] = bool(cond)
        ok = ok and bool(cond)

    family = "b" if has_b else "cde"
    condition = (
        "g g^-t = lambda, h^-t h = -lambda^-1 (times the word's framing sign), xi_tail = -xi_head"
        if has_b
        else "g^2 = lambda, h^2 = lambda^-1, xi_tail = xi_head"
    )
    return {
        "family": family,
        "condition": condition,
        "framing_sign": eps,
        "vertices": vertices,
        "arrows": arrows,
        "structural_ok": bool(ok),
    }


def is_involution(
    spec: InvolutionSpec,
    q: Quiver,
    d: DimensionData,
    trials: int = 5,
    seed: int = 0,
) -> Tuple[bool, Dict[str, Any]]:
    """Empirical involutivity on random data; structural conditions are diagnostics."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    validate_spec(spec, q, d)
    tol = default_tolerance()

    worst = 0.0
    for i in range(trials):
        X = random_representation(q, d, seed + i)
        back = apply(spec, apply(spec, X))
        worst = max(worst, (back - X).norm() / max(1.0, X.norm()))
    holds = worst <= tol

    report = twist_diagnostics(spec, q, d)
    report["max_residual"] = worst
    report["trials"] = trials
    if holds != report["structural_ok"]:
        logger.info("involutivity %s disagrees with structural check for word %s", holds, spec.letters)
    return holds, report


# ============================================================
# Signatures and brane types
# ============================================================

def word_signature(spec: InvolutionSpec) -> Signature:
    sig = Signature(1, 1, 1)
    for letter in spec.word:
        sig = sig * LETTER_SIGNATURES[letter.kind]
    return sig


def signature(spec: InvolutionSpec, q: Quiver, d: DimensionData, seed: int = 0) -> Signature:
    """Measured commutation signs of apply(spec, .) with Gamma_1, Gamma_2, Gamma_3."""
    validate_spec(spec, q, d)
    X = random_representation(q, d, seed)
    image = apply(spec, X)
    scale = max(1.0, X.norm())
    signs = []
    for k in (1, 2, 3):
        lhs = apply(spec, gamma(k, X))
        rhs = gamma(k, image)
        if (lhs - rhs).norm() <= 1e-10 * scale:
            signs.append(1)
        elif (lhs + rhs).norm() <= 1e-10 * scale:
            signs.append(-1)
        else:
            raise InconsistentSignatureError(
                f"word {spec.letters} neither commutes nor anticommutes with Gamma_{k}",
                {"k": k},
            )
    return Signature(*signs)


def brane_type(spec: InvolutionSpec) -> str:
    return word_signature(spec).brane_type()


# ============================================================
# Level behaviour
# ============================================================

def _laws() -> Dict[str, Any]:
    return {
        "identity": lambda m: m,
        "negate": lambda m: -m,
        "transpose": lambda m: m.T,
        "negative_transpose": lambda m: -m.T,
        "conjugate": lambda m: np.conj(m),
        "negative_conjugate": lambda m: -np.conj(m),
    }


def _observed_law(before: BlockMap, after: BlockMap, g: Dict[str, np.ndarray], tol: float) -> Optional[str]:
    scale = max(1.0, max((float(np.max(np.abs(m), initial=0.0)) for m in before.values()), default=0.0))
    for name, law in _laws().items():
        worst = 0.0
        for v, m in before.items():
            gv = g[v]
            predicted = gv @ law(m) @ np.linalg.inv(gv) if gv.size else law(m)
            worst = max(worst, float(np.max(np.abs(after[v] - predicted), initial=0.0)))
        if worst <= tol * scale:
            return name
    return None


@dataclass
class DescentReport:
    muC_law: Optional[str]
    mu3_law: Optional[str]
    preserves_levels: bool
    quotients: List[str] = field(default_factory=list)

    def to_dict(self):
        return {
            "muC_law": self.muC_law,
            "mu3_law": self.mu3_law,
            "preserves_levels": self.preserves_levels,
            "quotients": self.quotients,
        }


def descent_report(spec: InvolutionSpec, X: Representation) -> DescentReport:
    before = moment_maps(X)
    after = moment_maps(apply(spec, X))
    g = spec.g.g if spec.g is not None else {v: np.eye(int(n)) for v, n in X.dims.V.items()}

    muC_law = _observed_law(before.muC, after.muC, g, 1e-10)
    mu3_law = _observed_law(before.mu3, after.mu3, g, 1e-10)
    preserves = mu3_law in LEVEL_PRESERVING_LAWS
    quotients = ["N0", "N1", "N-1", "Nreg"] if preserves else ["N0", "Nreg"]
    return DescentReport(muC_law=muC_law, mu3_law=mu3_law, preserves_levels=preserves, quotients=quotients)


def flips_levels(spec: InvolutionSpec) -> bool:
    """b maps mu3 to -mu3^t; c, d and e keep every central level."""
    return "b" in spec.letters
