# quiver_branes/monad_p2.py
"""
Jordan-quiver monad on P^2:

    alpha^X(p) = [x0 A - x1; x0 B - x2; x0 J]          (2n+r) x n
    beta^X(p)  = [-x0 B + x2, x0 A - x1, x0 I]          n x (2n+r)

beta . alpha = x0^2 ([A,B] + IJ). The line at infinity is {x0 = 0}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from .errors import (
    AdhmViolationError,
    InvalidSpecError,
    PointNotOnLineError,
    SpecMismatchError,
    WrongQuiverError,
    ZeroPointError,
)
from .hk_geometry import complex_moment
from .involutions import apply, validate_spec
from .linalg import kernel, numerical_rank, span
from .types import (
    DeltaAssignment,
    GammaAssignment,
    InvolutionSpec,
    Letter,
    Quiver,
    Representation,
)


# ============================================================
# Points and involutions of P^2
# ============================================================

@dataclass(frozen=True)
class P2Point:
    x0: complex
    x1: complex
    x2: complex

    @classmethod
    def from_vector(cls, v) -> "P2Point":
        return cls(complex(v[0]), complex(v[1]), complex(v[2]))

    def vector(self) -> np.ndarray:
        return np.array([self.x0, self.x1, self.x2], dtype=complex)

    def norm(self) -> float:
        return float(np.linalg.norm(self.vector()))

    def normalized(self) -> "P2Point":
        n = self.norm()
        if n == 0.0:
            raise ZeroPointError("[0:0:0] is not a point of P^2")
        return P2Point.from_vector(self.vector() / n)

    def same_point(self, other: "P2Point", tol: float = 1e-10) -> bool:
        u, w = self.normalized().vector(), other.normalized().vector()
        return abs(abs(np.vdot(u, w)) - 1.0) <= tol

    def to_dict(self):
        return [[z.real, z.imag] for z in (self.x0, self.x1, self.x2)]


P2_KINDS = ("sigma1", "sigma2", "tau0", "tau1", "tau2")


@dataclass(frozen=True)
class P2Involution:
    kind: str
    t: float = 1.0
    z: complex = 0.0

    def __post_init__(self):
        if self.kind not in P2_KINDS:
            raise InvalidSpecError(f"unknown involution of P^2: {self.kind}")
        if self.kind in ("sigma2", "tau2"):
            if abs(self.t ** 2 + abs(self.z) ** 2 - 1.0) > 1e-12:
                raise InvalidSpecError("sigma2/tau2 need t^2 + |z|^2 = 1", {"t": self.t})
        if self.kind == "tau2" and abs(complex(self.z).imag) > 1e-12:
            # conj . sigma2 squares to the identity only for real z
            raise InvalidSpecError("tau2 needs a real z")

    @property
    def conjugates(self) -> bool:
        return self.kind.startswith("tau")

    def _sigma2(self, v: np.ndarray) -> np.ndarray:
        t, z = self.t, complex(self.z)
        return np.array([v[0], t * v[1] + z * v[2], np.conj(z) * v[1] - t * v[2]], dtype=complex)

    def __call__(self, p: P2Point) -> P2Point:
        v = p.vector()
        if self.conjugates:
            v = np.conj(v)
        if self.kind in ("sigma1", "tau1"):
            v = np.array([-v[0], v[1], v[2]], dtype=complex)
        elif self.kind in ("sigma2", "tau2"):
            v = self._sigma2(v)
        return P2Point.from_vector(v)


def sample_points(count: int, seed: int) -> List[P2Point]:
    """Seeded uniform points on the unit sphere of C^3 plus coordinate points."""
    rng = np.random.default_rng(seed)
    pts = [
        P2Point(1, 0, 0), P2Point(0, 1, 0), P2Point(0, 0, 1),
        P2Point(1, 1, 0), P2Point(1, 0, 1), P2Point(0, 1, 1),
    ]
    for _ in range(count):
        v = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        pts.append(P2Point.from_vector(v / np.linalg.norm(v)))
    return pts


# ============================================================
# Monad evaluation
# ============================================================

@dataclass
class MonadEvaluation:
    alpha: np.ndarray
    beta: np.ndarray
    point: P2Point

    def to_dict(self):
        return {
            "point": self.point.to_dict(),
            "alpha_rank": numerical_rank(self.alpha),
            "beta_rank": numerical_rank(self.beta),
        }


def _jordan_blocks(X: Representation) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    if not X.quiver.is_jordan:
        raise WrongQuiverError("monad data needs the Jordan quiver")
    a = X.quiver.arrows[0].id
    v = X.quiver.vertices[0]
    return X.A[a], X.B[a], X.I[v], X.J[v]


def adhm_residual(X: Representation) -> np.ndarray:
    _jordan_blocks(X)
    return complex_moment(X)[X.quiver.vertices[0]]


def _alpha(A, B, J, x: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    one = np.eye(n)
    return np.vstack([x[0] * A - x[1] * one, x[0] * B - x[2] * one, x[0] * J])


def _beta(A, B, I, x: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    one = np.eye(n)
    return np.hstack([-x[0] * B + x[2] * one, x[0] * A - x[1] * one, x[0] * I])


def monad_at(X: Representation, p: P2Point) -> MonadEvaluation:
    A, B, I, J = _jordan_blocks(X)
    if p.norm() == 0.0:
        raise ZeroPointError("[0:0:0] is not a point of P^2")
    x = p.vector()
    return MonadEvaluation(alpha=_alpha(A, B, J, x), beta=_beta(A, B, I, x), point=p)


def require_adhm(X: Representation) -> None:
    res = adhm_residual(X)
    if np.linalg.norm(res) > 1e-8 * max(1.0, X.norm() ** 2):
        raise AdhmViolationError("[A,B] + IJ is not zero", {"residual": float(np.linalg.norm(res))})


def fiber_dim(X: Representation, p: P2Point) -> int:
    """dim ker beta(p) - rank alpha(p)."""
    require_adhm(X)
    ev = monad_at(X, p.normalized())
    cols = ev.beta.shape[1]
    return cols - numerical_rank(ev.beta) - numerical_rank(ev.alpha)


def monad_ranks(X: Representation, p: P2Point) -> Dict[str, int]:
    ev = monad_at(X, p.normalized())
    alpha_rank = numerical_rank(ev.alpha)
    beta_rank = numerical_rank(ev.beta)
    return {
        "alpha_rank": alpha_rank,
        "beta_rank": beta_rank,
        "fiber_dim": ev.beta.shape[1] - beta_rank - alpha_rank,
    }


def beta_surjective_everywhere(X: Representation, points: List[P2Point]) -> bool:
    n = int(X.dims.V[X.quiver.vertices[0]])
    return all(numerical_rank(monad_at(X, p).beta) == n for p in points)


def framing_check(X: Representation, p: P2Point) -> float:
    """Condition number of ker beta(p) / im alpha(p) -> W on the line x0 = 0."""
    A, _, _, _ = _jordan_blocks(X)
    if abs(p.x0) > 1e-12 * max(1.0, p.norm()):
        raise PointNotOnLineError("framing is only defined on the line x0 = 0")
    ev = monad_at(X, p.normalized())
    n = A.shape[0]

    ker_beta = kernel(ev.beta)
    im_alpha = span(ev.alpha)
    if im_alpha.shape[1]:
        residual = ker_beta - im_alpha @ (im_alpha.conj().T @ ker_beta)
    else:
        residual = ker_beta
    quotient = span(residual)
    w_block = quotient[2 * n:, :]
    if w_block.size == 0:
        return 1.0
    if w_block.shape[0] != w_block.shape[1]:
        return float("inf")
    return float(np.linalg.cond(w_block))


def dual_monad_residual(X: Representation, p: P2Point) -> float:
    """alpha^{b(X)} = P beta^X(p)^t and beta^{b(X)} = alpha^X(p)^t Q with signed block permutations."""
    A, B, I, J = _jordan_blocks(X)
    n, r = I.shape
    x = p.normalized().vector()
    ev = monad_at(X, p.normalized())
    At, Bt, It, Jt = A.T, B.T, J.T, -I.T

    def blocks(signs: Dict[Tuple[int, int], float]) -> np.ndarray:
        sizes = [n, n, r]
        starts = [0, n, 2 * n]
        out = np.zeros((2 * n + r, 2 * n + r))
        for (i, j), s in signs.items():
            out[starts[i]:starts[i] + sizes[i], starts[j]:starts[j] + sizes[j]] = s * np.eye(sizes[i])
        return out

    P = blocks({(0, 1): 1.0, (1, 0): -1.0, (2, 2): -1.0})
    Q = blocks({(0, 1): 1.0, (1, 0): -1.0, (2, 2): 1.0})
    alpha_dual = _alpha(At, Bt, Jt, x)
    beta_dual = _beta(At, Bt, It, x)
    return float(
        np.linalg.norm(alpha_dual - P @ ev.beta.T) + np.linalg.norm(beta_dual - ev.alpha.T @ Q)
    )


def real_structure_residual(X: Representation, p: P2Point) -> float:
    """For real X: alpha(conj p) = conj alpha(p), same for beta."""
    ev = monad_at(X, p)
    ev_bar = monad_at(X, P2Point.from_vector(np.conj(p.vector())))
    return float(
        np.linalg.norm(ev_bar.alpha - np.conj(ev.alpha)) + np.linalg.norm(ev_bar.beta - np.conj(ev.beta))
    )


# ============================================================
# Involutions of P^2 and their ADHM counterparts
# ============================================================

def pullback_spec(inv: P2Involution, n: int, r: int, vertex: str = "0", arrow: str = "a") -> InvolutionSpec:
    """Untwisted letter word inducing the pullback along inv (vertex t = 1 for d)."""
    q = Quiver.jordan(vertex, arrow)
    c = Letter("c", gamma=GammaAssignment.constant(q, -1))
    d = Letter("d", delta=DeltaAssignment.uniform(q, inv.t, inv.z, vertex_t=1.0))
    e = Letter("e")
    words = {
        "sigma1": (c,),
        "sigma2": (d,),
        "tau0": (e,),
        "tau1": (e, c),
        "tau2": (e, d),
    }
    return InvolutionSpec(word=words[inv.kind])


_EXPECTED_LETTERS = {"sigma1": "c", "sigma2": "d", "tau0": "e", "tau1": "ce", "tau2": "de"}


def _square_blocks(spec: InvolutionSpec, inv: P2Involution, n: int, r: int) -> Tuple[np.ndarray, float]:
    """Block matrix E on V+V+W and sign s with alpha^{u(X)}(inv p) = E kappa(alpha^X(p))."""
    letters = "".join(sorted(spec.letters))
    if letters != _EXPECTED_LETTERS[inv.kind]:
        raise SpecMismatchError(
            f"spec word {spec.letters} does not induce {inv.kind}",
            {"expected_letters": _EXPECTED_LETTERS[inv.kind]},
        )
    c = spec.letter("c")
    if c is not None:
        signs = list(c.gamma.arrows.values()) + list(c.gamma.vertices.values())
        if any(s != -1 for s in signs):
            raise SpecMismatchError("sigma1 needs gamma = -1 everywhere")

    E = np.eye(2 * n + r, dtype=complex)
    sign = 1.0
    d = spec.letter("d")
    if d is not None:
        (t, z), = d.delta.loop_params.values()
        if abs(t - inv.t) > 1e-12 or abs(complex(z) - complex(inv.z)) > 1e-12:
            raise SpecMismatchError("d parameters differ from the involution of P^2")
        tv = next(iter(d.delta.vertex_t.values()), 1.0)
        one = np.eye(n)
        E[:n, :n] = t * one
        E[:n, n:2 * n] = z * one
        E[n:2 * n, :n] = np.conj(z) * one
        E[n:2 * n, n:2 * n] = -t * one
        E[2 * n:, 2 * n:] = -tv * np.eye(r)
        sign = -1.0
    return E, sign


def verify_monad_square(
    spec: InvolutionSpec,
    inv: P2Involution,
    X: Representation,
    sample_count: int = 50,
    seed: int = 0,
) -> float:
    """
    Max normalized residual of

        F kappa(alpha^X(p)) = alpha^{spec X}(inv p) g
        beta^{spec X}(inv p) F = s g kappa(beta^X(p))

    with F = diag(g, g, h^-1) E over sampled points.
    """
    A, _, I, _ = _jordan_blocks(X)
    n, r = I.shape
    require_adhm(X)
    validate_spec(spec, X.quiver, X.dims)
    E, sign = _square_blocks(spec, inv, n, r)

    v = X.quiver.vertices[0]
    g = spec.g.g[v] if spec.g is not None else np.eye(n, dtype=complex)
    h = spec.h.h[v] if spec.h is not None else np.eye(r, dtype=complex)
    G = np.zeros((2 * n + r, 2 * n + r), dtype=complex)
    G[:n, :n] = g
    G[n:2 * n, n:2 * n] = g
    G[2 * n:, 2 * n:] = np.linalg.inv(h) if r else h
    F = G @ E

    Y = apply(spec, X)
    kappa = np.conj if inv.conjugates else (lambda m: m)
    worst = 0.0
    rng = np.random.default_rng(seed)
    for _ in range(sample_count):
        w = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        p = P2Point.from_vector(w / np.linalg.norm(w))
        src = monad_at(X, p)
        dst = monad_at(Y, inv(p))
        res_alpha = np.linalg.norm(F @ kappa(src.alpha) - dst.alpha @ g)
        res_beta = np.linalg.norm(dst.beta @ F - sign * g @ kappa(src.beta))
        scale = max(1.0, np.linalg.norm(F) * (np.linalg.norm(src.alpha) + np.linalg.norm(src.beta)))
        worst = max(worst, float((res_alpha + res_beta) / scale))
    return worst
