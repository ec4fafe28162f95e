# quiver_branes/hk_geometry.py
"""
Flat hyperkähler structure on the representation space.

Moment maps per vertex i use head-minus-tail sums:

    muC_i = sum_{head(a)=i} A_a B_a - sum_{tail(a)=i} B_a A_a + I_i J_i
    mu3_i = i/2 ( sum_head A A* - sum_tail A* A + sum_tail B B* - sum_head B* B + I I* - J* J )

which for the Jordan quiver are [A,B] + IJ and i/2([A,A*] + [B,B*] + II* - J*J).
"""

from __future__ import annotations

from typing import Callable, Dict

import numpy as np

from .errors import ShapeMismatchError
from .types import BlockMap, MomentValues, Representation


# ============================================================
# Metric, complex structures, symplectic forms
# ============================================================

def _check_same_shapes(X: Representation, Y: Representation) -> None:
    for (kind, key, m), (_, _, n) in zip(X.blocks(), Y.blocks()):
        if m.shape != n.shape:
            raise ShapeMismatchError(
                f"{kind} block {key} differs in shape",
                {"left": list(m.shape), "right": list(n.shape)},
            )


def metric(X: Representation, Y: Representation) -> float:
    """eta(X, Y) = Re sum tr(X_block Y_block^*)."""
    _check_same_shapes(X, Y)
    return float(sum(np.sum(m * np.conj(n)).real for (_, _, m), (_, _, n) in zip(X.blocks(), Y.blocks())))


def gamma(k: int, X: Representation) -> Representation:
    if k == 1:
        return X.scaled(1j)
    if k not in (2, 3):
        raise ValueError(f"complex structure index must be 1, 2 or 3, got {k}")

    q = X.quiver
    A = {a.id: -X.B[a.id].conj().T for a in q.arrows}
    B = {a.id: X.A[a.id].conj().T for a in q.arrows}
    I = {v: -X.J[v].conj().T for v in q.vertices}
    J = {v: X.I[v].conj().T for v in q.vertices}
    Y = X.replace(A=A, B=B, I=I, J=J)
    return Y if k == 2 else Y.scaled(1j)


def omega(k: int, X: Representation, Y: Representation) -> float:
    return metric(X, gamma(k, Y))


# ============================================================
# Moment maps
# ============================================================

def _zeros(X: Representation) -> BlockMap:
    return {v: np.zeros((int(n), int(n)), dtype=complex) for v, n in X.dims.V.items()}


def _complex_pair(X: Representation, Y: Representation) -> BlockMap:
    """Bilinear form with muC(X) = pair(X, X)."""
    out = _zeros(X)
    for a in X.quiver.arrows:
        out[a.head] = out[a.head] + X.A[a.id] @ Y.B[a.id]
        out[a.tail] = out[a.tail] - Y.B[a.id] @ X.A[a.id]
    for v in X.quiver.vertices:
        out[v] = out[v] + X.I[v] @ Y.J[v]
    return out


def _real_pair(X: Representation, Y: Representation) -> BlockMap:
    """Sesquilinear form with mu3(X) = pair(X, X)."""
    out = _zeros(X)
    for a in X.quiver.arrows:
        A, As = X.A[a.id], Y.A[a.id].conj().T
        B, Bs = X.B[a.id], Y.B[a.id].conj().T
        out[a.head] = out[a.head] + A @ As - Bs @ B
        out[a.tail] = out[a.tail] - As @ A + B @ Bs
    for v in X.quiver.vertices:
        out[v] = out[v] + X.I[v] @ Y.I[v].conj().T - Y.J[v].conj().T @ X.J[v]
    return {v: 0.5j * m for v, m in out.items()}


def complex_moment(X: Representation) -> BlockMap:
    return _complex_pair(X, X)


def real_moment(X: Representation) -> BlockMap:
    return _real_pair(X, X)


def moment_maps(X: Representation) -> MomentValues:
    muC = complex_moment(X)
    mu3 = real_moment(X)

    # generalized [A*, B*] term and J*I*, as displayed; muC = -mu1 - i mu2 is a cross-check
    star = _zeros(X)
    for a in X.quiver.arrows:
        As, Bs = X.A[a.id].conj().T, X.B[a.id].conj().T
        star[a.tail] = star[a.tail] + As @ Bs
        star[a.head] = star[a.head] - Bs @ As

    mu1, mu2 = {}, {}
    for v in X.quiver.vertices:
        comm = muC[v] - X.I[v] @ X.J[v]
        IJ = X.I[v] @ X.J[v]
        JsIs = X.J[v].conj().T @ X.I[v].conj().T
        mu1[v] = -0.5 * (comm + star[v] + IJ - JsIs)
        mu2[v] = -(comm - star[v] + IJ + JsIs) / 2j
    return MomentValues(mu1=mu1, mu2=mu2, mu3=mu3, muC=muC)


def moment_residual(values: BlockMap, target: BlockMap | None = None) -> float:
    total = 0.0
    for v, m in values.items():
        diff = m if target is None else m - target[v]
        total += float(np.sum(np.abs(diff) ** 2))
    return float(np.sqrt(total))


# ============================================================
# Differentials and infinitesimal action
# ============================================================

def complex_moment_differential(X: Representation, T: Representation) -> BlockMap:
    a, b = _complex_pair(T, X), _complex_pair(X, T)
    return {v: a[v] + b[v] for v in a}


def real_moment_differential(X: Representation, T: Representation) -> BlockMap:
    a, b = _real_pair(T, X), _real_pair(X, T)
    return {v: a[v] + b[v] for v in a}


def moment_differentials(X: Representation, T: Representation) -> Dict[int, BlockMap]:
    """d mu_k at X along T for k = 1, 2, 3."""
    dC = complex_moment_differential(X, T)
    d1 = {v: -0.5 * (m - m.conj().T) for v, m in dC.items()}
    d2 = {v: -(m + m.conj().T) / 2j for v, m in dC.items()}
    return {1: d1, 2: d2, 3: real_moment_differential(X, T)}


def infinitesimal_action(xi: BlockMap, X: Representation) -> Representation:
    """d/dt (exp(t xi), 1) . X at t = 0."""
    q = X.quiver
    A = {a.id: xi[a.head] @ X.A[a.id] - X.A[a.id] @ xi[a.tail] for a in q.arrows}
    B = {a.id: xi[a.tail] @ X.B[a.id] - X.B[a.id] @ xi[a.head] for a in q.arrows}
    I = {v: xi[v] @ X.I[v] for v in q.vertices}
    J = {v: -X.J[v] @ xi[v] for v in q.vertices}
    return X.replace(A=A, B=B, I=I, J=J)


# ============================================================
# Real flattening: A by arrow order, then B, I, J; row-major;
# all real parts followed by all imaginary parts
# ============================================================

def to_real_vector(X: Representation) -> np.ndarray:
    parts = [m.ravel() for _, _, m in X.blocks()]
    z = np.concatenate(parts) if parts else np.zeros(0, dtype=complex)
    return np.concatenate([z.real, z.imag])


def from_real_vector(vec: np.ndarray, template: Representation) -> Representation:
    half = vec.shape[0] // 2
    z = vec[:half] + 1j * vec[half:]
    offset = 0
    parts: Dict[str, BlockMap] = {"A": {}, "B": {}, "I": {}, "J": {}}
    for kind, key, m in template.blocks():
        size = m.size
        parts[kind][key] = z[offset:offset + size].reshape(m.shape)
        offset += size
    return template.replace(**parts)


def ambient_real_dim(X: Representation) -> int:
    return 2 * sum(m.size for _, _, m in X.blocks())


def real_matrix(fn: Callable[[Representation], Representation], X: Representation) -> np.ndarray:
    """Matrix of a real-linear map on the flattened representation space."""
    N = ambient_real_dim(X)
    cols = []
    for j in range(N):
        e = np.zeros(N)
        e[j] = 1.0
        cols.append(to_real_vector(fn(from_real_vector(e, X))))
    return np.column_stack(cols) if cols else np.zeros((0, 0))


def blocks_to_real(values: BlockMap, order) -> np.ndarray:
    z = np.concatenate([values[v].ravel() for v in order]) if order else np.zeros(0, dtype=complex)
    return np.concatenate([z.real, z.imag])


def moment_jacobian(X: Representation) -> np.ndarray:
    """Rows: d mu_1, d mu_2, d mu_3 at X, each flattened over vertices as real vectors."""
    N = ambient_real_dim(X)
    order = X.quiver.vertices
    cols = []
    for j in range(N):
        e = np.zeros(N)
        e[j] = 1.0
        d = moment_differentials(X, from_real_vector(e, X))
        cols.append(np.concatenate([blocks_to_real(d[k], order) for k in (1, 2, 3)]))
    return np.column_stack(cols)
