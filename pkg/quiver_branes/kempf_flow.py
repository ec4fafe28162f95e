# quiver_branes/kempf_flow.py
"""
Descent along the GL(V)-orbit towards mu3 = i c 1.

The objective f = sum_i ||m_i - c||^2 with m = -i mu3 (Hermitian) is
minimised over g = exp(s), s Hermitian per vertex. Each step moves the base
point by exp(tau xi) with xi the Newton direction -H^-1(R) of the linearised
level equation (falling back to -R), and backtracks on f.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np
import scipy.linalg

from .config import flow_max_iters
from .errors import LevelPreconditionError, NotStableError
from .hk_geometry import complex_moment, infinitesimal_action, moment_residual, real_moment, real_moment_differential
from .quiver_core import act, jordan_representation
from .stability import is_costable, is_stable
from .types import BlockMap, GaugeElement, LevelSpec, Representation

logger = logging.getLogger(__name__)

ARMIJO = 1e-4
MAX_HALVINGS = 60


@dataclass
class FlowResult:
    g: GaugeElement
    residual: float
    iterations: int
    converged: bool
    level: float
    stable_side_sign: int
    objective_history: List[float] = field(default_factory=list)
    max_complex_residual: float = 0.0

    def to_dict(self):
        return {
            "g": self.g.to_dict()["g"],
            "residual": self.residual,
            "iterations": self.iterations,
            "converged": self.converged,
            "level": self.level,
            "stable_side_sign": self.stable_side_sign,
            "max_complex_residual": self.max_complex_residual,
        }


def stable_side_sign() -> int:
    """Sign of Im mu3 on the stable scalar datum (0, 0, 1, 0)."""
    scalar_datum = jordan_representation(0, 0, 1, 0)
    value = real_moment(scalar_datum)[scalar_datum.quiver.vertices[0]][0, 0]
    return 1 if value.imag > 0 else -1


# ============================================================
# Objective, Hessian and gradient
# ============================================================

def _hermitian_basis(n: int) -> List[np.ndarray]:
    basis = []
    for i in range(n):
        m = np.zeros((n, n), dtype=complex)
        m[i, i] = 1.0
        basis.append(m)
    for i in range(n):
        for j in range(i + 1, n):
            m = np.zeros((n, n), dtype=complex)
            m[i, j] = m[j, i] = 1.0 / np.sqrt(2.0)
            basis.append(m)
            m = np.zeros((n, n), dtype=complex)
            m[i, j], m[j, i] = 1j / np.sqrt(2.0), -1j / np.sqrt(2.0)
            basis.append(m)
    return basis


def _basis(X: Representation) -> List[Tuple[str, np.ndarray]]:
    return [(v, b) for v in X.quiver.vertices for b in _hermitian_basis(int(X.dims.V[v]))]


def _coords(blocks: BlockMap, basis: List[Tuple[str, np.ndarray]]) -> np.ndarray:
    return np.array([np.sum(blocks[v] * np.conj(b)).real for v, b in basis])


def _from_coords(x: np.ndarray, basis, X: Representation) -> BlockMap:
    out = {v: np.zeros((int(n), int(n)), dtype=complex) for v, n in X.dims.V.items()}
    for coeff, (v, b) in zip(x, basis):
        out[v] = out[v] + coeff * b
    return out


def level_residual_blocks(X: Representation, level: LevelSpec) -> BlockMap:
    """R = -i mu3(X) - c 1 (Hermitian)."""
    return {v: -1j * m - level.c * np.eye(m.shape[0]) for v, m in real_moment(X).items()}


def level_objective(X: Representation, level: LevelSpec) -> float:
    return moment_residual(level_residual_blocks(X, level)) ** 2


def _hessian(X: Representation, basis) -> np.ndarray:
    cols = []
    for v, b in basis:
        xi = {w: np.zeros((int(n), int(n)), dtype=complex) for w, n in X.dims.V.items()}
        xi[v] = b
        d = real_moment_differential(X, infinitesimal_action(xi, X))
        cols.append(_coords({w: -1j * m for w, m in d.items()}, basis))
    return np.column_stack(cols) if cols else np.zeros((0, 0))


def level_gradient(X: Representation, level: LevelSpec) -> BlockMap:
    """Gradient of s -> f(exp(s) . X) at s = 0, Hermitian per vertex."""
    basis = _basis(X)
    H = _hessian(X, basis)
    r = _coords(level_residual_blocks(X, level), basis)
    return _from_coords(2.0 * H.T @ r, basis, X)


def exp_gauge(xi: BlockMap) -> Dict[str, np.ndarray]:
    return {v: scipy.linalg.expm(m) if m.size else m for v, m in xi.items()}


# ============================================================
# Flow
# ============================================================

def _check_preconditions(X: Representation, level: LevelSpec, sign: int) -> None:
    muC = moment_residual(complex_moment(X))
    if muC > 1e-8 * max(1.0, X.norm() ** 2):
        raise LevelPreconditionError("flow needs mu_C(X) = 0", {"muC_residual": muC})
    side = level.c * sign
    if side > 0 and not is_stable(X):
        raise NotStableError("flow to a stable-side level needs a stable representation")
    if side < 0 and not is_costable(X):
        raise NotStableError("flow to a costable-side level needs a costable representation")
    if side == 0 and not (is_stable(X) and is_costable(X)):
        raise NotStableError("flow to level 0 needs a regular representation")


def flow_to_level(
    X: Representation,
    level: LevelSpec = LevelSpec(),
    tol: float = 1e-10,
    max_iters: int | None = None,
) -> FlowResult:
    max_iters = flow_max_iters() if max_iters is None else max_iters
    sign = stable_side_sign()
    _check_preconditions(X, level, sign)

    basis = _basis(X)
    g_total = {v: np.eye(int(n), dtype=complex) for v, n in X.dims.V.items()}
    Y = X
    f = level_objective(Y, level)
    history = [f]
    worst_muC = moment_residual(complex_moment(Y))
    iterations = 0

    while np.sqrt(f) > tol and iterations < max_iters:
        R = level_residual_blocks(Y, level)
        r = _coords(R, basis)
        H = _hessian(Y, basis)
        step_coords, *_ = np.linalg.lstsq(H, r, rcond=None)
        slope = -2.0 * float(r @ (H @ step_coords))
        if not np.all(np.isfinite(step_coords)) or slope >= 0.0:
            step_coords = r
            slope = -2.0 * float(r @ (H @ r))
        xi = _from_coords(-step_coords, basis, X)

        tau = 1.0
        accepted = False
        for _ in range(MAX_HALVINGS):
            step = exp_gauge({v: tau * m for v, m in xi.items()})
            candidate = act(GaugeElement(step), None, Y)
            f_new = level_objective(candidate, level)
            if f_new < f and f_new <= f + ARMIJO * tau * slope:
                accepted = True
                break
            tau *= 0.5
        if not accepted:
            break

        Y = candidate
        g_total = {v: step[v] @ g_total[v] for v in g_total}
        f = f_new
        history.append(f)
        worst_muC = max(worst_muC, moment_residual(complex_moment(Y)))
        iterations += 1

    # positive part of the polar decomposition; the unitary part does not move the level
    positive = {}
    for v, m in g_total.items():
        if m.size:
            _, p = scipy.linalg.polar(m, side="right")
            positive[v] = 0.5 * (p + p.conj().T)
        else:
            positive[v] = m
    g = GaugeElement.from_blocks(positive)
    residual = np.sqrt(level_objective(act(g, None, X), level))
    converged = bool(residual <= tol)
    if not converged:
        logger.warning(json.dumps({
            "event": "flow_not_converged",
            "residual": float(residual),
            "iterations": iterations,
            "level": level.c,
        }, ensure_ascii=True))
    return FlowResult(
        g=g,
        residual=float(residual),
        iterations=iterations,
        converged=converged,
        level=level.c,
        stable_side_sign=sign,
        objective_history=history,
        max_complex_residual=float(worst_muC),
    )


def flowed_point(X: Representation, result: FlowResult) -> Representation:
    return act(result.g, None, X)
