# quiver_branes/engine.py

from __future__ import annotations

import logging
from typing import Any, Dict, Optional

from .catalog import build
from .config import default_seed, default_samples, default_tolerance
from .errors import PreconditionError
from .hk_geometry import complex_moment, moment_residual, real_moment
from .involutions import (
    apply,
    brane_type,
    descent_report,
    is_involution,
    signature,
    validate_spec,
    word_signature,
)
from .kempf_flow import flow_to_level, flowed_point
from .monad_p2 import (
    P2Involution,
    P2Point,
    monad_ranks,
    pullback_spec,
    sample_points,
    verify_monad_square,
    require_adhm,
)
from .orbits import is_identity_witness, orbit_witness
from .schemas import encode_representation
from .stability import is_stable, stability_report
from .tangent import brane_dimensions, quotient_tangent
from .types import InvolutionSpec, LevelSpec, Representation

logger = logging.getLogger(__name__)

SQUARE_TOL = 1e-10


def _fixed_status(spec: InvolutionSpec, X: Representation, tol: float) -> Dict[str, Any]:
    validate_spec(spec, X.quiver, X.dims)
    Y = apply(spec, X)
    defect = (Y - X).norm()
    witness = orbit_witness(X, Y) if is_stable(X) else None
    involutive, _ = is_involution(spec, X.quiver, X.dims)
    return {
        "word": spec.letters,
        "brane_type": brane_type(spec),
        "involutive": involutive,
        "exact_fixed": bool(defect <= tol * max(1.0, X.norm())),
        "defect": float(defect),
        "orbit_fixed": witness is not None,
        "identity_witness": is_identity_witness(witness),
    }


def _compare(expected: Dict[str, Any], observed: Dict[str, Any], prefix: str = "") -> list:
    mismatches = []
    for key in ("adhm_zero", "regular", "brane_type", "fixed"):
        if key in expected and expected[key] is not None and key in observed:
            if expected[key] != observed[key]:
                mismatches.append({"claim": prefix + key, "expected": expected[key], "observed": observed[key]})
    return mismatches


class QuiverBranesEngine:
    """Report builders shared by the CLI and the HTTP API. Every report carries "ok"."""

    @staticmethod
    def check(
        X: Representation,
        spec: Optional[InvolutionSpec] = None,
        expected: Optional[Dict[str, Any]] = None,
        variants: Optional[Dict[str, InvolutionSpec]] = None,
        variant_expected: Optional[Dict[str, Dict[str, Any]]] = None,
        tol: Optional[float] = None,
    ) -> Dict[str, Any]:
        tol = default_tolerance() if tol is None else tol
        muC = moment_residual(complex_moment(X))
        stab = stability_report(X)
        report: Dict[str, Any] = {
            "valid": True,
            "adhm_residual": muC,
            "mu3_residual_at_half": moment_residual(real_moment(X), LevelSpec().target(X.dims)),
            "stability": stab,
        }
        observed = {
            "adhm_zero": bool(muC <= tol * max(1.0, X.norm() ** 2)),
            "regular": bool(stab["regular"]),
        }
        mismatches = []
        if spec is not None:
            status = _fixed_status(spec, X, tol)
            report["spec"] = status
            observed["brane_type"] = status["brane_type"]
            observed["fixed"] = status["orbit_fixed"]
        for name, variant in (variants or {}).items():
            status = _fixed_status(variant, X, tol)
            report.setdefault("variants", {})[name] = status
            mismatches += _compare(
                (variant_expected or {}).get(name, {}),
                {"brane_type": status["brane_type"], "fixed": status["orbit_fixed"]},
                prefix=f"{name}.",
            )
        mismatches += _compare(expected or {}, observed)

        report["observed"] = observed
        report["mismatches"] = mismatches
        if expected:
            report["ok"] = not mismatches
        else:
            report["ok"] = observed.get("fixed", True) and not mismatches
        return report

    @staticmethod
    def involution(
        action: str,
        spec: InvolutionSpec,
        X: Optional[Representation] = None,
        seed: Optional[int] = None,
        tol: Optional[float] = None,
    ) -> Dict[str, Any]:
        seed = default_seed() if seed is None else seed
        tol = default_tolerance() if tol is None else tol
        sig = word_signature(spec)

        if action == "classify":
            report: Dict[str, Any] = {
                "word": spec.letters,
                "signature": sig.to_dict(),
                "brane_type": sig.brane_type(),
                "ok": True,
            }
            if X is not None:
                measured = signature(spec, X.quiver, X.dims, seed)
                report["measured_signature"] = measured.to_dict()
                report["ok"] = measured == sig
            return report

        if X is None:
            raise PreconditionError(f"involution --action {action} needs --input")
        validate_spec(spec, X.quiver, X.dims)

        if action == "apply":
            return {"word": spec.letters, **encode_representation(apply(spec, X)), "ok": True}

        if action == "verify":
            involutive, diagnostics = is_involution(spec, X.quiver, X.dims, seed=seed)
            status = _fixed_status(spec, X, tol)
            return {
                "word": spec.letters,
                "brane_type": sig.brane_type(),
                "involutive": involutive,
                "diagnostics": diagnostics,
                "fixed": status,
                "descent": descent_report(spec, X).to_dict(),
                "ok": bool(involutive and status["orbit_fixed"]),
            }

        raise PreconditionError(f"unknown involution action {action}", {"known": ["classify", "apply", "verify"]})

    @staticmethod
    def stability(X: Representation) -> Dict[str, Any]:
        return {**stability_report(X), "ok": True}

    @staticmethod
    def flow(
        X: Representation,
        level: float = 0.5,
        tol: float = 1e-10,
        max_iters: Optional[int] = None,
    ) -> Dict[str, Any]:
        result = flow_to_level(X, LevelSpec(level), tol=tol, max_iters=max_iters)
        return {
            **result.to_dict(),
            "flowed": encode_representation(flowed_point(X, result)),
            "ok": result.converged,
        }

    @staticmethod
    def tangent(
        X: Representation,
        spec: Optional[InvolutionSpec] = None,
        level: Optional[float] = None,
        expected: Optional[Dict[str, Any]] = None,
    ) -> Dict[str, Any]:
        if spec is not None:
            validate_spec(spec, X.quiver, X.dims)
            report = brane_dimensions(spec, X)
            dims = (expected or {}).get("dims") or {}
            matches = all(report.get(k) == v for k, v in dims.items())
            report["ok"] = bool(report["flow_converged"] and report["lagrangian"]["ok"] and matches)
            return report

        target = LevelSpec(0.5 if level is None else level)
        result = flow_to_level(X, target)
        frame = quotient_tangent(flowed_point(X, result), target)
        return {**frame.to_dict(), "level": target.c, "flow_converged": result.converged, "ok": result.converged}

    @staticmethod
    def monad(
        X: Representation,
        point: Optional[P2Point] = None,
        samples: Optional[int] = None,
        seed: Optional[int] = None,
        involution: Optional[P2Involution] = None,
        spec: Optional[InvolutionSpec] = None,
    ) -> Dict[str, Any]:
        require_adhm(X)
        seed = default_seed() if seed is None else seed
        if point is not None:
            return {"point": point.to_dict(), **monad_ranks(X, point), "ok": True}

        count = default_samples() if samples is None else samples
        points = sample_points(count, seed)
        ranks = [monad_ranks(X, p) for p in points]
        n = int(X.dims.total_V())
        report: Dict[str, Any] = {
            "samples": len(points),
            "seed": seed,
            "fiber_dims": sorted({r["fiber_dim"] for r in ranks}),
            "beta_surjective": all(r["beta_rank"] == n for r in ranks),
            "alpha_injective": all(r["alpha_rank"] == n for r in ranks),
            "ok": True,
        }
        if involution is not None:
            n, r = X.I[X.quiver.vertices[0]].shape
            square_spec = spec if spec is not None else pullback_spec(involution, n, r)
            residual = verify_monad_square(square_spec, involution, X, sample_count=min(count, 50), seed=seed)
            report["square"] = {"involution": involution.kind, "word": square_spec.letters, "residual": residual}
            report["ok"] = bool(residual <= SQUARE_TOL)
        return report

    @staticmethod
    def catalog(name: str, k: int = 1, seed: Optional[int] = None) -> Dict[str, Any]:
        seed = default_seed() if seed is None else seed
        entry = build(name, k=k, seed=seed)
        if entry is None:
            logger.info("catalog search for %s (k=%d) found no entry", name, k)
            return {"name": name, "k": k, "found": False, "ok": False}
        return {**entry.to_dict(), "k": k, "found": True, "ok": True}
