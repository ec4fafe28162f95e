# ============================================================
# Quiver Branes — HTTP API
# Engine reports over JSON (check, involution, stability, tangent, flow, monad, catalog)
# ============================================================

from typing import Any, Callable, Dict, List, Literal, Optional

from fastapi import FastAPI, HTTPException, Request
from fastapi.exception_handlers import http_exception_handler
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel
import logging

from quiver_branes.catalog import CATALOG_NAMES
from quiver_branes.engine import QuiverBranesEngine
from quiver_branes.errors import QuiverBranesError
from quiver_branes.monad_p2 import P2Involution, P2Point
from quiver_branes.schemas import (
    DimsModel,
    Entry,
    QuiverModel,
    RepModel,
    SpecPayload,
    decode_bundle,
    decode_spec,
    decode_entry,
)

logger = logging.getLogger(__name__)


# ============================================================
# FASTAPI INIT
# ============================================================

app = FastAPI(title="quiver-branes")


@app.exception_handler(HTTPException)
async def _http_exception_flat_error_code(request: Request, exc: HTTPException):
    """Flat JSON { error_code, message, details } for domain errors."""
    if isinstance(exc.detail, dict) and exc.detail.get("error_code") is not None:
        return JSONResponse(status_code=exc.status_code, content=exc.detail)
    return await http_exception_handler(request, exc)


app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_methods=["*"],
    allow_headers=["*"],
)


def _raise_http_error(status_code: int, error_code: str, message: str, details: Optional[dict] = None):
    payload = {
        "error_code": error_code,
        "message": message,
    }
    if details:
        payload["details"] = details
    raise HTTPException(status_code=status_code, detail=payload)


def _run(fn: Callable[[], Dict[str, Any]]) -> Dict[str, Any]:
    try:
        return fn()
    except QuiverBranesError as exc:
        _raise_http_error(422, exc.error_code, exc.message, exc.details)
    except HTTPException:
        raise
    except Exception as exc:
        logger.exception("unexpected engine failure")
        _raise_http_error(500, "INTERNAL_ERROR", "The computation failed unexpectedly.", {"type": type(exc).__name__})


# ============================================================
# REQUEST MODELS
# ============================================================

class RepresentationRequest(BaseModel):
    quiver: QuiverModel
    dims: DimsModel
    rep: RepModel
    spec: Optional[SpecPayload] = None


class CheckRequest(RepresentationRequest):
    expected: Optional[Dict[str, Any]] = None
    variants: Optional[Dict[str, SpecPayload]] = None
    variant_expected: Optional[Dict[str, Dict[str, Any]]] = None
    tol: Optional[float] = None


class InvolutionRequest(BaseModel):
    action: Literal["classify", "apply", "verify"] = "classify"
    spec: SpecPayload
    quiver: Optional[QuiverModel] = None
    dims: Optional[DimsModel] = None
    rep: Optional[RepModel] = None
    seed: Optional[int] = None


class TangentRequest(RepresentationRequest):
    level: Optional[float] = None
    expected: Optional[Dict[str, Any]] = None


class FlowRequest(RepresentationRequest):
    level: float = 0.5
    tol: float = 1e-10
    max_iters: Optional[int] = None


class MonadRequest(RepresentationRequest):
    point: Optional[List[Entry]] = None
    samples: Optional[int] = None
    seed: Optional[int] = None
    involution: Optional[Literal["sigma1", "sigma2", "tau0", "tau1", "tau2"]] = None
    t: float = 1.0
    z: float = 0.0


def _bundle(req: BaseModel):
    return decode_bundle(req.model_dump(exclude_none=True))


# ============================================================
# ENDPOINTS
# ============================================================

@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/check")
def check(req: CheckRequest):
    def compute():
        bundle = _bundle(req)
        return QuiverBranesEngine.check(
            bundle.X,
            spec=bundle.spec,
            expected=bundle.expected,
            variants=bundle.variants,
            variant_expected=bundle.variant_expected,
            tol=req.tol,
        )
    return _run(compute)


@app.post("/involution")
def involution(req: InvolutionRequest):
    def compute():
        spec = decode_spec(req.spec.model_dump(exclude_none=True))
        X = None
        if req.rep is not None:
            X = decode_bundle({
                "quiver": req.quiver.model_dump() if req.quiver else None,
                "dims": req.dims.model_dump() if req.dims else None,
                "rep": req.rep.model_dump(),
            }).X
        return QuiverBranesEngine.involution(req.action, spec, X, seed=req.seed)
    return _run(compute)


@app.post("/stability")
def stability(req: RepresentationRequest):
    return _run(lambda: QuiverBranesEngine.stability(_bundle(req).X))


@app.post("/tangent")
def tangent(req: TangentRequest):
    def compute():
        bundle = _bundle(req)
        return QuiverBranesEngine.tangent(bundle.X, spec=bundle.spec, level=req.level, expected=bundle.expected)
    return _run(compute)


@app.post("/flow")
def flow(req: FlowRequest):
    return _run(lambda: QuiverBranesEngine.flow(_bundle(req).X, level=req.level, tol=req.tol, max_iters=req.max_iters))


@app.post("/monad")
def monad(req: MonadRequest):
    def compute():
        bundle = _bundle(req)
        point = None
        if req.point is not None:
            if len(req.point) != 3:
                _raise_http_error(422, "INVALID_PAYLOAD", "point needs three homogeneous coordinates")
            point = P2Point.from_vector([decode_entry(x) for x in req.point]).normalized()
        involution = P2Involution(req.involution, t=req.t, z=req.z) if req.involution else None
        return QuiverBranesEngine.monad(
            bundle.X,
            point=point,
            samples=req.samples,
            seed=req.seed,
            involution=involution,
            spec=bundle.spec,
        )
    return _run(compute)


@app.post("/catalog/{name}")
def catalog(name: str, k: int = 1, seed: Optional[int] = None):
    if name not in CATALOG_NAMES:
        _raise_http_error(404, "UNKNOWN_CATALOG_ENTRY", f"No catalog entry named {name}.", {"known": list(CATALOG_NAMES)})
    return _run(lambda: QuiverBranesEngine.catalog(name, k=k, seed=seed))


if __name__ == "__main__":
    import uvicorn

    uvicorn.run(app, host="0.0.0.0", port=8000)
