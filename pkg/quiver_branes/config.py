# quiver_branes/config.py
"""
Runtime defaults, overridable through the environment.

QUIVER_BRANES_TOL            structural tolerance (default 1e-10)
QUIVER_BRANES_RANK_RTOL      relative singular-value cutoff for ranks (default 1e-8)
QUIVER_BRANES_WITNESS_TOL    orbit witness acceptance, relative to data norm (default 1e-8)
QUIVER_BRANES_SEED           default seed (default 0)
QUIVER_BRANES_SAMPLES        default number of P^2 sample points (default 1000)
QUIVER_BRANES_FLOW_MAX_ITERS flow iteration cap (default 10000)

Unparseable values fall back to the default.
"""

from __future__ import annotations

import os


def _float_env(name: str, default: float) -> float:
    try:
        value = float(os.getenv(name, str(default)))
    except ValueError:
        return default
    return value if value > 0 else default


def _int_env(name: str, default: int, minimum: int = 0) -> int:
    try:
        return max(minimum, int(os.getenv(name, str(default))))
    except ValueError:
        return default


def default_tolerance() -> float:
    return _float_env("QUIVER_BRANES_TOL", 1e-10)


def rank_rtol() -> float:
    return _float_env("QUIVER_BRANES_RANK_RTOL", 1e-8)


def witness_tolerance() -> float:
    return _float_env("QUIVER_BRANES_WITNESS_TOL", 1e-8)


def default_seed() -> int:
    return _int_env("QUIVER_BRANES_SEED", 0)


def default_samples() -> int:
    return _int_env("QUIVER_BRANES_SAMPLES", 1000, minimum=1)


def flow_max_iters() -> int:
    return _int_env("QUIVER_BRANES_FLOW_MAX_ITERS", 10_000, minimum=1)
