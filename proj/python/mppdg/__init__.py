"""Python front end for the mppdg solver.

Settings use the CLI keys (order, cells, tfinal, cflc, cfld, mpp, tvb,
flux-form, alpha, out, p3-dt); values may be numbers, strings or booleans.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _core
from ._core import (
    CflViolation,
    InvalidArgument,
    NotFound,
    NumericalFailure,
    Unsupported,
    bounds_suites,
    gauss_rule,
    legendre,
    limiter_bounds_1d,
    list_problems,
    minmod,
    mpp_limit_1d,
    ssprk3_scalar,
    tvb_minmod,
    worker_threads,
)

SCHEMA_DIR = Path(__file__).resolve().parent / "schemas"

__all__ = [
    "CflViolation",
    "InvalidArgument",
    "NotFound",
    "NumericalFailure",
    "Unsupported",
    "RunOutput",
    "bounds",
    "bounds_suites",
    "converge",
    "gauss_rule",
    "legendre",
    "limiter_bounds_1d",
    "list_problems",
    "minmod",
    "mpp_limit_1d",
    "run",
    "schema",
    "ssprk3_scalar",
    "tvb_minmod",
    "worker_threads",
]


def _settings(kwargs: dict) -> dict[str, str]:
    out = {}
    for key, value in kwargs.items():
        if value is None:
            continue
        key = key.replace("_", "-")
        if isinstance(value, bool):
            value = "on" if value else "off"
        out[key] = str(value)
    return out


@dataclass
class RunOutput:
    report: dict
    x_center: np.ndarray
    y_center: np.ndarray | None
    averages: np.ndarray


def run(problem: str, params: dict[str, float] | None = None, **settings) -> RunOutput:
    """Run one simulation, e.g. run("linear-1d", order=2, cells=64, mpp=True)."""
    text, x, y, avg = _core.run_json(problem, _settings(settings), params or {})
    return RunOutput(json.loads(text), np.asarray(x), np.asarray(y) if y else None, np.asarray(avg))


def converge(problem: str, meshes, params: dict[str, float] | None = None, **settings) -> tuple[dict, str]:
    """Mesh refinement study; returns (table as dict, table CSV text)."""
    text, csv = _core.converge_json(problem, list(meshes), _settings(settings), params or {})
    return json.loads(text), csv


def bounds(suite: str, meshes=(), out: str | Path = "") -> dict:
    return json.loads(_core.bounds_json(suite, list(meshes), Path(out) if out else Path()))


def schema(kind: str) -> dict:
    """JSON schema for 'report', 'convergence' or 'bounds'."""
    names = {
        "report": _core.REPORT_SCHEMA,
        "convergence": _core.CONVERGENCE_SCHEMA,
        "bounds": _core.BOUNDS_SCHEMA,
    }
    return json.loads((SCHEMA_DIR / names[kind]).read_text())
