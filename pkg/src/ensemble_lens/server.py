"""HTTP analysis service consumed by the explorer UI.

Endpoints:
  GET  /api/ensemble   ensemble metadata (name, sizes, parameter names, time axis)
  GET  /api/analysis   full analysis document; query: outer, grid, bandwidth
  POST /api/selection  evaluate predicates; returns indices, brackets, report
  GET  /               static explorer assets when a UI build is available

Analyses are cached by (outer, grid, bandwidth); the ensemble is immutable
for the lifetime of the process, so cached bytes are returned verbatim and
identical queries always produce identical bodies.  Selections never mutate
cached analyses.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.responses import HTMLResponse, JSONResponse
from fastapi.staticfiles import StaticFiles
from starlette.concurrency import run_in_threadpool

from .analysis import AnalysisConfig, AnalysisResult, document_bytes, run_analysis
from .ensemble import AugmentedEnsemble
from .io import content_hash
from .errors import (
    InvalidClusterError,
    InvalidCoverageError,
    SelectionTooSmallError,
    TimeOutOfRangeError,
    UnknownParamError,
)
from .selection import evaluate_provenance, steps_from_dict
from .sensitivity import concentration_scores, selection_bracket_overlays

_PLACEHOLDER = """<!doctype html>
<html><head><title>ensemble-lens</title></head>
<body><h1>ensemble-lens analysis service</h1>
<p>No explorer UI build found. API endpoints:</p>
<ul>
<li><code>GET /api/ensemble</code></li>
<li><code>GET /api/analysis?outer=0.95&amp;grid=100,100</code></li>
<li><code>POST /api/selection</code></li>
</ul></body></html>
"""


class _AnalysisStore:
    """Insert-if-absent cache of serialized analyses keyed by config."""

    def __init__(self, ensemble: AugmentedEnsemble):
        self.ensemble = ensemble
        self.ensemble_hash = content_hash(ensemble)
        self._lock = threading.Lock()
        self._results: dict[tuple, AnalysisResult] = {}
        self._bytes: dict[tuple, bytes] = {}

    def get(self, config: AnalysisConfig) -> tuple[AnalysisResult, bytes]:
        key = (config.nx, config.ny, config.outer_coverage, config.bandwidth,
               self.ensemble_hash)
        with self._lock:
            cached = self._results.get(key)
            if cached is not None:
                return cached, self._bytes[key]
        result = run_analysis(self.ensemble, config)
        body = document_bytes(result)
        with self._lock:
            self._results.setdefault(key, result)
            self._bytes.setdefault(key, body)
            return self._results[key], self._bytes[key]


def _parse_config(params: dict) -> AnalysisConfig:
    outer = params.get("outer", "0.95")
    grid = params.get("grid", "100,100")
    bandwidth = params.get("bandwidth")
    try:
        outer = float(outer)
    except ValueError:
        raise HTTPException(400, f"malformed outer coverage {outer!r}")
    try:
        parts = grid.split(",")
        if len(parts) != 2:
            raise ValueError
        nx, ny = int(parts[0]), int(parts[1])
    except ValueError:
        raise HTTPException(400, f"grid must be NX,NY, got {grid!r}")
    if bandwidth is not None:
        try:
            bandwidth = float(bandwidth)
        except ValueError:
            raise HTTPException(400, f"malformed bandwidth {bandwidth!r}")
    try:
        return AnalysisConfig(nx=nx, ny=ny, outer_coverage=outer, bandwidth=bandwidth)
    except InvalidCoverageError as exc:
        raise HTTPException(422, str(exc))
    except ValueError as exc:
        raise HTTPException(400, str(exc))


def create_app(ensemble: AugmentedEnsemble, ui_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="ensemble-lens", docs_url=None, redoc_url=None)
    store = _AnalysisStore(ensemble)

    @app.get("/api/ensemble")
    def ensemble_meta():
        return JSONResponse({
            "name": ensemble.name,
            "members": ensemble.n_members,
            "params": ensemble.n_params,
            "samples": ensemble.n_samples,
            "param_names": list(ensemble.param_names),
            "time": [float(t) for t in ensemble.time],
        })

    @app.get("/api/analysis")
    def analysis(request: Request):
        config = _parse_config(dict(request.query_params))
        _, body = store.get(config)
        return Response(content=body, media_type="application/json")

    @app.post("/api/selection")
    async def post_selection(request: Request):
        try:
            payload = json.loads(await request.body() or b"{}")
        except json.JSONDecodeError as exc:
            raise HTTPException(400, f"request body is not JSON: {exc}")
        config = _parse_config(dict(request.query_params))
        return await run_in_threadpool(_evaluate_selection, store, config, payload)

    if ui_dir is not None:
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")
    else:
        @app.get("/", response_class=HTMLResponse)
        def index():
            return _PLACEHOLDER

    return app


def _evaluate_selection(store: _AnalysisStore, config: AnalysisConfig,
                        payload: dict) -> JSONResponse:
    ensemble = store.ensemble
    result, _ = store.get(config)
    try:
        steps = steps_from_dict(payload)
        sel = evaluate_provenance(ensemble, result, steps)
    except (ValueError, UnknownParamError, TimeOutOfRangeError,
            InvalidClusterError) as exc:
        raise HTTPException(400, str(exc))
    except InvalidCoverageError as exc:
        raise HTTPException(422, str(exc))

    brackets = None
    if len(sel) >= 1:
        extents = selection_bracket_overlays(ensemble, sel)
        brackets = {
            name: [float(extents[j, 0]), float(extents[j, 1])]
            for j, name in enumerate(ensemble.param_names)
        }
    sensitivity = None
    try:
        report = concentration_scores(ensemble, sel)
        sensitivity = {
            "scores": {
                name: report.scores[j] for j, name in enumerate(report.param_names)
            },
            "ranking": list(report.ranked_names()),
        }
    except SelectionTooSmallError:
        pass

    return JSONResponse({
        "indices": list(sel.indices),
        "brackets": brackets,
        "sensitivity": sensitivity,
    })
