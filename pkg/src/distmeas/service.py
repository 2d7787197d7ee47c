"""HTTP service wrapping the check runner.

Endpoints accept the same pydantic models the CLI reads from files and
return canonically serialized JSON (fixed key order, 17-significant-digit
floats), so responses are byte-identical across runs of the same build.

    POST /run    one scenario -> its check reports
    POST /sweep  a dimension grid -> an aggregate report
    GET  /checks known check ids
    GET  /health liveness probe
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException, Response
from pydantic import BaseModel

from . import __version__
from .errors import DistmeasError
from .jsonout import canonical_json
from .runner import run_payload, run_scenario, run_sweep
from .scenario import Scenario, SweepRequest
from .theorems import CHECK_IDS


class CheckReportModel(BaseModel):
    check_id: str
    passed: bool
    tolerance: float
    residuals: dict[str, float]
    context: dict


class RunResponse(BaseModel):
    scenario: dict
    reports: list[CheckReportModel]
    passed: bool


class SweepResponse(BaseModel):
    config: dict
    scenarios_run: int
    scenarios_passed: int
    checks: dict
    negative_controls: dict
    skipped: list[dict]
    all_passed: bool


def _canonical_response(payload: dict) -> Response:
    return Response(content=canonical_json(payload) + "\n", media_type="application/json")


def create_app() -> FastAPI:
    app = FastAPI(
        title="distmeas",
        version=__version__,
        description=(
            "Verification service for the distant effects of unitary subsystem "
            "measurements on entangled bipartite states."
        ),
    )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.get("/checks")
    def checks() -> dict:
        return {"checks": list(CHECK_IDS)}

    @app.post("/run", responses={200: {"model": RunResponse}})
    def run(scenario: Scenario) -> Response:
        try:
            result = run_scenario(scenario)
        except (DistmeasError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        payload = RunResponse(**run_payload(result))
        return _canonical_response(payload.model_dump())

    @app.post("/sweep", responses={200: {"model": SweepResponse}})
    def sweep(request: SweepRequest) -> Response:
        try:
            outcome = run_sweep(request)
        except (DistmeasError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        payload = SweepResponse(**outcome.aggregate)
        return _canonical_response(payload.model_dump())

    return app


app = create_app()
