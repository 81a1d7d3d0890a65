"""Stateless HTTP JSON service over shipped and inline workflows.

Read-only by design: calibration touches raw logs and stays on the CLI.
Request bodies may name a shipped workflow or carry a full workflow
document (that is how the UI submits edited parameters). Responses are the
exact JSON renderings the CLI writes, so file and HTTP consumers always see
identical documents.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Iterable

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .model import (
    Scenario,
    Workflow,
    WorkflowDocumentError,
    validate_workflow,
    workflow_from_dict,
)
from .report import delta_to_dict, render_delta, render_trace
from .scenario import compare, sweep
from .simulate import simulate

__all__ = ["create_app", "list_workflows", "DEFAULT_MAX_BODY_BYTES"]

DEFAULT_MAX_BODY_BYTES = 1 << 20  # 1 MiB

_SCENARIOS = {
    "with_sa": Scenario.WITH_SA,
    "without_sa": Scenario.WITHOUT_SA,
    "with": Scenario.WITH_SA,
    "without": Scenario.WITHOUT_SA,
}


class _BadRequest(Exception):
    def __init__(self, violations: list[str], status: int = 400):
        self.violations = violations
        self.status = status


def list_workflows(fixtures_dir: Path) -> list[str]:
    return sorted(p.name[: -len(".workflow.json")] for p in fixtures_dir.glob("*.workflow.json"))


def create_app(
    fixtures_dir: Path,
    cors_origins: Iterable[str] = ("*",),
    max_body_bytes: int = DEFAULT_MAX_BODY_BYTES,
) -> FastAPI:
    app = FastAPI(title="defectflow", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.fixtures_dir = Path(fixtures_dir)

    @app.exception_handler(_BadRequest)
    async def _bad_request(request: Request, exc: _BadRequest):
        return JSONResponse(status_code=exc.status, content={"violations": exc.violations})

    async def read_body(request: Request) -> dict:
        body = await request.body()
        if len(body) > max_body_bytes:
            raise _BadRequest([f"body exceeds {max_body_bytes} bytes"], status=413)
        try:
            doc = json.loads(body)
        except json.JSONDecodeError as exc:
            raise _BadRequest([f"malformed JSON: {exc}"]) from None
        if not isinstance(doc, dict):
            raise _BadRequest(["request body must be a JSON object"])
        return doc

    def resolve_workflow(value) -> Workflow:
        if isinstance(value, str):
            path = app.state.fixtures_dir / f"{value}.workflow.json"
            if "/" in value or "\\" in value or ".." in value or not path.is_file():
                raise _BadRequest([f"unknown workflow {value!r}"], status=404)
            document = json.loads(path.read_text(encoding="utf-8"))
        elif isinstance(value, dict):
            document = value
        else:
            raise _BadRequest(["'workflow' must be a name or a workflow document"])
        try:
            workflow = workflow_from_dict(document)
        except WorkflowDocumentError as exc:
            raise _BadRequest([str(exc)]) from None
        errors = [v.message for v in validate_workflow(workflow) if v.is_error()]
        if errors:
            raise _BadRequest(errors)
        return workflow

    def require_size(doc: dict) -> float:
        size = doc.get("size")
        if not isinstance(size, (int, float)) or isinstance(size, bool) or not math.isfinite(size):
            raise _BadRequest(["size_loc must be a finite number"])
        if size < 0:
            raise _BadRequest(["size_loc must be ≥ 0"])
        return size  # keep the caller's numeric type so renderings match the CLI's

    def json_response(text: str) -> Response:
        return Response(content=text, media_type="application/json")

    @app.get("/workflows")
    async def get_workflows():
        return list_workflows(app.state.fixtures_dir)

    @app.get("/workflows/{name}")
    async def get_workflow(name: str):
        path = app.state.fixtures_dir / f"{name}.workflow.json"
        if "/" in name or "\\" in name or ".." in name or not path.is_file():
            return JSONResponse(status_code=404, content={"violations": [f"unknown workflow {name!r}"]})
        return json_response(path.read_text(encoding="utf-8"))

    @app.post("/simulate")
    async def post_simulate(request: Request):
        doc = await read_body(request)
        workflow = resolve_workflow(doc.get("workflow"))
        size = require_size(doc)
        scenario = doc.get("scenario", "with_sa")
        if scenario not in _SCENARIOS:
            raise _BadRequest([f"unknown scenario {scenario!r}"])
        trace = simulate(workflow, size, _SCENARIOS[scenario])
        return json_response(render_trace(trace, "json"))

    @app.post("/compare")
    async def post_compare(request: Request):
        doc = await read_body(request)
        workflow = resolve_workflow(doc.get("workflow"))
        size = require_size(doc)
        delta = compare(workflow, size)
        return json_response(render_delta(delta, "json"))

    @app.post("/sweep")
    async def post_sweep(request: Request):
        doc = await read_body(request)
        workflow = resolve_workflow(doc.get("workflow"))
        size = require_size(doc)
        target = doc.get("target")
        if not isinstance(target, dict) or "phase" not in target or "parameter" not in target:
            raise _BadRequest(["'target' must be an object with 'phase' and 'parameter'"])
        values = doc.get("values")
        if not isinstance(values, list):
            raise _BadRequest(["'values' must be a list of numbers"])
        try:
            series = sweep(workflow, size, (target["phase"], target["parameter"]), values)
        except (ValueError, KeyError) as exc:
            raise _BadRequest([str(exc)]) from None
        payload = [{"value": value, "delta": delta_to_dict(delta)} for value, delta in series]
        return json_response(json.dumps(payload, indent=2) + "\n")

    return app
