"""HTTP API over the engine service.

Routes (bodies are JSON documents mirroring the domain types):
  POST /plans                     -> {"plan_id", "tasks", ...}
  POST /plans/{id}/simulate       -> simulation document (metrics inside)
  POST /plans/{id}/execute        -> {"run_id"}
  GET  /runs/{id}/events          -> text/event-stream (replay then follow)
  GET  /plans/{id}/report?run=rid -> report document
  POST /compare                   -> bar dataset document
"""

from __future__ import annotations

import json
import os

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, StreamingResponse

from edgeflow.control.service import EngineService
from edgeflow.control.store import RunStore
from edgeflow.errors import (
    EdgeflowError,
    PlanNotFoundError,
    PlanNotSimulatedError,
    RunAlreadyActiveError,
    RunNotFoundError,
)

DEFAULT_PORT = 8787
PORT_ENV_VAR = "EDGEFLOW_PORT"
STORE_ENV_VAR = "EDGEFLOW_STORE"

_STATUS = {
    PlanNotFoundError: 404,
    RunNotFoundError: 404,
    PlanNotSimulatedError: 409,
    RunAlreadyActiveError: 409,
}


def _error_response(exc: EdgeflowError) -> JSONResponse:
    status = _STATUS.get(type(exc), 400)
    return JSONResponse(
        status_code=status,
        content={"error": {"code": exc.code, "message": exc.message}},
    )


def create_app(service: EngineService | None = None) -> FastAPI:
    if service is None:
        store_dir = os.environ.get(STORE_ENV_VAR, "./edgeflow-store")
        service = EngineService(RunStore(store_dir))

    app = FastAPI(title="edgeflow", version="0.1.0")
    app.state.service = service

    @app.exception_handler(EdgeflowError)
    async def handle_engine_error(request: Request, exc: EdgeflowError):
        return _error_response(exc)

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/plans")
    async def create_plan(request: Request):
        doc = await request.json()
        plan = service.build_plan(doc)
        return {
            "plan_id": plan.id,
            "tasks": len(plan.workflow.tasks),
            "workflow": plan.workflow.name,
            "scheduler": plan.scheduler,
            "strategy": plan.strategy,
        }

    @app.get("/plans/{plan_id}")
    def get_plan(plan_id: str):
        return service.get_plan(plan_id).to_doc()

    @app.post("/plans/{plan_id}/simulate")
    def simulate_plan(plan_id: str):
        return service.simulate_plan(plan_id)

    @app.post("/plans/{plan_id}/execute")
    def execute_plan(plan_id: str):
        run_id = service.execute_plan_real(plan_id)
        return {"run_id": run_id}

    @app.get("/plans/{plan_id}/report")
    def report(plan_id: str, run: str | None = None):
        return service.build_report(plan_id, run)

    @app.get("/runs/{run_id}")
    def get_run(run_id: str):
        return service.get_run(run_id)

    @app.get("/runs/{run_id}/events")
    def run_events(run_id: str):
        stream = service.stream_events(run_id)  # raises RunNotFound before streaming

        def sse():
            outcome = None
            iterator = iter(stream)
            while True:
                try:
                    event = next(iterator)
                except StopIteration as stop:
                    outcome = stop.value
                    break
                yield f"event: task\ndata: {json.dumps(event.to_doc(), sort_keys=True)}\n\n"
            yield f"event: end\ndata: {json.dumps({'outcome': outcome})}\n\n"

        return StreamingResponse(sse(), media_type="text/event-stream")

    @app.post("/compare")
    async def compare(request: Request):
        doc = await request.json()
        return service.compare_algorithms(doc)

    return app


def main(argv=None) -> None:  # pragma: no cover - thin wrapper
    import argparse

    import uvicorn

    parser = argparse.ArgumentParser(prog="edgeflow-api")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=None)
    parser.add_argument("--store", default=None)
    args = parser.parse_args(argv)
    port = args.port or int(os.environ.get(PORT_ENV_VAR, DEFAULT_PORT))
    if args.store:
        os.environ[STORE_ENV_VAR] = args.store
    uvicorn.run(create_app(), host=args.host, port=port, log_level="warning")


if __name__ == "__main__":  # pragma: no cover
    main()
