"""JSON-over-HTTP service wrapping the calibration and simulation engine.

Jobs run on an in-process worker pool; nothing is persisted, so a restart
drops the registry.  Result payloads are serialized with the same canonical
JSON writer the CLI uses, so the two surfaces return identical bytes for
identical (config, seed).
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response

from . import __version__
from .config import ConfigError, ValidatedConfig, validate_config
from .engine import (
    canonical_json,
    parse_design_params,
    run_calibration,
    run_decision_table,
    run_simulation,
)

__all__ = ["create_app", "app"]


class JobRegistry:
    """In-memory job table with a bounded executor and monotone progress."""

    def __init__(self, max_workers: int | None = None):
        self._lock = threading.Lock()
        self._jobs: dict[str, dict] = {}
        self._results: dict[str, str] = {}
        self._executor = ThreadPoolExecutor(max_workers=max_workers)
        self._next = 1

    def submit(self, kind: str, cfg: ValidatedConfig, runner) -> dict:
        with self._lock:
            job_id = f"job-{self._next:06d}"
            self._next += 1
            record = {
                "id": job_id,
                "kind": kind,
                "state": "queued",
                "progress": 0.0,
                "config": cfg.echo,
            }
            self._jobs[job_id] = record

        def work():
            self._update(job_id, state="running")
            try:
                payload = runner(lambda frac: self._progress(job_id, frac))
            except Exception as exc:  # surfaced verbatim to the client
                self._update(job_id, state="failed", error=str(exc))
                return
            with self._lock:
                self._results[job_id] = canonical_json(payload)
            self._update(job_id, state="done", progress=1.0)

        self._executor.submit(work)
        return self.get(job_id)

    def _update(self, job_id: str, **fields) -> None:
        with self._lock:
            self._jobs[job_id].update(fields)

    def _progress(self, job_id: str, frac: float) -> None:
        with self._lock:
            record = self._jobs[job_id]
            record["progress"] = max(record["progress"], min(float(frac), 1.0))

    def get(self, job_id: str) -> dict | None:
        with self._lock:
            record = self._jobs.get(job_id)
            return dict(record) if record else None

    def result(self, job_id: str) -> str | None:
        with self._lock:
            return self._results.get(job_id)


def _error_response(status: int, errors: list[dict]) -> JSONResponse:
    return JSONResponse(status_code=status, content={"errors": errors})


async def _body_json(request: Request):
    try:
        return await request.json(), None
    except Exception as exc:
        return None, _error_response(400, [{"path": "", "message": f"invalid JSON: {exc}"}])


def _validate_body(body) -> tuple[ValidatedConfig | None, JSONResponse | None]:
    if not isinstance(body, dict):
        return None, _error_response(400, [{"path": "", "message": "expected a JSON object"}])
    try:
        return validate_config(body), None
    except ConfigError as exc:
        return None, _error_response(400, exc.errors)


def create_app(max_workers: int | None = None) -> FastAPI:
    app = FastAPI(title="bop2dc", version=__version__)
    jobs = JobRegistry(max_workers=max_workers)
    app.state.jobs = jobs

    @app.get("/v1/health")
    def health():
        return {"status": "ok", "name": "bop2dc", "version": __version__}

    @app.post("/v1/validate")
    async def validate(request: Request):
        body, err = await _body_json(request)
        if err:
            return err
        cfg, err = _validate_body(body)
        if err:
            return err
        return {"config": cfg.echo}

    @app.post("/v1/jobs/calibrate", status_code=202)
    async def submit_calibrate(request: Request):
        body, err = await _body_json(request)
        if err:
            return err
        cfg, err = _validate_body(body)
        if err:
            return err
        record = jobs.submit(
            "calibrate", cfg, lambda progress: run_calibration(cfg, progress=progress)
        )
        return {"job": record}

    @app.post("/v1/jobs/simulate", status_code=202)
    async def submit_simulate(request: Request):
        body, err = await _body_json(request)
        if err:
            return err
        if not isinstance(body, dict) or "config" not in body or "design" not in body:
            return _error_response(
                400, [{"path": "", "message": "expected {config: ..., design: ...}"}]
            )
        cfg, err = _validate_body(body["config"])
        if err:
            return err
        if not cfg.scenarios:
            return _error_response(
                400, [{"path": "config.scenarios", "message": "simulation needs scenarios"}]
            )
        try:
            design = parse_design_params(body["design"])
        except ValueError as exc:
            return _error_response(400, [{"path": "design", "message": str(exc)}])
        record = jobs.submit(
            "simulate", cfg, lambda progress: run_simulation(cfg, design, progress=progress)
        )
        return {"job": record}

    @app.get("/v1/jobs/{job_id}")
    def job_status(job_id: str):
        record = jobs.get(job_id)
        if record is None:
            return JSONResponse(status_code=404, content={"error": "unknown job"})
        return record

    @app.get("/v1/jobs/{job_id}/result")
    def job_result(job_id: str):
        record = jobs.get(job_id)
        if record is None:
            return JSONResponse(status_code=404, content={"error": "unknown job"})
        if record["state"] != "done":
            return JSONResponse(
                status_code=404,
                content={"state": record["state"], "progress": record["progress"]},
            )
        return Response(content=jobs.result(job_id), media_type="application/json")

    @app.post("/v1/decision-table")
    async def decision_table(request: Request):
        body, err = await _body_json(request)
        if err:
            return err
        if not isinstance(body, dict) or "config" not in body or "design" not in body:
            return _error_response(
                400, [{"path": "", "message": "expected {config: ..., design: ...}"}]
            )
        cfg, err = _validate_body(body["config"])
        if err:
            return err
        try:
            design = parse_design_params(body["design"])
            payload = run_decision_table(cfg, design)
        except ValueError as exc:
            return _error_response(400, [{"path": "design", "message": str(exc)}])
        return Response(content=canonical_json(payload), media_type="application/json")

    return app


app = create_app()
