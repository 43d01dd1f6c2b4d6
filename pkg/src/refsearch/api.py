"""HTTP service: search, case retrieval, stats, ingestion jobs, static UI.

All endpoints live under /api/. Request parameters are parsed by hand so
every client mistake comes back as a consistent {code, message} error
body with HTTP 400 (404 for unknown resources); parse errors carry the
byte offset reported by the query parser. When a UI bundle directory is
configured, anything outside /api/ serves the bundle with an index.html
fallback for client-side routes.
"""

from __future__ import annotations

import logging
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import FileResponse, JSONResponse

from .ingest import DetectorInput, JobRegistry, JobRequest, submit_async
from .querylang import ParseError, parse_query
from .store import CaseStore, parse_sort
from .store.core import MAX_LIMIT

DEFAULT_PORT = 7364

logger = logging.getLogger("refsearch.api")


def _error(status: int, code: str, message: str, offset: int | None = None) -> JSONResponse:
    body: dict = {"code": code, "message": message}
    if offset is not None:
        body["offset"] = offset
    return JSONResponse(body, status_code=status)


def _bad_request(message: str) -> JSONResponse:
    return _error(400, "bad_request", message)


def _commit_url(doc: dict) -> str | None:
    repository = doc.get("repository")
    commit = doc.get("commit") or {}
    sha1 = commit.get("sha1") if isinstance(commit, dict) else None
    if not isinstance(repository, str) or not isinstance(sha1, str) or not sha1:
        return None
    host_ok = repository.startswith("https://github.com/") or repository.startswith("http://github.com/")
    return f"{repository}/commit/{sha1}" if host_ok else None


def create_app(
    store: CaseStore,
    registry: JobRegistry | None = None,
    ui_dir: str | Path | None = None,
    cors_origin: str | None = None,
) -> FastAPI:
    app = FastAPI(title="refsearch", docs_url=None, redoc_url=None)
    registry = registry or JobRegistry()

    if cors_origin:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=[cors_origin],
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.get("/api/refactorings")
    def search(request: Request):
        params = request.query_params
        try:
            offset = int(params.get("offset", "0"))
            limit = int(params.get("limit", "20"))
        except ValueError:
            return _bad_request("offset and limit must be integers")
        if offset < 0:
            return _bad_request("offset must be >= 0")
        if not 0 <= limit <= MAX_LIMIT:
            return _bad_request(f"limit must be between 0 and {MAX_LIMIT}")
        try:
            sort = parse_sort(params.get("sort", "commit.date:desc"))
        except ValueError as exc:
            return _bad_request(str(exc))

        q = params.get("q")
        ast = None
        if q is not None and q != "":
            try:
                ast = parse_query(q)
            except ParseError as exc:
                return _error(400, "parse_error", exc.message, offset=exc.offset)
        page = store.search(ast, offset=offset, limit=limit, sort=sort)
        return JSONResponse(page.to_json())

    @app.get("/api/refactorings/{case_id}")
    def get_case(case_id: str):
        doc = store.get_case(case_id)
        if doc is None:
            return _error(404, "not_found", f"no case with id {case_id!r}")
        url = _commit_url(doc)
        if url is not None:
            doc["commitUrl"] = url
        return JSONResponse(doc)

    @app.get("/api/meta/types")
    def meta_types():
        counts = store.stats()["countsByType"]
        return JSONResponse([{"type": name, "count": count} for name, count in counts.items()])

    @app.get("/api/stats")
    def stats():
        return JSONResponse(store.stats())

    @app.post("/api/jobs")
    async def submit_job(request: Request):
        try:
            body = await request.json()
        except Exception:
            return _bad_request("request body must be a JSON object")
        if not isinstance(body, dict):
            return _bad_request("request body must be a JSON object")
        try:
            job_request = _parse_job_request(body)
        except ValueError as exc:
            return _bad_request(str(exc))
        try:
            job = submit_async(job_request, store, registry, log=_job_logger)
        except ValueError as exc:
            return _bad_request(str(exc))
        return JSONResponse(job.to_json(), status_code=202)

    @app.get("/api/jobs")
    def list_jobs():
        live = registry.list()
        live_ids = {job.job_id for job in live}
        merged = [job.to_json() for job in live]
        merged.extend(j for j in store.load_jobs() if j.get("jobId") not in live_ids)
        merged.sort(key=lambda j: j.get("createdAt") or "", reverse=True)
        return JSONResponse(merged)

    @app.get("/api/jobs/{job_id}")
    def get_job(job_id: str):
        job = registry.get(job_id)
        if job is not None:
            return JSONResponse(job.to_json())
        for data in store.load_jobs():
            if data.get("jobId") == job_id:
                return JSONResponse(data)
        return _error(404, "not_found", f"no job with id {job_id!r}")

    if ui_dir is not None:
        bundle = Path(ui_dir)

        @app.get("/{path:path}")
        def ui(path: str):
            if path.startswith("api/"):
                return _error(404, "not_found", f"unknown API path /{path}")
            candidate = (bundle / path).resolve() if path else bundle / "index.html"
            try:
                candidate.relative_to(bundle.resolve())
            except ValueError:
                return _error(404, "not_found", "path escapes the UI bundle")
            if candidate.is_file():
                return FileResponse(candidate)
            index = bundle / "index.html"
            if index.is_file():
                return FileResponse(index)
            return _error(404, "not_found", "UI bundle has no index.html")

    @app.exception_handler(Exception)
    async def on_error(request: Request, exc: Exception):
        logger.exception("request failed: %s %s", request.method, request.url.path)
        return _error(500, "internal", f"{type(exc).__name__}: {exc}")

    return app


def _job_logger(event: dict) -> None:
    logger.info("job %s: stage %s -> %s %s", event.get("jobId"), event.get("stage"), event.get("status"), event.get("detail", ""))


def _parse_job_request(body: dict) -> JobRequest:
    repository_url = body.get("repositoryUrl")
    if not isinstance(repository_url, str) or not repository_url:
        raise ValueError("repositoryUrl is required")
    raw_inputs = body.get("detectorInputs")
    if not isinstance(raw_inputs, list) or not raw_inputs:
        raise ValueError("detectorInputs must be a non-empty array")
    inputs = []
    for item in raw_inputs:
        if not isinstance(item, dict) or not isinstance(item.get("tool"), str):
            raise ValueError("each detector input needs a 'tool'")
        inputs.append(
            DetectorInput(
                tool=item["tool"],
                json_path=item.get("jsonPath"),
                command=item.get("command"),
            )
        )
    source = body.get("commitSource") or {}
    if not isinstance(source, dict):
        raise ValueError("commitSource must be an object")
    return JobRequest(
        repository_url=repository_url,
        detector_inputs=inputs,
        commits_jsonl=source.get("commitsJsonl"),
        clone_path=source.get("clonePath"),
    )
