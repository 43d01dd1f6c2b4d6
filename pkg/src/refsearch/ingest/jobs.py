"""Ingestion job orchestration and bookkeeping.

A job runs five stages in order: fetch-commits, run-detectors, convert,
store, index. Statuses move pending -> running -> done|failed and a
failed stage halts everything after it. Every transition emits one JSON
log line and, when the store is disk-backed, persists the job state.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable

from .commits import CommitSourceError, MissingCommitsError, fetch_commit_records
from .convert import convert
from .detectors import (
    REFDIFF_TOOL,
    RMINER_TOOL,
    DetectorParseError,
    ParsedDetectorOutput,
    parse_refdiff_output,
    parse_rminer_output,
    run_detector_command,
)

STAGE_NAMES = ("fetch-commits", "run-detectors", "convert", "store", "index")

PENDING = "pending"
RUNNING = "running"
DONE = "done"
FAILED = "failed"

_PARSERS = {
    "rminer": parse_rminer_output,
    "refdiff": parse_refdiff_output,
}

TOOL_KEYS = tuple(_PARSERS)
_TOOL_LABELS = {"rminer": RMINER_TOOL, "refdiff": REFDIFF_TOOL}


@dataclass
class DetectorInput:
    tool: str  # "rminer" | "refdiff"
    json_path: str | None = None
    command: str | None = None


@dataclass
class JobRequest:
    repository_url: str
    detector_inputs: list[DetectorInput]
    commits_jsonl: str | None = None
    clone_path: str | None = None


@dataclass
class StageState:
    name: str
    status: str = PENDING
    started_at: str | None = None
    finished_at: str | None = None
    detail: str = ""


@dataclass
class JobCounts:
    commits_seen: int = 0
    records_parsed: int = 0
    cases_stored: int = 0
    cases_skipped_duplicate: int = 0
    records_rejected: int = 0


def _now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%S.%fZ")


@dataclass
class IngestJob:
    job_id: str
    repository_url: str
    stages: list[StageState] = field(default_factory=lambda: [StageState(n) for n in STAGE_NAMES])
    counts: JobCounts = field(default_factory=JobCounts)
    created_at: str = field(default_factory=_now)

    def stage(self, name: str) -> StageState:
        for stage in self.stages:
            if stage.name == name:
                return stage
        raise KeyError(name)

    @property
    def succeeded(self) -> bool:
        return all(stage.status == DONE for stage in self.stages)

    @property
    def failed_stage(self) -> StageState | None:
        for stage in self.stages:
            if stage.status == FAILED:
                return stage
        return None

    def to_json(self) -> dict:
        return {
            "jobId": self.job_id,
            "repositoryUrl": self.repository_url,
            "createdAt": self.created_at,
            "stages": [
                {
                    "name": s.name,
                    "status": s.status,
                    "startedAt": s.started_at,
                    "finishedAt": s.finished_at,
                    "detail": s.detail,
                }
                for s in self.stages
            ],
            "counts": {
                "commitsSeen": self.counts.commits_seen,
                "recordsParsed": self.counts.records_parsed,
                "casesStored": self.counts.cases_stored,
                "casesSkippedDuplicate": self.counts.cases_skipped_duplicate,
                "recordsRejected": self.counts.records_rejected,
            },
        }


def validate_request(request: JobRequest) -> None:
    """Reject structurally unusable requests before any stage runs."""
    if not request.repository_url:
        raise ValueError("repositoryUrl is required")
    if not request.detector_inputs:
        raise ValueError("at least one detector input is required")
    for di in request.detector_inputs:
        if di.tool not in _PARSERS:
            raise ValueError(f"unknown detector tool {di.tool!r} (expected one of {', '.join(_PARSERS)})")
        if di.json_path is None and di.command is None:
            raise ValueError(f"detector input for {di.tool!r} has neither a JSON file nor a command")
        if di.command is not None and not request.clone_path:
            raise ValueError("a detector command needs a clone path (the command receives the repository path)")
    if request.commits_jsonl is None and request.clone_path is None:
        raise ValueError("a commit source is required (commits JSONL or clone path)")


class _StageFailure(Exception):
    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


def run_job(
    request: JobRequest,
    store,
    log: Callable[[dict], None] | None = None,
    batch_size: int = 500,
) -> IngestJob:
    """Execute one ingestion job synchronously against a store."""
    validate_request(request)
    job = IngestJob(job_id=uuid.uuid4().hex[:12], repository_url=request.repository_url)
    _execute(job, request, store, log, batch_size)
    return job


class JobRegistry:
    """In-memory job registry used by the HTTP service; newest first."""

    def __init__(self):
        self._jobs: dict[str, IngestJob] = {}
        self._order: list[str] = []
        self._lock = threading.Lock()

    def add(self, job: IngestJob) -> None:
        with self._lock:
            self._jobs[job.job_id] = job
            self._order.insert(0, job.job_id)

    def get(self, job_id: str) -> IngestJob | None:
        with self._lock:
            return self._jobs.get(job_id)

    def list(self) -> list[IngestJob]:
        with self._lock:
            return [self._jobs[jid] for jid in self._order]


def submit_async(
    request: JobRequest,
    store,
    registry: JobRegistry,
    log: Callable[[dict], None] | None = None,
    batch_size: int = 500,
) -> IngestJob:
    """Start a job on a worker thread; the job is observable immediately."""
    validate_request(request)
    job = IngestJob(job_id=uuid.uuid4().hex[:12], repository_url=request.repository_url)
    registry.add(job)
    thread = threading.Thread(
        target=_execute,
        args=(job, request, store, log, batch_size),
        daemon=True,
        name=f"ingest-{job.job_id}",
    )
    thread.start()
    return job


def _execute(
    job: IngestJob,
    request: JobRequest,
    store,
    log: Callable[[dict], None] | None,
    batch_size: int,
) -> None:
    runner = _JobRunner(job, store, log)

    commit_map: dict = {}
    parsed: list[ParsedDetectorOutput] = []
    conversion = None

    def fetch_commits() -> str:
        nonlocal commit_map
        try:
            commit_map = fetch_commit_records(
                jsonl_path=request.commits_jsonl,
                clone_path=None if request.commits_jsonl else request.clone_path,
            )
        except CommitSourceError as exc:
            raise _StageFailure(str(exc)) from None
        job.counts.commits_seen = len(commit_map)
        return f"{len(commit_map)} commits"

    def run_detectors() -> str:
        for di in request.detector_inputs:
            parser = _PARSERS[di.tool]
            try:
                if di.json_path is not None:
                    path = Path(di.json_path)
                    if not path.is_file():
                        raise _StageFailure(f"detector export not found: {path}")
                    data = json.loads(path.read_text(encoding="utf-8"))
                else:
                    data = run_detector_command(di.command, str(request.clone_path))
                parsed.append(parser(data))
            except json.JSONDecodeError as exc:
                raise _StageFailure(f"{di.tool}: invalid JSON: {exc}") from None
            except DetectorParseError as exc:
                raise _StageFailure(f"{di.tool}: {exc}") from None
        job.counts.records_parsed = sum(p.entries_seen for p in parsed)
        job.counts.records_rejected = sum(p.rejected for p in parsed)
        return f"{job.counts.records_parsed} entries from {len(parsed)} detector output(s)"

    def convert_stage() -> str:
        nonlocal conversion
        records = [record for p in parsed for record in p.records]
        missing = sorted({r.commit_sha1 for r in records} - commit_map.keys())
        if missing:
            raise _StageFailure(str(MissingCommitsError(missing)))
        conversion = convert(records, commit_map, request.repository_url)
        job.counts.records_rejected += len(conversion.rejected)
        job.counts.cases_skipped_duplicate += conversion.duplicates
        return (
            f"{len(conversion.cases)} cases "
            f"({conversion.duplicates} duplicate, {len(conversion.rejected)} rejected)"
        )

    def store_stage() -> str:
        cases = conversion.cases
        for start in range(0, len(cases), batch_size):
            outcome = store.put_cases(cases[start : start + batch_size])
            job.counts.cases_stored += outcome["stored"]
            job.counts.cases_skipped_duplicate += outcome["skippedDuplicate"]
        return f"stored {job.counts.cases_stored}, skipped {job.counts.cases_skipped_duplicate} duplicates"

    def index_stage() -> str:
        stats = store.rebuild_indexes()
        return f"rebuilt {len(stats['indexes'])} indexes"

    runner.run("fetch-commits", fetch_commits)
    runner.run("run-detectors", run_detectors)
    runner.run("convert", convert_stage)
    runner.run("store", store_stage)
    runner.run("index", index_stage)


class _JobRunner:
    def __init__(self, job: IngestJob, store, log: Callable[[dict], None] | None):
        self.job = job
        self.store = store
        self.log = log
        self.halted = False

    def _transition(self, stage: StageState, status: str, detail: str = "") -> None:
        stage.status = status
        if status == RUNNING:
            stage.started_at = _now()
        else:
            stage.finished_at = _now()
        if detail:
            stage.detail = detail
        if self.log is not None:
            self.log({"jobId": self.job.job_id, "stage": stage.name, "status": status, "detail": detail})
        persist = getattr(self.store, "save_job", None)
        if persist is not None:
            persist(self.job)

    def run(self, name: str, fn: Callable[[], str]) -> None:
        stage = self.job.stage(name)
        if self.halted:
            return  # a failed stage halts the rest; they stay pending
        self._transition(stage, RUNNING)
        try:
            detail = fn()
        except _StageFailure as exc:
            self._transition(stage, FAILED, exc.detail)
            self.halted = True
            return
        except Exception as exc:  # unexpected bugs still land on the job
            self._transition(stage, FAILED, f"{type(exc).__name__}: {exc}")
            self.halted = True
            return
        self._transition(stage, DONE, detail)
