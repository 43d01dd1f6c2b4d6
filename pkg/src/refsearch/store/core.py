"""Embedded case store: durable batches, snapshot reads, planned search.

Persistence is an append-only log with one JSON array per line, one line
per batch. A torn final line (crash mid-write) fails to parse and the
whole batch is discarded on reopen, so a batch is applied entirely or
not at all. Readers grab an immutable snapshot object; writers build
replacement dicts/indexes and swap the snapshot reference last, so a
search never observes a partially applied batch.
"""

from __future__ import annotations

import copy
import json
import os
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Iterator

from ..evaluator import MISSING, compile_query, resolve_path
from ..model import RefactoringCase, to_json
from ..querylang.ast import Query
from .indexes import IndexDef, SortedIndex, index_key
from .planner import FullScan, IndexEqAccess, IndexRangeAccess, QueryPlan, plan_query

MAX_LIMIT = 200
DEFAULT_SORT = ("commit.date", "desc")

INDEX_DEFS = (
    IndexDef("type", ("type",)),
    IndexDef("repository", ("repository",)),
    IndexDef("commit.date", ("commit", "date")),
)


class StoreError(Exception):
    pass


@dataclass
class SearchPage:
    total: int
    offset: int
    limit: int
    items: list[dict]

    def to_json(self) -> dict:
        return {"total": self.total, "offset": self.offset, "limit": self.limit, "items": self.items}


class _Snapshot:
    __slots__ = ("docs", "indexes")

    def __init__(self, docs: dict[str, dict], indexes: dict[str, SortedIndex]):
        self.docs = docs
        self.indexes = indexes


def parse_sort(spec: str) -> tuple[str, str]:
    """Parse a `path:asc|desc` sort spec into (path, direction)."""
    path, sep, direction = spec.partition(":")
    if not sep:
        direction = "desc"
    if not path or direction not in ("asc", "desc"):
        raise ValueError(f"sort must look like path:asc or path:desc, got {spec!r}")
    return path, direction


class CaseStore:
    """Single-writer, many-reader document store for refactoring cases."""

    def __init__(self, data_dir: str | Path | None = None):
        self._write_lock = threading.Lock()
        self.data_dir = Path(data_dir) if data_dir is not None else None
        self._log_path = self.data_dir / "cases.log" if self.data_dir else None
        self._log_file = None
        empty_indexes = {d.name: SortedIndex(d) for d in INDEX_DEFS}
        self._snapshot = _Snapshot({}, empty_indexes)
        if self.data_dir is not None:
            self.data_dir.mkdir(parents=True, exist_ok=True)
            self._replay_log()
            self._log_file = open(self._log_path, "ab")

    # --- persistence -----------------------------------------------------

    def _replay_log(self) -> None:
        if not self._log_path.exists():
            return
        docs: dict[str, dict] = {}
        good_bytes = 0
        with open(self._log_path, "rb") as fh:
            for raw_line in fh:
                if not raw_line.endswith(b"\n"):
                    break  # torn final line: the batch never committed
                try:
                    batch = json.loads(raw_line)
                except json.JSONDecodeError:
                    break
                if not isinstance(batch, list):
                    break
                for doc in batch:
                    doc_id = doc.get("id")
                    if isinstance(doc_id, str) and doc_id and doc_id not in docs:
                        docs[doc_id] = doc
                good_bytes += len(raw_line)
        actual = self._log_path.stat().st_size
        if actual > good_bytes:
            # Drop the torn tail so future appends start on a clean line.
            with open(self._log_path, "ab") as fh:
                fh.truncate(good_bytes)
        items = list(docs.items())
        indexes = {d.name: SortedIndex.build(d, items) for d in INDEX_DEFS}
        self._snapshot = _Snapshot(docs, indexes)

    def _append_batch(self, batch_docs: list[dict]) -> None:
        if self._log_file is None:
            return
        line = json.dumps(batch_docs, ensure_ascii=False, separators=(",", ":")).encode("utf-8") + b"\n"
        start = os.fstat(self._log_file.fileno()).st_size
        try:
            self._log_file.write(line)
            self._log_file.flush()
            os.fsync(self._log_file.fileno())
        except OSError as exc:
            try:
                self._log_file.truncate(start)
                self._log_file.seek(start)
            except OSError:
                pass
            raise StoreError(f"failed to persist batch: {exc}") from exc

    def close(self) -> None:
        if self._log_file is not None:
            self._log_file.close()
            self._log_file = None

    # --- jobs ------------------------------------------------------------

    def save_job(self, job) -> None:
        """Persist an ingestion job's state; queryable after completion."""
        if self.data_dir is None:
            return
        jobs_dir = self.data_dir / "jobs"
        jobs_dir.mkdir(exist_ok=True)
        path = jobs_dir / f"{job.job_id}.json"
        path.write_text(json.dumps(job.to_json(), indent=2), encoding="utf-8")

    def load_jobs(self) -> list[dict]:
        if self.data_dir is None:
            return []
        jobs_dir = self.data_dir / "jobs"
        if not jobs_dir.is_dir():
            return []
        jobs = []
        for path in jobs_dir.glob("*.json"):
            try:
                jobs.append(json.loads(path.read_text(encoding="utf-8")))
            except (OSError, json.JSONDecodeError):
                continue
        jobs.sort(key=lambda j: j.get("createdAt") or "", reverse=True)
        return jobs

    # --- writes ----------------------------------------------------------

    def put_cases(self, batch: Iterable[RefactoringCase | dict]) -> dict:
        """Insert new cases; existing ids are skipped. Atomic per batch."""
        docs: list[dict] = []
        for case in batch:
            doc = to_json(case) if isinstance(case, RefactoringCase) else case
            doc_id = doc.get("id")
            if not isinstance(doc_id, str) or not doc_id:
                raise StoreError("every case needs a non-empty id before storage")
            docs.append(doc)

        with self._write_lock:
            snapshot = self._snapshot
            fresh: dict[str, dict] = {}
            skipped = 0
            for doc in docs:
                doc_id = doc["id"]
                if doc_id in snapshot.docs or doc_id in fresh:
                    skipped += 1
                else:
                    fresh[doc_id] = doc
            if not fresh:
                return {"stored": 0, "skippedDuplicate": skipped}
            self._append_batch(list(fresh.values()))
            new_docs = {**snapshot.docs, **fresh}
            new_items = list(fresh.items())
            new_indexes = {
                name: index.with_added(new_items) for name, index in snapshot.indexes.items()
            }
            self._snapshot = _Snapshot(new_docs, new_indexes)
        return {"stored": len(fresh), "skippedDuplicate": skipped}

    def rebuild_indexes(self) -> dict:
        """Drop and rebuild every index from the document set."""
        with self._write_lock:
            snapshot = self._snapshot
            items = list(snapshot.docs.items())
            indexes = {d.name: SortedIndex.build(d, items) for d in INDEX_DEFS}
            self._snapshot = _Snapshot(snapshot.docs, indexes)
            return {
                "caseCount": len(snapshot.docs),
                "indexes": {name: len(index) for name, index in indexes.items()},
            }

    # --- reads -----------------------------------------------------------

    def get_case(self, case_id: str) -> dict | None:
        doc = self._snapshot.docs.get(case_id)
        return copy.deepcopy(doc) if doc is not None else None

    def plan(self, ast: Query | None) -> QueryPlan:
        return plan_query(ast)

    def search(
        self,
        ast: Query | None = None,
        offset: int = 0,
        limit: int = 20,
        sort: tuple[str, str] = DEFAULT_SORT,
        force_full_scan: bool = False,
    ) -> SearchPage:
        """Planned, ordered, paginated search.

        Matches sort by the sort key with ties broken by id ascending;
        documents missing the key sort last. total is the exact count.
        """
        if not 0 <= limit <= MAX_LIMIT:
            raise ValueError(f"limit must be between 0 and {MAX_LIMIT}")
        if offset < 0:
            raise ValueError("offset must be >= 0")

        snapshot = self._snapshot
        matches = self._matches(snapshot, ast, force_full_scan)
        ordered = _order(matches, sort, snapshot)
        return SearchPage(
            total=len(ordered),
            offset=offset,
            limit=limit,
            items=[doc for _, doc in ordered[offset : offset + limit]],
        )

    def _matches(
        self, snapshot: _Snapshot, ast: Query | None, force_full_scan: bool
    ) -> list[tuple[str, dict]]:
        if ast is None:
            return list(snapshot.docs.items())
        predicate = compile_query(ast)
        plan = QueryPlan(FullScan(), ast) if force_full_scan else plan_query(ast)
        access = plan.access
        if isinstance(access, FullScan):
            return [(doc_id, doc) for doc_id, doc in snapshot.docs.items() if predicate(doc)]
        index = snapshot.indexes[access.index]
        if isinstance(access, IndexEqAccess):
            candidate_ids = index.scan_eq(access.keys)
        else:
            candidate_ids = index.scan_range(
                access.bucket,
                access.lower,
                access.lower_inclusive,
                access.upper,
                access.upper_inclusive,
            )
        docs = snapshot.docs
        out = []
        seen: set[str] = set()
        for doc_id in candidate_ids:
            if doc_id in seen:
                continue
            seen.add(doc_id)
            doc = docs.get(doc_id)
            if doc is not None and predicate(doc):
                out.append((doc_id, doc))
        return out

    # --- stats -----------------------------------------------------------

    def stats(self) -> dict:
        snapshot = self._snapshot
        commits: set[str] = set()
        repositories: set[str] = set()
        by_type: dict[str, int] = {}
        by_tool: dict[str, int] = {}
        for doc in snapshot.docs.values():
            sha1 = _dig(doc, "commit", "sha1")
            if isinstance(sha1, str):
                commits.add(sha1)
            repo = doc.get("repository")
            if isinstance(repo, str):
                repositories.add(repo)
            rtype = doc.get("type")
            if isinstance(rtype, str):
                by_type[rtype] = by_type.get(rtype, 0) + 1
            tool = _dig(doc, "meta", "tool")
            if isinstance(tool, str):
                by_tool[tool] = by_tool.get(tool, 0) + 1
        return {
            "caseCount": len(snapshot.docs),
            "commitCount": len(commits),
            "repositoryCount": len(repositories),
            "countsByType": dict(sorted(by_type.items(), key=lambda kv: (-kv[1], kv[0]))),
            "countsByTool": dict(sorted(by_tool.items(), key=lambda kv: (-kv[1], kv[0]))),
        }

    def iter_docs(self) -> Iterator[dict]:
        yield from self._snapshot.docs.values()

    def __len__(self) -> int:
        return len(self._snapshot.docs)


def _dig(doc: dict, *keys: str) -> Any:
    node: Any = doc
    for key in keys:
        if not isinstance(node, dict):
            return None
        node = node.get(key)
    return node


def _order(
    matches: list[tuple[str, dict]], sort: tuple[str, str], snapshot: _Snapshot
) -> list[tuple[str, dict]]:
    path, direction = sort
    segments = tuple(path.split("."))
    present: list[tuple[tuple, str, dict]] = []
    absent: list[tuple[str, dict]] = []
    for doc_id, doc in matches:
        key = _sort_key(doc, segments)
        if key is None:
            absent.append((doc_id, doc))
        else:
            present.append((key, doc_id, doc))
    present.sort(key=lambda t: t[1])  # id ascending breaks ties...
    present.sort(key=lambda t: t[0], reverse=(direction == "desc"))  # ...stably
    absent.sort(key=lambda t: t[0])
    return [(doc_id, doc) for _, doc_id, doc in present] + absent


def _sort_key(doc: dict, segments: tuple[str, ...]) -> tuple | None:
    value = resolve_path(doc, segments)
    if value is MISSING:
        return None
    if isinstance(value, list):
        # Arrays sort by their smallest indexable element.
        keys = [index_key(v) for v in value]
        keys = [k for k in keys if k is not None]
        return min(keys) if keys else None
    return index_key(value)
