"""Commit metadata acquisition: JSONL files or a local git clone.

Counters follow shortstat conventions with rename detection disabled;
merge commits are measured against their first parent. Dates are
normalized to UTC ISO-8601 with a Z suffix so lexicographic range
queries behave.
"""

from __future__ import annotations

import json
import re
import subprocess
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable

_SHA1_RE = re.compile(r"[0-9a-f]{40}\Z")


class CommitSourceError(ValueError):
    """The commit source is missing or unreadable."""


class MissingCommitsError(ValueError):
    """Detector records reference commits absent from the source."""

    def __init__(self, missing: list[str]):
        self.missing = missing
        shown = ", ".join(missing[:5])
        more = f" (+{len(missing) - 5} more)" if len(missing) > 5 else ""
        super().__init__(f"commit metadata missing for: {shown}{more}")


@dataclass
class CommitRecord:
    sha1: str
    date: str
    message: str = ""
    author_name: str = ""
    files_changed: int = 0
    lines_inserted: int = 0
    lines_deleted: int = 0


def load_commits_jsonl(path: str | Path) -> dict[str, CommitRecord]:
    """Read CommitRecords from a JSONL file keyed by sha1."""
    path = Path(path)
    if not path.is_file():
        raise CommitSourceError(f"commits file not found: {path}")
    records: dict[str, CommitRecord] = {}
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CommitSourceError(f"{path}:{lineno}: invalid JSON: {exc}") from None
        sha1 = data.get("sha1")
        if not isinstance(sha1, str) or not _SHA1_RE.match(sha1):
            raise CommitSourceError(f"{path}:{lineno}: sha1 must be 40 hex chars")
        record = CommitRecord(
            sha1=sha1,
            date=_utc(str(data.get("date") or ""), where=f"{path}:{lineno}"),
            message=str(data.get("message") or ""),
            author_name=str(data.get("authorName") or ""),
            files_changed=_count(data.get("filesChanged"), f"{path}:{lineno}: filesChanged"),
            lines_inserted=_count(data.get("linesInserted"), f"{path}:{lineno}: linesInserted"),
            lines_deleted=_count(data.get("linesDeleted"), f"{path}:{lineno}: linesDeleted"),
        )
        records[sha1] = record
    return records


def _count(value, where: str) -> int:
    if value is None:
        return 0
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise CommitSourceError(f"{where} must be a non-negative integer")
    return value


def _utc(value: str, where: str) -> str:
    try:
        parsed = datetime.fromisoformat(value.replace("Z", "+00:00"))
    except ValueError:
        raise CommitSourceError(f"{where}: date must be ISO-8601, got {value!r}") from None
    if parsed.tzinfo is None:
        parsed = parsed.replace(tzinfo=timezone.utc)
    return parsed.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


_RECORD_SEP = "\x1e"
_FIELD_SEP = "\x1f"


def read_git_history(clone_path: str | Path) -> dict[str, CommitRecord]:
    """Extract history from a local clone via one machine-readable git log pass.

    Uses --numstat with renames off and first-parent merge diffs; the
    per-commit counters are the sums over numstat lines (binary files
    count as one changed file with zero lines either way).
    """
    clone = Path(clone_path)
    if not clone.is_dir():
        raise CommitSourceError(f"clone path not found: {clone}")
    argv = [
        "git",
        "-C",
        str(clone),
        "log",
        "--all",
        "--no-renames",
        "--diff-merges=first-parent",
        "--numstat",
        f"--pretty=format:{_RECORD_SEP}%H{_FIELD_SEP}%aI{_FIELD_SEP}%aN{_FIELD_SEP}%B{_FIELD_SEP}",
    ]
    proc = subprocess.run(argv, capture_output=True, text=True)
    if proc.returncode != 0:
        tail = proc.stderr.strip().splitlines()[-1] if proc.stderr.strip() else "unknown error"
        raise CommitSourceError(f"git log failed in {clone}: {tail}")

    records: dict[str, CommitRecord] = {}
    for chunk in proc.stdout.split(_RECORD_SEP):
        if not chunk.strip():
            continue
        try:
            sha1, date_iso, author, rest = chunk.split(_FIELD_SEP, 3)
        except ValueError:
            raise CommitSourceError("unexpected git log record format") from None
        message, _, numstat_block = rest.partition(_FIELD_SEP)
        files = inserted = deleted = 0
        for line in numstat_block.splitlines():
            parts = line.strip().split("\t")
            if len(parts) != 3 or not parts[2]:
                continue
            files += 1
            if parts[0] != "-":
                inserted += int(parts[0])
            if parts[1] != "-":
                deleted += int(parts[1])
        records[sha1] = CommitRecord(
            sha1=sha1,
            date=_utc(date_iso, where=f"commit {sha1[:8]}"),
            message=message.rstrip("\n"),
            author_name=author,
            files_changed=files,
            lines_inserted=inserted,
            lines_deleted=deleted,
        )
    return records


def fetch_commit_records(
    jsonl_path: str | Path | None = None,
    clone_path: str | Path | None = None,
    referenced: Iterable[str] = (),
) -> dict[str, CommitRecord]:
    """Load commit metadata and require completeness for the referenced sha1s."""
    if jsonl_path is not None:
        records = load_commits_jsonl(jsonl_path)
    elif clone_path is not None:
        records = read_git_history(clone_path)
    else:
        raise CommitSourceError("no commit source given (need a commits JSONL file or a clone path)")
    missing = sorted(set(referenced) - records.keys())
    if missing:
        raise MissingCommitsError(missing)
    return records
