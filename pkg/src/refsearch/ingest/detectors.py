"""Parsers for the two supported detector export formats.

Detector outputs differ per tool; both are normalized to DetectorRecord.
Individual malformed entries are rejected and counted, never the whole
file — real exports routinely contain a few irregular entries.
"""

from __future__ import annotations

import json
import shlex
import subprocess
from dataclasses import dataclass, field
from typing import Any

RMINER_TOOL = "RefactoringMiner"
REFDIFF_TOOL = "RefDiff"


class DetectorParseError(ValueError):
    """The export as a whole is unusable (malformed JSON, missing sha1...)."""


@dataclass
class ElementRef:
    """One code element reference from a detector record."""

    role: str
    name: str
    file: str | None = None
    begin_line: int | None = None
    end_line: int | None = None

    @property
    def line_count(self) -> int | None:
        if self.begin_line is None or self.end_line is None:
            return None
        return self.end_line - self.begin_line + 1


@dataclass
class DetectorRecord:
    tool: str
    commit_sha1: str
    type: str
    description: str
    left_elements: list[ElementRef] = field(default_factory=list)
    right_elements: list[ElementRef] = field(default_factory=list)
    raw: dict = field(default_factory=dict)


@dataclass
class ParsedDetectorOutput:
    records: list[DetectorRecord]
    rejected: int = 0
    reject_reasons: list[str] = field(default_factory=list)

    @property
    def entries_seen(self) -> int:
        return len(self.records) + self.rejected


def parse_rminer_output(data: Any) -> ParsedDetectorOutput:
    """Parse a RefactoringMiner-style export.

    Expected shape: {"commits": [{"sha1": ..., "refactorings": [{"type",
    "description", "leftSideLocations": [...], "rightSideLocations": [...]}]}]}
    where each location carries filePath/startLine/endLine plus a role
    description and the element signature in codeElement.
    """
    commits = _commit_list(data)
    out = ParsedDetectorOutput(records=[])
    for commit in commits:
        sha1 = commit.get("sha1")
        if not isinstance(sha1, str) or not sha1:
            raise DetectorParseError("commit entry missing 'sha1'")
        for entry in commit.get("refactorings") or []:
            if not isinstance(entry, dict):
                out.rejected += 1
                out.reject_reasons.append(f"{sha1}: refactoring entry is not an object")
                continue
            rtype = entry.get("type")
            if not isinstance(rtype, str) or not rtype:
                out.rejected += 1
                out.reject_reasons.append(f"{sha1}: refactoring entry missing 'type'")
                continue
            record = DetectorRecord(
                tool=RMINER_TOOL,
                commit_sha1=sha1,
                type=rtype,
                description=str(entry.get("description") or ""),
                left_elements=[_rminer_element(loc) for loc in entry.get("leftSideLocations") or []],
                right_elements=[_rminer_element(loc) for loc in entry.get("rightSideLocations") or []],
                raw=entry,
            )
            out.records.append(record)
    return out


def _rminer_element(loc: Any) -> ElementRef:
    if not isinstance(loc, dict):
        return ElementRef(role="", name="")
    return ElementRef(
        role=str(loc.get("description") or ""),
        name=str(loc.get("codeElement") or ""),
        file=loc.get("filePath"),
        begin_line=_line(loc.get("startLine")),
        end_line=_line(loc.get("endLine")),
    )


def parse_refdiff_output(data: Any) -> ParsedDetectorOutput:
    """Parse a RefDiff-style relationship export.

    Expected shape: {"commits": [{"sha1": ..., "relationships": [{"type":
    "EXTRACT", "nodeBefore": {"type", "name", "file", "beginLine",
    "endLine"}, "nodeAfter": {...}}]}]}. Relationship kinds translate to
    the shared type vocabulary (EXTRACT -> "Extract Method", RENAME on a
    Method node -> "Rename Method", ...); unmapped kinds pass through.
    """
    commits = _commit_list(data)
    out = ParsedDetectorOutput(records=[])
    for commit in commits:
        sha1 = commit.get("sha1")
        if not isinstance(sha1, str) or not sha1:
            raise DetectorParseError("commit entry missing 'sha1'")
        for entry in commit.get("relationships") or []:
            if not isinstance(entry, dict):
                out.rejected += 1
                out.reject_reasons.append(f"{sha1}: relationship entry is not an object")
                continue
            rel = entry.get("type")
            if not isinstance(rel, str) or not rel:
                out.rejected += 1
                out.reject_reasons.append(f"{sha1}: relationship entry missing 'type'")
                continue
            before = _refdiff_element(entry.get("nodeBefore"), "source")
            after = _refdiff_element(entry.get("nodeAfter"), "target")
            rtype = _translate_relationship(rel, entry)
            description = entry.get("description")
            if not isinstance(description, str) or not description:
                description = _describe(rtype, before, after)
            record = DetectorRecord(
                tool=REFDIFF_TOOL,
                commit_sha1=sha1,
                type=rtype,
                description=description,
                left_elements=[before] if before else [],
                right_elements=[after] if after else [],
                raw=entry,
            )
            if not record.left_elements and not record.right_elements and not description:
                out.rejected += 1
                out.reject_reasons.append(f"{sha1}: relationship has neither nodes nor description")
                continue
            out.records.append(record)
    return out


_PLAIN_RELATIONSHIPS = {
    "EXTRACT": "Extract Method",
    "EXTRACT_MOVE": "Extract And Move Method",
    "INLINE": "Inline Method",
    "EXTRACT_SUPER": "Extract Superclass",
}

_KIND_RELATIONSHIPS = {
    "RENAME": "Rename",
    "MOVE": "Move",
    "INTERNAL_MOVE": "Move",
    "MOVE_RENAME": "Move And Rename",
    "INTERNAL_MOVE_RENAME": "Move And Rename",
    "PULL_UP": "Pull Up",
    "PUSH_DOWN": "Push Down",
}


def _translate_relationship(rel: str, entry: dict) -> str:
    kind = rel.upper()
    if kind in _PLAIN_RELATIONSHIPS:
        return _PLAIN_RELATIONSHIPS[kind]
    if kind in _KIND_RELATIONSHIPS:
        node = entry.get("nodeBefore") or entry.get("nodeAfter") or {}
        node_kind = node.get("type") if isinstance(node, dict) else None
        prefix = _KIND_RELATIONSHIPS[kind]
        if isinstance(node_kind, str) and node_kind:
            return f"{prefix} {node_kind.title()}"
        return prefix
    return rel


def _describe(rtype: str, before: ElementRef | None, after: ElementRef | None) -> str:
    before_name = before.name if before else ""
    after_name = after.name if after else ""
    if rtype == "Extract Method" and before_name and after_name:
        return f"Extracted method {after_name} from {before_name}"
    if rtype.startswith("Rename") and before_name and after_name:
        return f"Renamed {before_name} to {after_name}"
    if before_name and after_name:
        return f"{rtype}: {before_name} -> {after_name}"
    return f"{rtype}: {before_name or after_name}".rstrip(": ")


def _refdiff_element(node: Any, role: str) -> ElementRef | None:
    if not isinstance(node, dict):
        return None
    return ElementRef(
        role=role,
        name=str(node.get("name") or ""),
        file=node.get("file"),
        begin_line=_line(node.get("beginLine")),
        end_line=_line(node.get("endLine")),
    )


def _line(value: Any) -> int | None:
    if isinstance(value, bool) or not isinstance(value, int):
        return None
    return value


def _commit_list(data: Any) -> list[dict]:
    if not isinstance(data, dict) or not isinstance(data.get("commits"), list):
        raise DetectorParseError("detector export must be an object with a 'commits' array")
    commits = data["commits"]
    if not all(isinstance(c, dict) for c in commits):
        raise DetectorParseError("every entry in 'commits' must be an object")
    return commits


def run_detector_command(command: str, repo_path: str, timeout: float = 3600.0) -> Any:
    """Run an external detector; it must print its JSON export on stdout.

    `{repo}` in the command template is replaced with the repository
    path; without a placeholder the path is appended as the last argument.
    """
    argv = shlex.split(command)
    if any("{repo}" in arg for arg in argv):
        argv = [arg.replace("{repo}", repo_path) for arg in argv]
    else:
        argv.append(repo_path)
    proc = subprocess.run(argv, capture_output=True, text=True, timeout=timeout)
    if proc.returncode != 0:
        tail = proc.stderr.strip().splitlines()[-1] if proc.stderr.strip() else ""
        raise DetectorParseError(f"detector command failed with exit code {proc.returncode}: {tail}")
    try:
        return json.loads(proc.stdout)
    except json.JSONDecodeError as exc:
        raise DetectorParseError(f"detector command printed invalid JSON: {exc}") from None
