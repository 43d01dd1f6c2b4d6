"""Unified refactoring-case documents: types, identity, validation, JSON wire form.

The wire encoding realizes the dotted property names as nested objects
(commit.size.files.changed -> {"commit": {"size": {"files": {"changed": ...}}}}).
Keys the schema does not model round-trip losslessly through the `extra`
tree, preserving whatever detector-specific data came in.
"""

from __future__ import annotations

import copy
import hashlib
import re
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any

_SHA1_RE = re.compile(r"[0-9a-f]{40}\Z")


class CaseDecodeError(ValueError):
    """A known wire field had the wrong JSON type."""


@dataclass
class CodeFragmentRef:
    """A code element involved in the refactoring, before or after."""

    name: str = ""
    file: str | None = None
    lines: int | None = None
    begin: int | None = None
    end: int | None = None


@dataclass
class CommitMeta:
    sha1: str = ""
    date: str = ""
    message: str = ""
    author_name: str = ""
    files_changed: int = 0
    lines_inserted: int = 0
    lines_deleted: int = 0
    refactorings_total: int = 1


@dataclass
class ExtractMethodInfo:
    source_methods_count: int = 1
    source_method_lines: int = 0
    extracted_lines: int = 0


@dataclass
class RenameInfo:
    from_name: str = ""
    to_name: str = ""


@dataclass
class RefactoringCase:
    type: str = ""
    repository: str = ""
    tool: str = ""
    commit: CommitMeta = field(default_factory=CommitMeta)
    description: str = ""
    before: CodeFragmentRef | None = None
    after: CodeFragmentRef | None = None
    extract_method: ExtractMethodInfo | None = None
    rename: RenameInfo | None = None
    extra: dict[str, Any] = field(default_factory=dict)
    id: str = ""


def normalize_repository(url: str) -> str:
    """Strip trailing slashes and a trailing .git from a repository URL."""
    url = url.strip().rstrip("/")
    if url.endswith(".git"):
        url = url[: -len(".git")]
    return url.rstrip("/")


def case_id_from_parts(
    repository: str,
    sha1: str,
    tool: str,
    type_: str,
    description: str,
    before_name: str = "",
    after_name: str = "",
) -> str:
    """Stable content hash identifying a case.

    SHA-256 over a length-prefixed concatenation of the identity fields
    (absent names encode as empty), truncated to 40 hex characters.
    Length prefixes keep the concatenation unambiguous whatever the
    fields contain.
    """
    blob = b""
    for part in (repository, sha1, tool, type_, description, before_name, after_name):
        encoded = part.encode("utf-8")
        blob += b"%d:%s" % (len(encoded), encoded)
    return hashlib.sha256(blob).hexdigest()[:40]


def case_id(case: RefactoringCase) -> str:
    """Recomputable identifier for a case document."""
    return case_id_from_parts(
        case.repository,
        case.commit.sha1,
        case.tool,
        case.type,
        case.description,
        case.before.name if case.before else "",
        case.after.name if case.after else "",
    )


def _valid_date(value: str) -> bool:
    try:
        datetime.fromisoformat(value.replace("Z", "+00:00"))
    except ValueError:
        return False
    return True


def validate_case(case: RefactoringCase) -> list[str]:
    """Check every documented invariant; returns all violations, not the first."""
    violations: list[str] = []
    if not case.type:
        violations.append("type must be non-empty")
    if not case.repository:
        violations.append("repository must be non-empty")
    elif case.repository.endswith("/") or case.repository.endswith(".git"):
        violations.append("repository must be normalized (no trailing '/' or '.git')")
    if not case.tool:
        violations.append("meta.tool must be non-empty")
    if not _SHA1_RE.match(case.commit.sha1):
        violations.append("commit.sha1 must be 40 hex chars")
    if not case.commit.date or not _valid_date(case.commit.date):
        violations.append("commit.date must be an ISO-8601 timestamp")
    for label, count in (
        ("commit.size.files.changed", case.commit.files_changed),
        ("commit.size.lines.inserted", case.commit.lines_inserted),
        ("commit.size.lines.deleted", case.commit.lines_deleted),
    ):
        if count < 0:
            violations.append(f"{label} must be >= 0")
    if case.commit.refactorings_total < 1:
        violations.append("commit.refactorings.total must be >= 1")
    if case.extract_method is not None:
        em = case.extract_method
        if em.source_methods_count < 1:
            violations.append("extractMethod.sourceMethodsCount must be >= 1")
        if em.source_method_lines < 0:
            violations.append("extractMethod.sourceMethodLines must be >= 0")
        if em.extracted_lines < 0:
            violations.append("extractMethod.extractedLines must be >= 0")
    if case.rename is not None:
        if not case.rename.from_name or not case.rename.to_name:
            violations.append("rename.from and rename.to must be non-empty")
        elif "(" in case.rename.from_name or "(" in case.rename.to_name:
            violations.append("rename.from/to must be simple names without parameter lists")
    for label, fragment in (("before", case.before), ("after", case.after)):
        if fragment is None:
            continue
        if fragment.lines is not None and fragment.lines < 0:
            violations.append(f"{label}.location.lines must be >= 0")
        if fragment.begin is not None and fragment.end is not None:
            if fragment.begin > fragment.end:
                violations.append(f"{label}.location.begin must be <= end")
            elif fragment.lines is not None and fragment.lines != fragment.end - fragment.begin + 1:
                violations.append(f"{label}.location.lines must equal end - begin + 1")
    if case.id and case.id != case_id(case):
        violations.append("id does not match the recomputed case id")
    return violations


# --- wire encoding ---------------------------------------------------------


def _set_path(doc: dict, path: tuple[str, ...], value: Any) -> None:
    node = doc
    for key in path[:-1]:
        child = node.get(key)
        if not isinstance(child, dict):
            child = {}
            node[key] = child
        node = child
    node[path[-1]] = value


def _fragment_json(fragment: CodeFragmentRef) -> dict:
    location: dict[str, Any] = {}
    if fragment.file is not None:
        location["file"] = fragment.file
    if fragment.lines is not None:
        location["lines"] = fragment.lines
    if fragment.begin is not None:
        location["begin"] = fragment.begin
    if fragment.end is not None:
        location["end"] = fragment.end
    out: dict[str, Any] = {"name": fragment.name}
    if location:
        out["location"] = location
    return out


def _merge_fragment(doc: dict, key: str, fragment: CodeFragmentRef | None) -> None:
    if fragment is None:
        return
    fresh = _fragment_json(fragment)
    existing = doc.get(key)
    if isinstance(existing, dict):
        existing_location = existing.get("location")
        fresh_location = fresh.pop("location", None)
        existing.update(fresh)
        if fresh_location is not None:
            if isinstance(existing_location, dict):
                existing_location.update(fresh_location)
            else:
                existing["location"] = fresh_location
    else:
        doc[key] = fresh


def to_json(case: RefactoringCase) -> dict:
    """Serialize to the nested wire form; `extra` keys are merged back in."""
    doc: dict[str, Any] = copy.deepcopy(case.extra) if case.extra else {}
    doc["id"] = case.id
    doc["type"] = case.type
    doc["description"] = case.description
    doc["repository"] = case.repository
    _merge_fragment(doc, "before", case.before)
    _merge_fragment(doc, "after", case.after)
    commit = case.commit
    _set_path(doc, ("commit", "date"), commit.date)
    _set_path(doc, ("commit", "message"), commit.message)
    _set_path(doc, ("commit", "authorName"), commit.author_name)
    _set_path(doc, ("commit", "sha1"), commit.sha1)
    _set_path(doc, ("commit", "size", "files", "changed"), commit.files_changed)
    _set_path(doc, ("commit", "size", "lines", "inserted"), commit.lines_inserted)
    _set_path(doc, ("commit", "size", "lines", "deleted"), commit.lines_deleted)
    _set_path(doc, ("commit", "refactorings", "total"), commit.refactorings_total)
    if case.extract_method is not None:
        em = case.extract_method
        _set_path(doc, ("extractMethod", "sourceMethodsCount"), em.source_methods_count)
        _set_path(doc, ("extractMethod", "sourceMethodLines"), em.source_method_lines)
        _set_path(doc, ("extractMethod", "extractedLines"), em.extracted_lines)
    if case.rename is not None:
        _set_path(doc, ("rename", "from"), case.rename.from_name)
        _set_path(doc, ("rename", "to"), case.rename.to_name)
    _set_path(doc, ("meta", "tool"), case.tool)
    return doc


def _take(obj: dict, key: str, kind: str, where: str, default=None):
    if key not in obj:
        return default
    value = obj.pop(key)
    path = f"{where}.{key}" if where else key
    if kind == "str":
        if not isinstance(value, str):
            raise CaseDecodeError(f"{path} must be a string, got {type(value).__name__}")
    elif kind == "int":
        if isinstance(value, bool) or not isinstance(value, int):
            raise CaseDecodeError(f"{path} must be an integer, got {type(value).__name__}")
    elif kind == "dict":
        if not isinstance(value, dict):
            raise CaseDecodeError(f"{path} must be an object, got {type(value).__name__}")
    return value


def _take_fragment(obj: dict, key: str) -> CodeFragmentRef | None:
    raw = _take(obj, key, "dict", "")
    if raw is None:
        return None
    fragment = CodeFragmentRef(name=_take(raw, "name", "str", key, default=""))
    location = _take(raw, "location", "dict", key)
    if location is not None:
        where = f"{key}.location"
        fragment.file = _take(location, "file", "str", where)
        fragment.lines = _take(location, "lines", "int", where)
        fragment.begin = _take(location, "begin", "int", where)
        fragment.end = _take(location, "end", "int", where)
        if location:
            raw["location"] = location
    if raw:
        obj[key] = raw
    return fragment


def from_json(data: dict) -> RefactoringCase:
    """Parse the wire form; unknown keys land in `extra` untouched.

    Raises CaseDecodeError when a known field carries the wrong type;
    semantic problems are validate_case's business, not this parser's.
    """
    if not isinstance(data, dict):
        raise CaseDecodeError("a case must be a JSON object")
    work = copy.deepcopy(data)

    case = RefactoringCase(
        id=_take(work, "id", "str", "", default=""),
        type=_take(work, "type", "str", "", default=""),
        description=_take(work, "description", "str", "", default=""),
        repository=_take(work, "repository", "str", "", default=""),
    )
    case.before = _take_fragment(work, "before")
    case.after = _take_fragment(work, "after")

    commit_raw = _take(work, "commit", "dict", "")
    commit = CommitMeta()
    if commit_raw is not None:
        commit.date = _take(commit_raw, "date", "str", "commit", default="")
        commit.message = _take(commit_raw, "message", "str", "commit", default="")
        commit.author_name = _take(commit_raw, "authorName", "str", "commit", default="")
        commit.sha1 = _take(commit_raw, "sha1", "str", "commit", default="")
        size = _take(commit_raw, "size", "dict", "commit")
        if size is not None:
            files = _take(size, "files", "dict", "commit.size")
            if files is not None:
                commit.files_changed = _take(files, "changed", "int", "commit.size.files", default=0)
                if files:
                    size["files"] = files
            lines = _take(size, "lines", "dict", "commit.size")
            if lines is not None:
                commit.lines_inserted = _take(lines, "inserted", "int", "commit.size.lines", default=0)
                commit.lines_deleted = _take(lines, "deleted", "int", "commit.size.lines", default=0)
                if lines:
                    size["lines"] = lines
            if size:
                commit_raw["size"] = size
        refactorings = _take(commit_raw, "refactorings", "dict", "commit")
        if refactorings is not None:
            commit.refactorings_total = _take(refactorings, "total", "int", "commit.refactorings", default=1)
            if refactorings:
                commit_raw["refactorings"] = refactorings
        if commit_raw:
            work["commit"] = commit_raw
    case.commit = commit

    em_raw = _take(work, "extractMethod", "dict", "")
    if em_raw is not None:
        case.extract_method = ExtractMethodInfo(
            source_methods_count=_take(em_raw, "sourceMethodsCount", "int", "extractMethod", default=1),
            source_method_lines=_take(em_raw, "sourceMethodLines", "int", "extractMethod", default=0),
            extracted_lines=_take(em_raw, "extractedLines", "int", "extractMethod", default=0),
        )
        if em_raw:
            work["extractMethod"] = em_raw

    rename_raw = _take(work, "rename", "dict", "")
    if rename_raw is not None:
        case.rename = RenameInfo(
            from_name=_take(rename_raw, "from", "str", "rename", default=""),
            to_name=_take(rename_raw, "to", "str", "rename", default=""),
        )
        if rename_raw:
            work["rename"] = rename_raw

    meta_raw = _take(work, "meta", "dict", "")
    if meta_raw is not None:
        case.tool = _take(meta_raw, "tool", "str", "meta", default="")
        if meta_raw:
            work["meta"] = meta_raw

    case.extra = work
    return case
