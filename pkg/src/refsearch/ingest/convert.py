"""Turns detector records plus commit metadata into validated cases."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..model import (
    CodeFragmentRef,
    CommitMeta,
    ExtractMethodInfo,
    RefactoringCase,
    RenameInfo,
    case_id,
    normalize_repository,
    validate_case,
)
from .commits import CommitRecord
from .detectors import DetectorRecord, ElementRef


@dataclass
class ConversionResult:
    cases: list[RefactoringCase] = field(default_factory=list)
    duplicates: int = 0
    rejected: list[tuple[DetectorRecord, list[str]]] = field(default_factory=list)


def _source_methods(record: DetectorRecord) -> list[ElementRef]:
    # RefactoringMiner tags source method declarations with "declaration";
    # RefDiff elements carry the plain "source" role. Code-fragment
    # locations (no "declaration") must not count as source methods.
    declared = [
        e
        for e in record.left_elements
        if "declaration" in e.role.lower() and "source" in e.role.lower()
    ]
    if declared:
        return declared
    plain = [e for e in record.left_elements if e.role.lower() == "source"]
    return plain or list(record.left_elements)


def _extracted_element(record: DetectorRecord) -> ElementRef | None:
    for element in record.right_elements:
        role = element.role.lower()
        if "extracted" in role or role == "target":
            return element
    return record.right_elements[0] if record.right_elements else None


def derive_extract_method_fields(record: DetectorRecord) -> ExtractMethodInfo | None:
    """Counts and line sizes for an Extract Method record.

    sourceMethodsCount counts distinct source methods on the left side;
    sourceMethodLines is the largest of their spans; extractedLines is
    the extracted method's span. Absent when the record has no line spans.
    """
    sources = [e for e in _source_methods(record) if e.line_count is not None]
    extracted = _extracted_element(record)
    if not sources or extracted is None or extracted.line_count is None:
        return None
    return ExtractMethodInfo(
        source_methods_count=len({e.name for e in sources}),
        source_method_lines=max(e.line_count for e in sources),
        extracted_lines=extracted.line_count,
    )


def _simple_name(signature: str) -> str:
    name = signature.split("(", 1)[0].strip()
    name = name.split()[-1] if name.split() else ""
    return name.rsplit(".", 1)[-1]


def derive_rename_fields(record: DetectorRecord) -> RenameInfo | None:
    """Old and new simple names for a Rename record, parameter lists stripped."""
    if not record.left_elements or not record.right_elements:
        return None
    from_name = _simple_name(record.left_elements[0].name)
    to_name = _simple_name(record.right_elements[0].name)
    if not from_name or not to_name:
        return None
    return RenameInfo(from_name=from_name, to_name=to_name)


def _pick_before(record: DetectorRecord) -> ElementRef | None:
    for element in record.left_elements:
        if "source" in element.role.lower():
            return element
    return record.left_elements[0] if record.left_elements else None


def _pick_after(record: DetectorRecord) -> ElementRef | None:
    for element in record.right_elements:
        role = element.role.lower()
        if "target" in role or "extracted" in role:
            return element
    return record.right_elements[0] if record.right_elements else None


def _fragment(element: ElementRef | None) -> CodeFragmentRef | None:
    if element is None:
        return None
    return CodeFragmentRef(
        name=element.name,
        file=element.file,
        lines=element.line_count,
        begin=element.begin_line,
        end=element.end_line,
    )


def convert(
    records: list[DetectorRecord],
    commit_map: dict[str, CommitRecord],
    repository_url: str,
) -> ConversionResult:
    """Build validated RefactoringCases from detector records.

    commit.refactorings.total is the number of distinct cases sharing
    (sha1, tool) within this conversion. Invalid cases are rejected with
    their violation list; in-batch duplicates are counted, never dropped
    silently.
    """
    repository = normalize_repository(repository_url)
    result = ConversionResult()
    seen_ids: set[str] = set()
    survivors: list[RefactoringCase] = []

    for record in records:
        commit = commit_map.get(record.commit_sha1)
        if commit is None:
            result.rejected.append((record, [f"no commit metadata for {record.commit_sha1}"]))
            continue
        case = RefactoringCase(
            type=record.type,
            repository=repository,
            tool=record.tool,
            description=record.description,
            before=_fragment(_pick_before(record)),
            after=_fragment(_pick_after(record)),
            commit=CommitMeta(
                sha1=commit.sha1,
                date=commit.date,
                message=commit.message,
                author_name=commit.author_name,
                files_changed=commit.files_changed,
                lines_inserted=commit.lines_inserted,
                lines_deleted=commit.lines_deleted,
            ),
        )
        if record.type == "Extract Method":
            case.extract_method = derive_extract_method_fields(record)
        if record.type.startswith("Rename"):
            case.rename = derive_rename_fields(record)
        case.id = case_id(case)
        if case.id in seen_ids:
            result.duplicates += 1
            continue
        seen_ids.add(case.id)
        violations = validate_case(case)
        if violations:
            result.rejected.append((record, violations))
            continue
        survivors.append(case)

    # Totals count the cases that actually survive, per (sha1, tool).
    group_counts: dict[tuple[str, str], int] = {}
    for case in survivors:
        key = (case.commit.sha1, case.tool)
        group_counts[key] = group_counts.get(key, 0) + 1
    for case in survivors:
        case.commit.refactorings_total = group_counts[(case.commit.sha1, case.tool)]
        result.cases.append(case)
    return result
