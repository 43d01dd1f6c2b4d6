"""Sorted secondary indexes over scalar document values.

Index entries are (bucket, key, id) triples kept in one sorted list.
Numbers and strings live in separate buckets so heterogeneous corpora
stay sortable; numeric keys are normalized to Decimal so 167 and 167.0
index identically. Array values index one entry per scalar element;
other value kinds are not indexed (nothing a query literal could equal).
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from typing import Any, Iterable, Iterator

from ..evaluator import MISSING, resolve_path

NUM_BUCKET = 0
STR_BUCKET = 1

# Sorts after every document id (ids are 40 lowercase hex chars).
_MAX_ID = "￿"


def index_key(value: Any) -> tuple | None:
    """Bucketed sort key for a scalar, or None when it is not indexable."""
    if type(value) is str:
        return (STR_BUCKET, value)
    if type(value) is bool:
        return None
    if type(value) is int:
        return (NUM_BUCKET, Decimal(value))
    if type(value) is float:
        try:
            dec = Decimal(repr(value))
        except InvalidOperation:
            return None
        return (NUM_BUCKET, dec) if dec.is_finite() else None
    if isinstance(value, Decimal):
        return (NUM_BUCKET, value) if value.is_finite() else None
    return None


@dataclass(frozen=True)
class IndexDef:
    name: str
    segments: tuple[str, ...]


class SortedIndex:
    """Immutable-by-convention sorted index; updates build a new instance."""

    def __init__(self, definition: IndexDef, entries: list[tuple] | None = None):
        self.definition = definition
        self.entries: list[tuple] = entries if entries is not None else []

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def build(cls, definition: IndexDef, docs: Iterable[tuple[str, dict]]) -> "SortedIndex":
        entries: list[tuple] = []
        for doc_id, doc in docs:
            entries.extend(_doc_entries(definition, doc_id, doc))
        entries.sort()
        return cls(definition, entries)

    def with_added(self, docs: Iterable[tuple[str, dict]]) -> "SortedIndex":
        added: list[tuple] = []
        for doc_id, doc in docs:
            added.extend(_doc_entries(self.definition, doc_id, doc))
        if not added:
            return self
        merged = self.entries + added
        merged.sort()
        return SortedIndex(self.definition, merged)

    def scan_eq(self, keys: Iterable[tuple]) -> Iterator[str]:
        """Ids whose indexed value equals any of the bucketed keys."""
        for bucket, key in keys:
            lo = bisect_left(self.entries, (bucket, key))
            hi = bisect_right(self.entries, (bucket, key, _MAX_ID))
            for entry in self.entries[lo:hi]:
                yield entry[2]

    def scan_range(
        self,
        bucket: int,
        lower: Any | None,
        lower_inclusive: bool,
        upper: Any | None,
        upper_inclusive: bool,
    ) -> Iterator[str]:
        """Ids whose indexed value falls in the bucket-local range."""
        if lower is None:
            lo = bisect_left(self.entries, (bucket,))
        elif lower_inclusive:
            lo = bisect_left(self.entries, (bucket, lower))
        else:
            lo = bisect_right(self.entries, (bucket, lower, _MAX_ID))
        if upper is None:
            hi = bisect_left(self.entries, (bucket + 1,))
        elif upper_inclusive:
            hi = bisect_right(self.entries, (bucket, upper, _MAX_ID))
        else:
            hi = bisect_left(self.entries, (bucket, upper))
        for entry in self.entries[lo:hi]:
            yield entry[2]


def _doc_entries(definition: IndexDef, doc_id: str, doc: dict) -> list[tuple]:
    value = resolve_path(doc, definition.segments)
    if value is MISSING:
        return []
    out: list[tuple] = []
    _collect(value, doc_id, out)
    return out


def _collect(value: Any, doc_id: str, out: list[tuple]) -> None:
    if isinstance(value, list):
        for element in value:
            _collect(element, doc_id, out)
        return
    key = index_key(value)
    if key is not None:
        out.append((key[0], key[1], doc_id))
