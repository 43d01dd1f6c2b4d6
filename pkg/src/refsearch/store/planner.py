"""Chooses an index access path for a query.

Only conditions every match must satisfy (conjuncts reachable from the
root through And nodes) can steer the access path. Preference order:
equality on `type`, equality on `repository`, a date range on
`commit.date`, then a full scan. The residual predicate is always the
whole original query, so the planner can never produce a false positive;
index selection only prunes the candidate set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from ..evaluator import index_candidates
from ..querylang.ast import Cmp, ComparisonOp, Num, Query, Str
from .indexes import NUM_BUCKET, STR_BUCKET


@dataclass(frozen=True)
class FullScan:
    def describe(self) -> str:
        return "FullScan"


@dataclass(frozen=True)
class IndexEqAccess:
    index: str
    keys: tuple[tuple, ...]  # bucketed keys; a numeric literal probes both buckets

    def describe(self) -> str:
        return f"IndexEq({self.index})"


@dataclass(frozen=True)
class IndexRangeAccess:
    index: str
    bucket: int
    lower: Any | None
    lower_inclusive: bool
    upper: Any | None
    upper_inclusive: bool

    def describe(self) -> str:
        return f"IndexRange({self.index})"


AccessPath = FullScan | IndexEqAccess | IndexRangeAccess


@dataclass(frozen=True)
class QueryPlan:
    access: AccessPath
    residual: Query | None  # None only for match-all

    def describe(self) -> str:
        return self.access.describe()


_RANGE_OPS = {
    ComparisonOp.EQ,
    ComparisonOp.LT,
    ComparisonOp.LE,
    ComparisonOp.GT,
    ComparisonOp.GE,
}


def _eq_keys(literal) -> tuple[tuple, ...] | None:
    if isinstance(literal, Str):
        return ((STR_BUCKET, literal.text),)
    if isinstance(literal, Num):
        # A numeric literal equals numeric values and strings equal to
        # its original lexeme, so both buckets are probed.
        return ((NUM_BUCKET, literal.value), (STR_BUCKET, literal.lexeme))
    return None


def plan_query(ast: Query | None) -> QueryPlan:
    if ast is None:
        return QueryPlan(FullScan(), None)
    candidates = index_candidates(ast)

    for indexed_path in ("type", "repository"):
        for cmp in candidates:
            if cmp.path.dotted != indexed_path or cmp.op is not ComparisonOp.EQ:
                continue
            keys = _eq_keys(cmp.literal)
            if keys is not None:
                return QueryPlan(IndexEqAccess(indexed_path, keys), ast)

    date_range = _date_range(candidates)
    if date_range is not None:
        return QueryPlan(date_range, ast)
    return QueryPlan(FullScan(), ast)


def _date_range(candidates: list[Cmp]) -> IndexRangeAccess | None:
    # Dates are ISO-8601 strings; only string literals can bound them.
    lower: str | None = None
    lower_inclusive = True
    upper: str | None = None
    upper_inclusive = True
    found = False
    for cmp in candidates:
        if cmp.path.dotted != "commit.date" or not isinstance(cmp.literal, Str):
            continue
        if cmp.op not in _RANGE_OPS:
            continue
        text = cmp.literal.text
        found = True
        if cmp.op in (ComparisonOp.GT, ComparisonOp.GE, ComparisonOp.EQ):
            inclusive = cmp.op is not ComparisonOp.GT
            if lower is None or text > lower or (text == lower and not inclusive):
                lower, lower_inclusive = text, inclusive
        if cmp.op in (ComparisonOp.LT, ComparisonOp.LE, ComparisonOp.EQ):
            inclusive = cmp.op is not ComparisonOp.LT
            if upper is None or text < upper or (text == upper and not inclusive):
                upper, upper_inclusive = text, inclusive
    if not found:
        return None
    return IndexRangeAccess(
        "commit.date",
        STR_BUCKET,
        lower,
        lower_inclusive,
        upper,
        upper_inclusive,
    )
