"""Embedded document store with secondary indexes and a query planner."""

from .core import CaseStore, SearchPage, StoreError, parse_sort
from .planner import FullScan, IndexEqAccess, IndexRangeAccess, QueryPlan, plan_query

__all__ = [
    "CaseStore",
    "FullScan",
    "IndexEqAccess",
    "IndexRangeAccess",
    "QueryPlan",
    "SearchPage",
    "StoreError",
    "parse_sort",
    "plan_query",
]
