"""AST node types for parsed queries.

A query is a tree of Or / And nodes over Cmp leaves; every Cmp compares a
dotted field path against a literal. All nodes are immutable and compare
structurally.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from decimal import Decimal


class ComparisonOp(enum.Enum):
    EQ = "="
    NEQ = "!="
    MATCH = "~"
    LT = "<"
    LE = "<="
    GT = ">"
    GE = ">="

    @classmethod
    def from_symbol(cls, symbol: str) -> "ComparisonOp":
        return cls(symbol)

    @property
    def symbol(self) -> str:
        return self.value


@dataclass(frozen=True)
class FieldPath:
    """Dotted path into a case document, e.g. commit.size.files.changed."""

    segments: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.segments:
            raise ValueError("field path needs at least one segment")

    @property
    def dotted(self) -> str:
        return ".".join(self.segments)

    def __str__(self) -> str:
        return self.dotted


@dataclass(frozen=True)
class Str:
    """String literal (quoted or bare word)."""

    text: str


@dataclass(frozen=True)
class Num:
    """Numeric literal; keeps the original lexeme for exact reprinting."""

    value: Decimal
    lexeme: str


@dataclass(frozen=True)
class Regex:
    """Regex literal /pattern/ with the optional case-insensitive flag."""

    pattern: str
    ignore_case: bool = False


Literal = Str | Num | Regex


@dataclass(frozen=True)
class Cmp:
    path: FieldPath
    op: ComparisonOp
    literal: Literal


@dataclass(frozen=True)
class And:
    left: "Query"
    right: "Query"


@dataclass(frozen=True)
class Or:
    left: "Query"
    right: "Query"


Query = Cmp | And | Or
