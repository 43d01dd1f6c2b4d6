"""Canonical query text for an AST.

One space around every operator, strings always double-quoted, numbers
printed from their retained lexeme, parentheses only where re-parsing
would otherwise yield a different tree. Because `&`/`|` chains parse
right-associatively, a left child of the same precedence is always
parenthesized.
"""

from __future__ import annotations

from .ast import And, Cmp, Num, Or, Query, Regex, Str


def format_query(node: Query) -> str:
    if isinstance(node, Cmp):
        return f"{node.path.dotted} {node.op.symbol} {_literal(node.literal)}"
    if isinstance(node, And):
        left = _child(node.left, level=1, left_side=True)
        right = _child(node.right, level=1, left_side=False)
        return f"{left} & {right}"
    if isinstance(node, Or):
        left = _child(node.left, level=0, left_side=True)
        right = _child(node.right, level=0, left_side=False)
        return f"{left} | {right}"
    raise TypeError(f"not a query node: {node!r}")


def _precedence(node: Query) -> int:
    if isinstance(node, Or):
        return 0
    if isinstance(node, And):
        return 1
    return 2


def _child(node: Query, level: int, left_side: bool) -> str:
    text = format_query(node)
    prec = _precedence(node)
    if prec < level or (prec == level and left_side and prec < 2):
        return f"({text})"
    return text


def _literal(literal) -> str:
    if isinstance(literal, Str):
        escaped = literal.text.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    if isinstance(literal, Num):
        return literal.lexeme
    if isinstance(literal, Regex):
        return f"/{literal.pattern}/{'i' if literal.ignore_case else ''}"
    raise TypeError(f"not a literal: {literal!r}")
