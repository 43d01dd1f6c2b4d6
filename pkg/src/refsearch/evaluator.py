"""Evaluates query ASTs against hierarchical case documents.

Documents are plain JSON-shaped Python values (dicts, lists, strings,
numbers, bools, None). A distinct MISSING sentinel marks absent fields,
which behave differently from explicit nulls only in that neither ever
satisfies anything except `!=`.

Every function here is total: malformed pairings (string vs number
ordering, regex on a non-string, NaN) evaluate to False, never raise.
"""

from __future__ import annotations

import re
from decimal import Decimal, InvalidOperation
from typing import Any, Callable

from .querylang.ast import And, Cmp, ComparisonOp, FieldPath, Num, Query, Regex, Str


class _Missing:
    __slots__ = ()

    def __repr__(self) -> str:
        return "MISSING"


MISSING = _Missing()

Document = dict[str, Any]


def resolve_path(doc: Document, path: FieldPath | tuple[str, ...]) -> Any:
    """Walk a dotted path through nested dicts.

    An intermediate array maps the remaining path over its elements,
    dropping misses; an empty result collapses to MISSING.
    """
    segments = path.segments if isinstance(path, FieldPath) else tuple(path)
    return _resolve(doc, segments, 0)


def _resolve(value: Any, segments: tuple[str, ...], start: int) -> Any:
    for i in range(start, len(segments)):
        if isinstance(value, dict):
            segment = segments[i]
            if segment in value:
                value = value[segment]
            else:
                return MISSING
        elif isinstance(value, list):
            results = []
            for element in value:
                resolved = _resolve(element, segments, i)
                if resolved is not MISSING:
                    results.append(resolved)
            return results if results else MISSING
        else:
            return MISSING
    return value


def _to_decimal(value: Any) -> Decimal | None:
    # bool is an int subclass; numeric comparisons must not treat it as one.
    if type(value) is int:
        return Decimal(value)
    if type(value) is float:
        try:
            dec = Decimal(repr(value))
        except InvalidOperation:
            return None
        return dec if dec.is_finite() else None
    if isinstance(value, Decimal):
        return value if value.is_finite() else None
    return None


def _compile_pattern(literal) -> re.Pattern | None:
    if isinstance(literal, Regex):
        flags = re.IGNORECASE if literal.ignore_case else 0
        pattern = literal.pattern
    elif isinstance(literal, Str):
        flags = 0
        pattern = literal.text
    elif isinstance(literal, Num):
        flags = 0
        pattern = literal.lexeme
    else:
        return None
    try:
        return re.compile(pattern, flags)
    except re.error:
        return None


_ORDER = {
    ComparisonOp.LT: lambda a, b: a < b,
    ComparisonOp.LE: lambda a, b: a <= b,
    ComparisonOp.GT: lambda a, b: a > b,
    ComparisonOp.GE: lambda a, b: a >= b,
}


def make_comparator(op: ComparisonOp, literal) -> Callable[[Any], bool]:
    """Build a value predicate for one comparison.

    Arrays satisfy a comparison when some element does, except `!=`,
    which is the exact complement of `=` (so a document whose field is
    missing, or whose array holds no equal element, does satisfy `!=`).
    """
    if op is ComparisonOp.EQ:
        return _make_eq(literal)
    if op is ComparisonOp.NEQ:
        eq = _make_eq(literal)
        return lambda value: not eq(value)
    if op is ComparisonOp.MATCH:
        rx = _compile_pattern(literal)
        if rx is None:
            return lambda value: False
        return _make_match(rx)
    return _make_order(op, literal)


def _make_eq(literal) -> Callable[[Any], bool]:
    if isinstance(literal, Num):
        target = literal.value
        lexeme = literal.lexeme

        def eq(value):
            if type(value) is str:
                return value == lexeme
            dec = _to_decimal(value)
            if dec is not None:
                return dec == target
            if isinstance(value, list):
                return any(eq(element) for element in value)
            return False

        return eq

    if isinstance(literal, Str):
        text = literal.text

        def eq(value):
            if type(value) is str:
                return value == text
            if isinstance(value, list):
                return any(eq(element) for element in value)
            return False

        return eq

    # Regex literals are parse-time restricted to `~`; nothing is Eq to one.
    return lambda value: False


def _make_match(rx: re.Pattern) -> Callable[[Any], bool]:
    def match(value):
        if type(value) is str:
            return rx.search(value) is not None
        if isinstance(value, list):
            return any(match(element) for element in value)
        return False

    return match


def _make_order(op: ComparisonOp, literal) -> Callable[[Any], bool]:
    cmp = _ORDER[op]
    if isinstance(literal, Num):
        target = literal.value

        def ordered(value):
            dec = _to_decimal(value)
            if dec is not None:
                return cmp(dec, target)
            if isinstance(value, list):
                return any(ordered(element) for element in value)
            return False

        return ordered

    if isinstance(literal, Str):
        text = literal.text

        def ordered(value):
            if type(value) is str:
                # Lexicographic code-point order; identical to UTF-8 byte
                # order, which is what makes ISO-8601 date ranges work.
                return cmp(value, text)
            if isinstance(value, list):
                return any(ordered(element) for element in value)
            return False

        return ordered

    return lambda value: False


def compare(value: Any, op: ComparisonOp, literal) -> bool:
    """One-shot comparison; see make_comparator for the semantics."""
    return make_comparator(op, literal)(value)


def eval_query(ast: Query, doc: Document) -> bool:
    """Evaluate an AST against one document."""
    if isinstance(ast, Cmp):
        return compare(resolve_path(doc, ast.path), ast.op, ast.literal)
    if isinstance(ast, And):
        return eval_query(ast.left, doc) and eval_query(ast.right, doc)
    return eval_query(ast.left, doc) or eval_query(ast.right, doc)


def compile_query(ast: Query) -> Callable[[Document], bool]:
    """Compile an AST to a reusable document predicate.

    Equivalent to eval_query but pays the path-splitting and regex
    compilation once; the store uses this on scans over large corpora.
    """
    if isinstance(ast, Cmp):
        segments = ast.path.segments
        predicate = make_comparator(ast.op, ast.literal)
        if len(segments) == 1:
            key = segments[0]

            def cmp_one(doc):
                return predicate(doc.get(key, MISSING))

            return cmp_one

        def cmp_deep(doc):
            value = doc
            for i, segment in enumerate(segments):
                if isinstance(value, dict):
                    if segment in value:
                        value = value[segment]
                    else:
                        return predicate(MISSING)
                elif isinstance(value, list):
                    return predicate(_resolve(value, segments, i))
                else:
                    return predicate(MISSING)
            return predicate(value)

        return cmp_deep

    left = compile_query(ast.left)
    right = compile_query(ast.right)
    if isinstance(ast, And):
        return lambda doc: left(doc) and right(doc)
    return lambda doc: left(doc) or right(doc)


def index_candidates(ast: Query) -> list[Cmp]:
    """Comparison leaves reachable from the root through And nodes only.

    These are the conditions every matching document must satisfy; a
    disjunction pins nothing, so a root Or yields an empty list.
    """
    out: list[Cmp] = []

    def walk(node: Query) -> None:
        if isinstance(node, Cmp):
            out.append(node)
        elif isinstance(node, And):
            walk(node.left)
            walk(node.right)

    walk(ast)
    return out
