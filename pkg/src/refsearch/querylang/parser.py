"""Recursive-descent parser producing Query ASTs.

Grammar (operators chain right-associatively, `&` binds tighter than `|`):

    expr    = logic [ '|' expr ]
    logic   = primary [ '&' logic ]
    primary = path op literal | '(' expr ')'

The left operand of a comparison must be a bare word and is parsed as a
dotted field path. The right operand is a literal: quoted string, numeric
word, regex literal (only with `~`), or any other bare word as a string.
"""

from __future__ import annotations

import re
from decimal import Decimal

from . import lexer
from .ast import And, Cmp, ComparisonOp, FieldPath, Num, Or, Query, Regex, Str
from .errors import ParseError, error_at
from .lexer import Token

_NUMERIC = re.compile(r"[+-]?[0-9]+(\.[0-9]+)?\Z")

# The supported dialect has no backreferences and no lookaround.
_FORBIDDEN_REGEX = re.compile(r"\(\?P?[=<!]|\\[1-9]|\(\?P=")


class _Parser:
    def __init__(self, text: str, tokens: list[Token]):
        self.text = text
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def advance(self) -> Token:
        token = self.tokens[self.i]
        self.i += 1
        return token

    def fail(self, message: str, token: Token | None = None) -> ParseError:
        if token is None:
            return error_at(self.text, message, len(self.text), 0)
        return error_at(self.text, message, token.pos, len(token.lexeme))

    def parse(self) -> Query:
        node = self.expr()
        extra = self.peek()
        if extra is not None:
            raise self.fail(f"unexpected {extra.lexeme!r} after end of query", extra)
        return node

    def expr(self) -> Query:
        left = self.logic()
        token = self.peek()
        if token is not None and token.kind == lexer.PIPE:
            self.advance()
            if self.peek() is None:
                raise self.fail("missing operand after '|'", token)
            return Or(left, self.expr())
        return left

    def logic(self) -> Query:
        left = self.primary()
        token = self.peek()
        if token is not None and token.kind == lexer.AMP:
            self.advance()
            if self.peek() is None:
                raise self.fail("missing operand after '&'", token)
            return And(left, self.logic())
        return left

    def primary(self) -> Query:
        token = self.peek()
        if token is None:
            raise self.fail("expected a comparison or '('")
        if token.kind == lexer.LPAREN:
            open_paren = self.advance()
            node = self.expr()
            closing = self.peek()
            if closing is None or closing.kind != lexer.RPAREN:
                raise self.fail("unbalanced parenthesis: '(' is never closed", open_paren)
            self.advance()
            return node
        return self.comparison()

    def comparison(self) -> Cmp:
        token = self.advance()
        if token.kind == lexer.STRING:
            raise self.fail("left-hand side of a comparison must be a field path, not a quoted string", token)
        if token.kind == lexer.REGEX:
            raise self.fail("left-hand side of a comparison must be a field path, not a regex", token)
        if token.kind != lexer.WORD:
            raise self.fail(f"expected a field path, found {token.lexeme!r}", token)
        path = self.field_path(token)

        op_token = self.peek()
        if op_token is None or op_token.kind != lexer.OP:
            raise self.fail("expected a comparison operator after the field path", op_token or token)
        self.advance()
        op = ComparisonOp.from_symbol(op_token.value)

        value_token = self.peek()
        if value_token is None or value_token.kind in (
            lexer.OP,
            lexer.AMP,
            lexer.PIPE,
            lexer.RPAREN,
            lexer.LPAREN,
        ):
            raise self.fail(f"expected a value after {op_token.value!r}", value_token or op_token)
        self.advance()
        literal = self.literal(value_token, op, op_token)
        return Cmp(path, op, literal)

    def field_path(self, token: Token) -> FieldPath:
        segments = token.value.split(".")
        if any(not segment for segment in segments):
            raise self.fail(f"field path {token.value!r} has an empty segment", token)
        return FieldPath(tuple(segments))

    def literal(self, token: Token, op: ComparisonOp, op_token: Token):
        if token.kind == lexer.STRING:
            return Str(token.value)
        if token.kind == lexer.REGEX:
            if op is not ComparisonOp.MATCH:
                raise self.fail(f"regex literal requires the '~' operator, not {op_token.value!r}", token)
            self.check_regex(token.value, token)
            return Regex(token.value, ignore_case="i" in token.flags)
        if _NUMERIC.match(token.value):
            return Num(Decimal(token.value), token.value)
        return Str(token.value)

    def check_regex(self, pattern: str, token: Token) -> None:
        if _FORBIDDEN_REGEX.search(pattern):
            raise self.fail("regex uses an unsupported construct (backreference or lookaround)", token)
        try:
            re.compile(pattern)
        except re.error as exc:
            raise self.fail(f"invalid regex: {exc}", token) from None


def parse_query(text: str) -> Query:
    """Parse a query string into an AST; raises ParseError."""
    tokens = lexer.tokenize(text)
    if not tokens:
        raise ParseError("empty query", 0, 0)
    return _Parser(text, tokens).parse()
