"""Boolean query language: lexer, parser, canonical printer."""

from .ast import And, Cmp, ComparisonOp, FieldPath, Num, Or, Query, Regex, Str
from .errors import ParseError
from .lexer import Token, tokenize
from .parser import parse_query
from .printer import format_query

__all__ = [
    "And",
    "Cmp",
    "ComparisonOp",
    "FieldPath",
    "Num",
    "Or",
    "ParseError",
    "Query",
    "Regex",
    "Str",
    "Token",
    "format_query",
    "parse_query",
    "tokenize",
]
